//! Exact sums of `N`-th roots of unity.

use num_complex::Complex64;

/// `Φ_n` as coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    // x^n − 1 = ∏_{d | n} Φ_d
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = divide_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

/// Exact quotient of `num` by a monic `den`; the remainder must be zero.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - dd] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i - dd + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of `Z[ζ_N]` in canonical form: the remainder of
/// `Σ c_e x^e` modulo `Φ_N`. Two sums are equal iff their forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicInt {
    modulus: usize,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    /// `Σ ζ_N^e` over the given exponents (taken mod `N`).
    pub fn from_exponents(modulus: usize, exponents: impl IntoIterator<Item = usize>) -> Self {
        let mut counts = vec![0i64; modulus];
        for e in exponents {
            counts[e % modulus] += 1;
        }
        Self::from_coefficients(modulus, counts)
    }

    /// `Σ c_e ζ_N^e`, with `coeffs[e] = c_e`.
    pub fn from_coefficients(modulus: usize, coeffs: Vec<i64>) -> Self {
        assert!(modulus >= 1 && coeffs.len() <= modulus);
        let phi = cyclotomic_polynomial(modulus);
        let d = phi.len() - 1;
        let mut c = coeffs;
        c.resize(modulus.max(d), 0);
        for i in (d..c.len()).rev() {
            let lead = c[i];
            if lead == 0 {
                continue;
            }
            for (j, &p) in phi.iter().enumerate() {
                c[i - d + j] -= lead * p;
            }
        }
        c.truncate(d);
        CyclotomicInt { modulus, coeffs: c }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Canonical coefficients, lowest power first.
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value when it is a rational integer.
    pub fn as_integer(&self) -> Option<i64> {
        match self.coeffs.split_first() {
            None => Some(0),
            Some((&c0, rest)) => rest.iter().all(|&c| c == 0).then_some(c0),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(e, &c)| Complex64::from_polar(c as f64, std::f64::consts::TAU * e as f64 / n))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9).len() - 1, 6);
    }

    #[test]
    fn root_sums() {
        // 1 + ζ + … + ζ^(N−1) = 0
        for n in 2..=24 {
            assert!(CyclotomicInt::from_exponents(n, 0..n).is_zero(), "N={n}");
        }
        // ζ_6 + ζ_6^5 = 2cos(π/3) = 1
        assert_eq!(
            CyclotomicInt::from_exponents(6, [1, 5]).as_integer(),
            Some(1)
        );
        // ζ_4 is not an integer
        let i = CyclotomicInt::from_exponents(4, [1]);
        assert_eq!(i.as_integer(), None);
        assert!((i.to_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert_eq!(
            CyclotomicInt::from_exponents(1, [0, 0, 0]).as_integer(),
            Some(3)
        );
    }

    #[test]
    fn equal_values_share_a_form() {
        // ζ_5 + ζ_5^4 = −1 − ζ_5^2 − ζ_5^3
        let a = CyclotomicInt::from_exponents(5, [1, 4]);
        let b = CyclotomicInt::from_coefficients(5, vec![-1, 0, -1, -1, 0]);
        assert_eq!(a, b);
    }
}
