//! Linear algebra over `F_p` with `p = 2⁶¹ − 1`.
//!
//! Used as an exact screen: a non-zero determinant mod `p` proves the
//! integer matrix is non-singular, and a kernel basis mod `p` that lifts to
//! exact integer kernel vectors proves the rank over `Q` equals the rank
//! mod `p`.

pub(crate) const P: u64 = (1 << 61) - 1;

#[inline]
pub(crate) fn reduce(x: u128) -> u64 {
    // 2^61 ≡ 1, so fold the high bits twice.
    let folded = (x & P as u128) + (x >> 61);
    let folded = (folded & P as u128) + (folded >> 61);
    let r = folded as u64;
    if r >= P {
        r - P
    } else {
        r
    }
}

#[inline]
pub(crate) fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub(crate) fn mul(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

pub(crate) fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

pub(crate) fn from_i64(x: i64) -> u64 {
    let r = x.rem_euclid(P as i64);
    r as u64
}

/// Row-major `n × n` matrix over `F_p`.
#[derive(Clone, Debug)]
pub(crate) struct ModMatrix {
    pub n: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(from_i64(f(i, j)));
            }
        }
        ModMatrix { n, data }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    /// Reduces to upper Hessenberg form by a similarity transform, so the
    /// characteristic polynomial is unchanged.
    pub fn into_hessenberg(mut self) -> Hessenberg {
        let n = self.n;
        for k in 0..n.saturating_sub(2) {
            let Some(pivot) = (k + 1..n).find(|&i| self.at(i, k) != 0) else {
                continue;
            };
            if pivot != k + 1 {
                self.swap_rows(pivot, k + 1);
                self.swap_cols(pivot, k + 1);
            }
            let pinv = inv(self.at(k + 1, k));
            for j in k + 2..n {
                let f = mul(self.at(j, k), pinv);
                if f == 0 {
                    continue;
                }
                // R_j -= f·R_{k+1}, then C_{k+1} += f·C_j.
                for c in 0..n {
                    let v = mul(f, self.at(k + 1, c));
                    self.data[j * n + c] = sub(self.data[j * n + c], v);
                }
                for r in 0..n {
                    let v = mul(f, self.at(r, j));
                    self.data[r * n + k + 1] = add(self.data[r * n + k + 1], v);
                }
            }
        }
        Hessenberg { n, data: self.data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        let n = self.n;
        for c in 0..n {
            self.data.swap(a * n + c, b * n + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        let n = self.n;
        for r in 0..n {
            self.data.swap(r * n + a, r * n + b);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let n = self.n;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            self.swap_rows(p, row);
            let pinv = inv(self.at(row, col));
            for c in col..n {
                self.data[row * n + c] = mul(self.data[row * n + c], pinv);
            }
            for r in 0..n {
                if r == row {
                    continue;
                }
                let f = self.at(r, col);
                if f == 0 {
                    continue;
                }
                for c in col..n {
                    let v = mul(f, self.data[row * n + c]);
                    self.data[r * n + c] = sub(self.data[r * n + c], v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Kernel basis read off an RREF matrix: one vector per free column,
    /// with `1` in that column and `0` in the other free columns.
    pub fn kernel_from_rref(&self, pivots: &[usize]) -> Vec<Vec<u64>> {
        let n = self.n;
        let mut is_pivot = vec![false; n];
        for &p in pivots {
            is_pivot[p] = true;
        }
        (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; n];
                v[free] = 1;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = sub(0, self.at(r, free));
                }
                v
            })
            .collect()
    }
}

/// Upper Hessenberg matrix over `F_p`.
#[derive(Clone, Debug)]
pub(crate) struct Hessenberg {
    n: usize,
    data: Vec<u64>,
}

impl Hessenberg {
    /// `det(H − λI) mod p` in `O(n²)`.
    pub fn shifted_det(&self, lambda: i64) -> u64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let shift = from_i64(lambda);
        let mut m = self.data.clone();
        for i in 0..n {
            m[i * n + i] = sub(m[i * n + i], shift);
        }
        let mut det = 1u64;
        for k in 0..n {
            if k + 1 < n && m[k * n + k] == 0 && m[(k + 1) * n + k] != 0 {
                for c in k..n {
                    m.swap(k * n + c, (k + 1) * n + c);
                }
                det = sub(0, det);
            }
            let piv = m[k * n + k];
            if piv == 0 {
                return 0;
            }
            det = mul(det, piv);
            if k + 1 < n {
                let below = m[(k + 1) * n + k];
                if below != 0 {
                    let f = mul(below, inv(piv));
                    for c in k..n {
                        let v = mul(f, m[k * n + c]);
                        m[(k + 1) * n + c] = sub(m[(k + 1) * n + c], v);
                    }
                }
            }
        }
        det
    }
}

/// Finds `r / s ≡ u (mod p)` with `|r|, s ≤ bound` by the half extended
/// Euclidean algorithm.
pub(crate) fn rational_reconstruct(u: u64, bound: i128) -> Option<(i128, i128)> {
    let (mut r0, mut r1) = (P as i128, u as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    // Verify the candidate really reduces to u.
    let lhs = from_i128(num);
    if mul(from_i128(den), u) != lhs {
        return None;
    }
    Some((num, den))
}

fn from_i128(x: i128) -> u64 {
    x.rem_euclid(P as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_small(a: &[Vec<i64>]) -> i64 {
        // Laplace expansion, fine for n ≤ 5.
        let n = a.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * det_small(&minor)
            })
            .sum()
    }

    #[test]
    fn field_arithmetic() {
        assert_eq!(mul(P - 1, P - 1), 1);
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(from_i64(-1), P - 1);
        assert_eq!(reduce(u128::from(P) * 3 + 5), 5);
    }

    #[test]
    fn hessenberg_preserves_shifted_determinants() {
        let a = [
            vec![0, 1, 1, 0, 1],
            vec![1, 0, 1, 1, 0],
            vec![1, 1, 0, 0, 1],
            vec![0, 1, 0, 0, 1],
            vec![1, 0, 1, 1, 0],
        ];
        let h = ModMatrix::from_fn(5, |i, j| a[i][j]).into_hessenberg();
        for lambda in -4..=4 {
            let shifted: Vec<Vec<i64>> = (0..5)
                .map(|i| {
                    (0..5)
                        .map(|j| a[i][j] - if i == j { lambda } else { 0 })
                        .collect()
                })
                .collect();
            assert_eq!(
                h.shifted_det(lambda),
                from_i64(det_small(&shifted)),
                "λ={lambda}"
            );
        }
    }

    #[test]
    fn hessenberg_handles_zero_subdiagonal() {
        // Block diagonal: the reduction must skip a column with no pivot.
        let a = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]];
        let h = ModMatrix::from_fn(4, |i, j| a[i][j]).into_hessenberg();
        assert_eq!(h.shifted_det(1), 0);
        assert_eq!(h.shifted_det(-1), 0);
        assert_eq!(h.shifted_det(0), 1);
        assert_eq!(h.shifted_det(2), 9);
    }

    #[test]
    fn rref_kernel_of_rank_one() {
        let mut m = ModMatrix::from_fn(3, |_, _| 1);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0]);
        let kernel = m.kernel_from_rref(&pivots);
        assert_eq!(kernel.len(), 2);
        assert_eq!(kernel[0], vec![P - 1, 1, 0]);
    }

    #[test]
    fn reconstructs_small_fractions() {
        for (num, den) in [
            (3i128, 7i128),
            (-5, 2),
            (0, 1),
            (1, 1),
            (-1_000_000, 999_983),
        ] {
            let u = mul(from_i128(num), inv(from_i128(den)));
            assert_eq!(rational_reconstruct(u, 1 << 30), Some((num, den)));
        }
    }
}
