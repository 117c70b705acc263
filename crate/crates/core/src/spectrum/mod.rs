//! Adjacency spectra with exact integer multiplicities.
//!
//! Integer eigenvalues are found by sweeping every integer in `[−Δ, Δ]` and
//! computing `dim ker(A − λI)` exactly. Only the remainder is left to a
//! floating-point eigensolver, and its values are never reported as
//! integers.

mod bareiss;
mod matrix;
mod modular;

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

pub use bareiss::bareiss_rank;
pub use matrix::IntMatrix;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use modular::ModMatrix;

/// Largest matrix dimension [`full_spectrum`] accepts.
pub const DIMENSION_GUARD: usize = 4096;
/// Per-eigenpair residual bound for the numeric pass, scaled by `max(1, Δ)`.
pub const RESIDUAL_TARGET: f64 = 1e-9;
/// Clustering tolerance for numeric eigenvalues, scaled by `max(1, Δ)`.
pub const CLUSTER_TOLERANCE: f64 = 1e-7;

const RECONSTRUCTION_BOUND: i128 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralValue {
    Exact(i64),
    Approx(f64),
}

impl SpectralValue {
    pub fn as_f64(self) -> f64 {
        match self {
            SpectralValue::Exact(v) => v as f64,
            SpectralValue::Approx(v) => v,
        }
    }

    pub fn exact(self) -> Option<i64> {
        match self {
            SpectralValue::Exact(v) => Some(v),
            SpectralValue::Approx(_) => None,
        }
    }
}

impl fmt::Display for SpectralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralValue::Exact(v) => write!(f, "{v}"),
            SpectralValue::Approx(v) => write!(f, "~{v:.6}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub value: SpectralValue,
    pub multiplicity: usize,
}

impl Serialize for SpectrumEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        match self.value {
            SpectralValue::Exact(v) => {
                map.serialize_entry("value", &v.to_string())?;
                map.serialize_entry("kind", "int")?;
            }
            SpectralValue::Approx(v) => {
                map.serialize_entry("value", &round10(v))?;
                map.serialize_entry("kind", "approx")?;
            }
        }
        map.serialize_entry("mult", &self.multiplicity)?;
        map.end()
    }
}

fn round10(v: f64) -> f64 {
    let r = (v * 1e10).round() / 1e10;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// A multiset of eigenvalues in canonical order: descending by value, exact
/// before approximate at equal numeric value.
///
/// Equality compares entries and dimension; the clustering tolerance is
/// metadata.
#[derive(Clone, Debug)]
pub struct Spectrum {
    entries: Vec<SpectrumEntry>,
    dimension: usize,
    tolerance: f64,
}

impl PartialEq for Spectrum {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.dimension == other.dimension
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Spectrum", 2)?;
        s.serialize_field("entries", &self.entries)?;
        s.serialize_field("dimension", &self.dimension)?;
        s.end()
    }
}

impl Spectrum {
    /// Canonicalises `entries`: exact values are merged, zero multiplicities
    /// dropped, and approximate values within `tolerance` merged.
    pub fn new(entries: impl IntoIterator<Item = SpectrumEntry>, tolerance: f64) -> Self {
        let mut exact: BTreeMap<i64, usize> = BTreeMap::new();
        let mut approx: Vec<(f64, usize)> = Vec::new();
        for e in entries {
            if e.multiplicity == 0 {
                continue;
            }
            match e.value {
                SpectralValue::Exact(v) => *exact.entry(v).or_default() += e.multiplicity,
                SpectralValue::Approx(v) => approx.push((v, e.multiplicity)),
            }
        }
        approx.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut merged: Vec<(f64, usize)> = Vec::new();
        for (v, m) in approx {
            match merged.last_mut() {
                Some((w, wm)) if (*w - v).abs() <= tolerance => {
                    *w = (*w * *wm as f64 + v * m as f64) / (*wm + m) as f64;
                    *wm += m;
                }
                _ => merged.push((v, m)),
            }
        }
        let mut out: Vec<SpectrumEntry> = exact
            .into_iter()
            .map(|(v, m)| SpectrumEntry {
                value: SpectralValue::Exact(v),
                multiplicity: m,
            })
            .chain(merged.into_iter().map(|(v, m)| SpectrumEntry {
                value: SpectralValue::Approx(v),
                multiplicity: m,
            }))
            .collect();
        out.sort_by(|a, b| {
            b.value
                .as_f64()
                .total_cmp(&a.value.as_f64())
                .then_with(|| kind_rank(a.value).cmp(&kind_rank(b.value)))
        });
        let dimension = out.iter().map(|e| e.multiplicity).sum();
        Spectrum {
            entries: out,
            dimension,
            tolerance,
        }
    }

    /// An all-integer spectrum from `(value, multiplicity)` pairs.
    pub fn from_integers(pairs: impl IntoIterator<Item = (i64, usize)>) -> Self {
        Spectrum::new(
            pairs.into_iter().map(|(v, m)| SpectrumEntry {
                value: SpectralValue::Exact(v),
                multiplicity: m,
            }),
            CLUSTER_TOLERANCE,
        )
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Exact multiplicity of the integer `lambda` (0 if absent).
    pub fn multiplicity(&self, lambda: i64) -> usize {
        self.entries
            .iter()
            .find(|e| e.value == SpectralValue::Exact(lambda))
            .map_or(0, |e| e.multiplicity)
    }

    /// The integer part as a map `value → multiplicity`.
    pub fn integer_part(&self) -> BTreeMap<i64, usize> {
        self.entries
            .iter()
            .filter_map(|e| e.value.exact().map(|v| (v, e.multiplicity)))
            .collect()
    }

    pub fn approx_part(&self) -> Vec<(f64, usize)> {
        self.entries
            .iter()
            .filter_map(|e| match e.value {
                SpectralValue::Approx(v) => Some((v, e.multiplicity)),
                SpectralValue::Exact(_) => None,
            })
            .collect()
    }

    pub fn largest(&self) -> Option<SpectrumEntry> {
        self.entries.first().copied()
    }

    /// Number of distinct eigenvalues.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serialises")
    }
}

fn kind_rank(v: SpectralValue) -> u8 {
    match v {
        SpectralValue::Exact(_) => 0,
        SpectralValue::Approx(_) => 1,
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", e.value, e.multiplicity)?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub is_integral: bool,
    pub integer_mass: usize,
    pub residual_dimension: usize,
}

pub fn is_integral(spectrum: &Spectrum) -> IntegralityReport {
    let integer_mass: usize = spectrum.integer_part().values().sum();
    let residual_dimension = spectrum.dimension() - integer_mass;
    IntegralityReport {
        is_integral: residual_dimension == 0,
        integer_mass,
        residual_dimension,
    }
}

/// Multiset equality: exact parts must agree exactly, approximate parts
/// pairwise within the larger of the two tolerances.
pub fn isospectral(a: &Spectrum, b: &Spectrum) -> bool {
    if a.dimension() != b.dimension() || a.integer_part() != b.integer_part() {
        return false;
    }
    let (pa, pb) = (a.approx_part(), b.approx_part());
    let tol = a.tolerance().max(b.tolerance());
    pa.len() == pb.len()
        && pa
            .iter()
            .zip(&pb)
            .all(|(x, y)| x.1 == y.1 && (x.0 - y.0).abs() <= tol)
}

/// `Σ m(λ)·λᵖ`.
pub fn spectral_moment(spectrum: &Spectrum, p: u32) -> f64 {
    spectrum
        .entries()
        .iter()
        .map(|e| e.multiplicity as f64 * e.value.as_f64().powi(p as i32))
        .sum()
}

/// `Σ m(λ)·λᵖ` computed exactly, when the spectrum is integral.
pub fn exact_moment(spectrum: &Spectrum, p: u32) -> Option<i128> {
    if !is_integral(spectrum).is_integral {
        return None;
    }
    spectrum
        .integer_part()
        .into_iter()
        .try_fold(0i128, |acc, (v, m)| {
            let power = (v as i128).checked_pow(p)?;
            acc.checked_add(power.checked_mul(m as i128)?)
        })
}

/// `dim ker(A − λI)` over the rationals.
pub fn integer_multiplicity(matrix: &IntMatrix, lambda: i64) -> usize {
    certified_nullity(matrix, lambda)
}

/// The same quantity computed directly by Bareiss elimination over
/// arbitrary-precision integers.
pub fn integer_multiplicity_bareiss(matrix: &IntMatrix, lambda: i64) -> usize {
    let n = matrix.dimension();
    n - bareiss_rank(n, n, &matrix.shifted(lambda))
}

/// Nullity mod `p` is an upper bound on the rational nullity; it is exact
/// once every kernel vector mod `p` lifts to an integer kernel vector.
fn certified_nullity(matrix: &IntMatrix, lambda: i64) -> usize {
    let n = matrix.dimension();
    let shifted = matrix.shifted(lambda);
    let mut m = ModMatrix::from_fn(n, |i, j| shifted[i * n + j]);
    let pivots = m.rref();
    let nullity = n - pivots.len();
    if nullity == 0 {
        return 0;
    }
    let kernel = m.kernel_from_rref(&pivots);
    let lifted = kernel
        .iter()
        .all(|v| lift_kernel_vector(v).is_some_and(|w| annihilates(&shifted, n, &w)));
    if lifted {
        nullity
    } else {
        integer_multiplicity_bareiss(matrix, lambda)
    }
}

fn lift_kernel_vector(v: &[u64]) -> Option<Vec<i128>> {
    let fractions: Vec<(i128, i128)> = v
        .iter()
        .map(|&x| modular::rational_reconstruct(x, RECONSTRUCTION_BOUND))
        .collect::<Option<_>>()?;
    let mut lcm: i128 = 1;
    for &(_, d) in &fractions {
        lcm = lcm.checked_mul(d / gcd(lcm, d))?;
    }
    fractions
        .iter()
        .map(|&(num, den)| num.checked_mul(lcm / den))
        .collect()
}

fn annihilates(shifted: &[i64], n: usize, w: &[i128]) -> bool {
    (0..n).all(|i| {
        let mut acc: i128 = 0;
        for j in 0..n {
            let a = shifted[i * n + j];
            if a == 0 || w[j] == 0 {
                continue;
            }
            match (a as i128)
                .checked_mul(w[j])
                .and_then(|t| acc.checked_add(t))
            {
                Some(s) => acc = s,
                None => return false,
            }
        }
        acc == 0
    })
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Integer eigenvalues with their exact multiplicities.
pub fn integer_eigenvalues(matrix: &IntMatrix, exec: Execution) -> Result<BTreeMap<i64, usize>> {
    check_input(matrix)?;
    let delta = matrix.max_abs_row_sum();
    let hessenberg =
        ModMatrix::from_fn(matrix.dimension(), |i, j| matrix.get(i, j)).into_hessenberg();
    let candidates: Vec<i64> = (-delta..=delta).collect();
    let counts = par::map(exec, &candidates, |&lambda| {
        if hessenberg.shifted_det(lambda) != 0 {
            0
        } else {
            certified_nullity(matrix, lambda)
        }
    });
    Ok(candidates
        .into_iter()
        .zip(counts)
        .filter(|&(_, m)| m > 0)
        .collect())
}

fn check_input(matrix: &IntMatrix) -> Result<()> {
    if matrix.dimension() > DIMENSION_GUARD {
        return Err(Error::DimensionTooLarge {
            dimension: matrix.dimension(),
            guard: DIMENSION_GUARD,
        });
    }
    if let Some((row, col)) = matrix.first_asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    Ok(())
}

pub fn full_spectrum(matrix: &IntMatrix) -> Result<Spectrum> {
    full_spectrum_with(matrix, Execution::default())
}

/// Exact integer part plus, if needed, a numerically clustered remainder.
///
/// Fails with [`Error::NumericMismatch`] when the eigensolver's residuals
/// are too large or its count of eigenvalues near an integer disagrees with
/// the exact multiplicity.
pub fn full_spectrum_with(matrix: &IntMatrix, exec: Execution) -> Result<Spectrum> {
    let exact = integer_eigenvalues(matrix, exec)?;
    let n = matrix.dimension();
    let scale = (matrix.max_abs_row_sum() as f64).max(1.0);
    let tolerance = CLUSTER_TOLERANCE * scale;
    let mass: usize = exact.values().sum();
    let mut entries: Vec<SpectrumEntry> = exact
        .iter()
        .map(|(&v, &m)| SpectrumEntry {
            value: SpectralValue::Exact(v),
            multiplicity: m,
        })
        .collect();
    if mass > n {
        return Err(Error::NumericMismatch(format!(
            "exact multiplicities sum to {mass} in dimension {n}"
        )));
    }
    if mass < n {
        let residue = numeric_residue(matrix, &exact, scale, tolerance)?;
        entries.extend(residue.into_iter().map(|(v, m)| SpectrumEntry {
            value: SpectralValue::Approx(v),
            multiplicity: m,
        }));
    }
    Ok(Spectrum::new(entries, tolerance))
}

fn numeric_residue(
    matrix: &IntMatrix,
    exact: &BTreeMap<i64, usize>,
    scale: f64,
    tolerance: f64,
) -> Result<Vec<(f64, usize)>> {
    let n = matrix.dimension();
    let a = DMatrix::from_fn(n, n, |i, j| matrix.get(i, j) as f64);
    let eig = SymmetricEigen::new(a.clone());
    for (i, &value) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        let residual = (&a * v - v * value).amax();
        if residual > RESIDUAL_TARGET * scale {
            return Err(Error::NumericMismatch(format!(
                "eigenpair residual {residual:e} for eigenvalue {value}"
            )));
        }
    }
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);

    let mut used = vec![false; n];
    for (&lambda, &m) in exact {
        let target = lambda as f64;
        let mut nearest: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
        nearest.sort_by(|&x, &y| {
            (values[x] - target)
                .abs()
                .total_cmp(&(values[y] - target).abs())
        });
        for &i in nearest.iter().take(m) {
            if (values[i] - target).abs() > tolerance {
                return Err(Error::NumericMismatch(format!(
                    "eigenvalue {lambda} has exact multiplicity {m} but the solver found fewer"
                )));
            }
            used[i] = true;
        }
    }
    let rest: Vec<f64> = (0..n).filter(|&i| !used[i]).map(|i| values[i]).collect();
    if let Some(&v) = rest.iter().find(|v| (*v - v.round()).abs() <= tolerance) {
        return Err(Error::NumericMismatch(format!(
            "solver reports {v} near an integer beyond its exact multiplicity"
        )));
    }

    let mut clusters: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=rest.len() {
        if i == rest.len() || rest[i] - rest[i - 1] > tolerance {
            let group = &rest[start..i];
            let mean = group.iter().sum::<f64>() / group.len() as f64;
            clusters.push((mean, group.len()));
            start = i;
        }
    }
    Ok(clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::Adjacency;
    use crate::cayley::gamma_graph;
    use crate::group::{subgroup_generated, GroupFamilySpec};

    fn cycle(n: usize) -> IntMatrix {
        IntMatrix::from(&Adjacency::from_fn(n, |u, v| {
            (u + 1) % n == v || (v + 1) % n == u
        }))
    }

    fn gamma(spec: &str, gens: &[usize]) -> IntMatrix {
        let g = spec.parse::<GroupFamilySpec>().unwrap().build().unwrap();
        let h = subgroup_generated(&g, gens).unwrap();
        IntMatrix::from(gamma_graph(&g, &h).unwrap().adjacency())
    }

    #[test]
    fn four_cycle_multiplicities() {
        let c4 = cycle(4);
        assert_eq!(integer_multiplicity(&c4, 0), 2);
        assert_eq!(integer_multiplicity(&c4, 1), 0);
        assert_eq!(integer_multiplicity_bareiss(&c4, 0), 2);
        let s = full_spectrum(&c4).unwrap();
        assert_eq!(s, Spectrum::from_integers([(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn complete_graph() {
        let k5 = IntMatrix::from(&Adjacency::from_fn(5, |u, v| u != v));
        let s = full_spectrum(&k5).unwrap();
        assert_eq!(s.to_string(), "{4:1, -1:4}");
    }

    #[test]
    fn pentagon_is_not_integral() {
        // Eigenvalues 2 and 2cos(2π/5), 2cos(4π/5), each twice.
        let s = full_spectrum(&cycle(5)).unwrap();
        let report = is_integral(&s);
        assert_eq!(report.integer_mass, 1);
        assert_eq!(report.residual_dimension, 4);
        let approx = s.approx_part();
        assert_eq!(approx.len(), 2);
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert!((approx[0].0 - golden).abs() < 1e-9 && approx[0].1 == 2);
        assert!((approx[1].0 + golden + 1.0).abs() < 1e-9 && approx[1].1 == 2);
    }

    #[test]
    fn gamma_z6_order_two() {
        let a = gamma("Z6", &[3]);
        assert_eq!(integer_multiplicity(&a, -2), 18);
        let s = full_spectrum(&a).unwrap();
        assert_eq!(
            s,
            Spectrum::from_integers([(12, 1), (4, 9), (0, 6), (-2, 18), (-6, 2)])
        );
        assert_eq!(spectral_moment(&s, 0), 36.0);
        assert_eq!(spectral_moment(&s, 1), 0.0);
        assert_eq!(exact_moment(&s, 2), Some(432));
    }

    #[test]
    fn gamma_s3_transposition_has_irrational_part() {
        let a = gamma("S3", &[1]);
        let s = full_spectrum(&a).unwrap();
        let ints = s.integer_part();
        assert_eq!(ints, BTreeMap::from([(12, 1), (4, 7), (0, 4), (-2, 16)]));
        let r13 = 13f64.sqrt();
        let approx = s.approx_part();
        assert_eq!(approx.len(), 2);
        assert!((approx[0].0 - (r13 - 1.0)).abs() < 1e-9 && approx[0].1 == 4);
        assert!((approx[1].0 + r13 + 1.0).abs() < 1e-9 && approx[1].1 == 4);
        assert_eq!(is_integral(&s).residual_dimension, 8);
        assert!(spectral_moment(&s, 1).abs() < 1e-6);
    }

    #[test]
    fn json_shape() {
        let s = Spectrum::new(
            [
                SpectrumEntry {
                    value: SpectralValue::Exact(12),
                    multiplicity: 1,
                },
                SpectrumEntry {
                    value: SpectralValue::Approx(2.605551275463989),
                    multiplicity: 4,
                },
            ],
            1e-7,
        );
        assert_eq!(
            s.to_json(),
            r#"{"entries":[{"value":"12","kind":"int","mult":1},{"value":2.6055512755,"kind":"approx","mult":4}],"dimension":5}"#
        );
    }

    #[test]
    fn canonical_order_puts_exact_first_on_ties() {
        let s = Spectrum::new(
            [
                SpectrumEntry {
                    value: SpectralValue::Approx(1.0),
                    multiplicity: 1,
                },
                SpectrumEntry {
                    value: SpectralValue::Exact(1),
                    multiplicity: 1,
                },
                SpectrumEntry {
                    value: SpectralValue::Exact(3),
                    multiplicity: 0,
                },
            ],
            1e-7,
        );
        assert_eq!(s.entries()[0].value, SpectralValue::Exact(1));
        assert_eq!(s.distinct(), 2);
    }

    #[test]
    fn isospectral_pairs() {
        let a = full_spectrum(&gamma("Z8", &[2])).unwrap();
        let b = full_spectrum(&gamma("Z4xZ2", &[1, 4])).unwrap();
        assert!(isospectral(&a, &b));
        assert!(isospectral(&a, &a));
        let c = full_spectrum(&gamma("Z6", &[3])).unwrap();
        let d = full_spectrum(&gamma("S3", &[1])).unwrap();
        assert!(!isospectral(&c, &d));
    }

    #[test]
    fn edgeless_is_integral() {
        let s = full_spectrum(&IntMatrix::from(&Adjacency::empty(7))).unwrap();
        assert_eq!(s, Spectrum::from_integers([(0, 7)]));
        assert!(is_integral(&s).is_integral);
    }

    #[test]
    fn rejects_bad_input() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert!(matches!(
            full_spectrum(&m),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        ));
        assert!(IntMatrix::from_rows(&[vec![0, 1], vec![0]]).is_err());
        let big = IntMatrix::from_fn(DIMENSION_GUARD + 1, |_, _| 0);
        assert!(matches!(
            full_spectrum(&big),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = gamma("D4", &[4]);
        assert_eq!(
            full_spectrum_with(&a, Execution::Sequential).unwrap(),
            full_spectrum_with(&a, Execution::default()).unwrap()
        );
    }
}
