//! Spectra of `Γ_H(G)` predicted from `n = |G|` and `k = |H|` alone.
//!
//! The full predictions apply to normal `H`; the partial ones (Perron
//! value, multiplicity lower bounds, a zero eigenvalue) to every `H`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::spectrum::{exact_moment, Spectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Ell2,
    Ell3,
    EllGe4K2,
    EllGe4Kgt2,
}

impl CaseTag {
    pub fn of(ell: usize, k: usize) -> Self {
        match (ell, k) {
            (2, _) => CaseTag::Ell2,
            (3, _) => CaseTag::Ell3,
            (_, 2) => CaseTag::EllGe4K2,
            _ => CaseTag::EllGe4Kgt2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Ell2 => "ell2",
            CaseTag::Ell3 => "ell3",
            CaseTag::EllGe4K2 => "ell_ge4_k2",
            CaseTag::EllGe4Kgt2 => "ell_ge4_kgt2",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormPrediction {
    pub n: usize,
    pub k: usize,
    pub case_tag: CaseTag,
    pub spectrum: Spectrum,
    /// Distinct eigenvalues after merging.
    pub kappa: usize,
}

impl Serialize for ClosedFormPrediction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("entries", self.spectrum.entries())?;
        map.serialize_entry("dimension", &self.spectrum.dimension())?;
        map.serialize_entry("case_tag", self.case_tag.as_str())?;
        map.serialize_entry("kappa", &self.kappa)?;
        map.end()
    }
}

impl ClosedFormPrediction {
    /// Multiplicities sum to `n²`, the trace is 0 and `tr A² = 3n²(n − k)`.
    pub fn moments_hold(&self) -> bool {
        let (n, k) = (self.n as i128, self.k as i128);
        exact_moment(&self.spectrum, 0) == Some(n * n)
            && exact_moment(&self.spectrum, 1) == Some(0)
            && exact_moment(&self.spectrum, 2) == Some(3 * n * n * (n - k))
    }
}

fn check_nk(n: usize, k: usize) -> Result<usize> {
    if k <= 1 || k >= n {
        return Err(Error::InvalidIndex(format!(
            "need 1 < k < n, got n={n}, k={k}"
        )));
    }
    if !n.is_multiple_of(k) {
        return Err(Error::InvalidIndex(format!("{k} does not divide {n}")));
    }
    Ok(n / k)
}

fn to_spectrum(rows: &[(i64, i64)]) -> Spectrum {
    debug_assert!(rows.iter().all(|&(_, m)| m >= 0), "{rows:?}");
    Spectrum::from_integers(rows.iter().map(|&(v, m)| (v, m.max(0) as usize)))
}

/// The tabulated spectrum for the case selected by `ℓ = n/k` and `k`.
pub fn predicted_spectrum(n: usize, k: usize) -> Result<ClosedFormPrediction> {
    let ell = check_nk(n, k)?;
    let case_tag = CaseTag::of(ell, k);
    let (n_, k_, l) = (n as i64, k as i64, ell as i64);
    let rows: Vec<(i64, i64)> = match case_tag {
        CaseTag::Ell2 => vec![
            (3 * k_, 1),
            (k_, 3 * n_ - 6),
            (-k_, 3 * n_ - 3),
            (0, n_ * n_ - 6 * n_ + 8),
        ],
        CaseTag::Ell3 => vec![
            (6 * k_, 1),
            (2 * k_, 3 * n_ - 9),
            (-k_, 6 * n_ - 18),
            (-3 * k_, 2),
            (0, n_ * n_ - 9 * n_ + 24),
        ],
        CaseTag::EllGe4K2 => vec![
            (6 * l - 6, 1),
            (2 * l - 6, 3 * l - 3),
            (2 * l - 2, 3 * l),
            (-6, l * l - 3 * l + 2),
            (-2, 3 * l * l - 3 * l),
        ],
        CaseTag::EllGe4Kgt2 => generic_rows(n_, k_, l),
    };
    let spectrum = to_spectrum(&rows);
    Ok(ClosedFormPrediction {
        n,
        k,
        case_tag,
        kappa: spectrum.distinct(),
        spectrum,
    })
}

fn generic_rows(n: i64, k: i64, l: i64) -> Vec<(i64, i64)> {
    vec![
        (3 * (l - 1) * k, 1),
        ((l - 3) * k, 3 * l - 3),
        ((l - 1) * k, 3 * n - 3 * l),
        (-3 * k, l * l - 3 * l + 2),
        (-k, 3 * n * l - 3 * l * l - 3 * n + 3 * l),
        (0, n * n - 3 * n * l + 2 * l * l),
    ]
}

/// The six-row formula evaluated for any `(n, k)`, merged and with zero
/// multiplicities dropped. It specialises to every tabulated case.
pub fn generic_spectrum(n: usize, k: usize) -> Result<Spectrum> {
    let ell = check_nk(n, k)?;
    Ok(to_spectrum(&generic_rows(n as i64, k as i64, ell as i64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityBound {
    pub value: i64,
    pub min_multiplicity: usize,
    /// The multiplicity must equal `min_multiplicity` exactly.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialPrediction {
    pub bounds: Vec<MultiplicityBound>,
    /// `0` is an eigenvalue (claimed when `k > 2`).
    pub zero_eigenvalue: bool,
}

/// Predictions valid for every subgroup of order `k` in a group of order
/// `n`, normal or not.
pub fn predicted_partial(n: usize, k: usize) -> Result<PartialPrediction> {
    let ell = check_nk(n, k)?;
    let (n_, k_) = (n as i64, k as i64);
    Ok(PartialPrediction {
        bounds: vec![
            MultiplicityBound {
                value: 3 * (n_ - k_),
                min_multiplicity: 1,
                exact: true,
            },
            MultiplicityBound {
                value: n_ - 3 * k_,
                min_multiplicity: 2 * (ell - 1),
                exact: false,
            },
            MultiplicityBound {
                value: n_ - k_,
                min_multiplicity: 2 * (n - ell),
                exact: false,
            },
        ],
        zero_eigenvalue: k > 2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialCheck {
    pub holds: bool,
    pub violations: Vec<String>,
}

pub fn check_partial(prediction: &PartialPrediction, measured: &Spectrum) -> PartialCheck {
    let mut violations = Vec::new();
    for b in &prediction.bounds {
        let m = measured.multiplicity(b.value);
        if b.exact && m != b.min_multiplicity {
            violations.push(format!(
                "m({}) = {m}, expected exactly {}",
                b.value, b.min_multiplicity
            ));
        } else if m < b.min_multiplicity {
            violations.push(format!(
                "m({}) = {m}, expected at least {}",
                b.value, b.min_multiplicity
            ));
        }
    }
    if prediction.zero_eigenvalue && measured.multiplicity(0) == 0 {
        violations.push("0 is not an eigenvalue".to_string());
    }
    PartialCheck {
        holds: violations.is_empty(),
        violations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KappaVerdict {
    pub predicted_kappa: usize,
    pub measured_kappa: usize,
    pub kappa_matches: bool,
    pub kappa_in_range: bool,
    pub spectra_equal: bool,
}

impl KappaVerdict {
    pub fn holds(&self) -> bool {
        self.kappa_matches && self.kappa_in_range && self.spectra_equal
    }
}

/// Distinct-eigenvalue counts must agree and lie in `{4, 5, 6}`.
pub fn kappa_check(prediction: &ClosedFormPrediction, measured: &Spectrum) -> KappaVerdict {
    let measured_kappa = measured.distinct();
    KappaVerdict {
        predicted_kappa: prediction.kappa,
        measured_kappa,
        kappa_matches: measured_kappa == prediction.kappa,
        kappa_in_range: (4..=6).contains(&measured_kappa),
        spectra_equal: &prediction.spectrum == measured,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabulated_examples() {
        let p = predicted_spectrum(6, 2).unwrap();
        assert_eq!(p.case_tag, CaseTag::Ell3);
        assert_eq!(
            p.spectrum,
            Spectrum::from_integers([(12, 1), (4, 9), (-2, 18), (-6, 2), (0, 6)])
        );
        assert_eq!(p.kappa, 5);
        let p = predicted_spectrum(6, 3).unwrap();
        assert_eq!(
            p.spectrum,
            Spectrum::from_integers([(9, 1), (3, 12), (-3, 15), (0, 8)])
        );
        assert_eq!(p.kappa, 4);
        let p = predicted_spectrum(8, 2).unwrap();
        assert_eq!(p.case_tag, CaseTag::EllGe4K2);
        assert_eq!(
            p.spectrum,
            Spectrum::from_integers([(18, 1), (6, 12), (2, 9), (-2, 36), (-6, 6)])
        );
        let p = predicted_spectrum(12, 3).unwrap();
        assert_eq!(p.case_tag, CaseTag::EllGe4Kgt2);
        assert_eq!(
            p.spectrum,
            Spectrum::from_integers([(27, 1), (9, 24), (3, 9), (-3, 72), (-9, 6), (0, 32)])
        );
        assert_eq!(p.kappa, 6);
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(
            predicted_spectrum(6, 4),
            Err(Error::InvalidIndex(_))
        ));
        assert!(predicted_spectrum(6, 1).is_err());
        assert!(predicted_spectrum(6, 6).is_err());
    }

    #[test]
    fn json_has_case_and_kappa() {
        let json = serde_json::to_value(predicted_spectrum(6, 3).unwrap()).unwrap();
        assert_eq!(json["case_tag"], "ell2");
        assert_eq!(json["kappa"], 4);
        assert_eq!(json["dimension"], 36);
        assert_eq!(json["entries"][0]["value"], "9");
    }

    #[test]
    fn partial_predictions() {
        let p = predicted_partial(6, 2).unwrap();
        assert_eq!(p.bounds[0].value, 12);
        assert_eq!((p.bounds[1].value, p.bounds[1].min_multiplicity), (0, 4));
        assert_eq!((p.bounds[2].value, p.bounds[2].min_multiplicity), (4, 6));
        assert!(!p.zero_eigenvalue);
        let z6 = Spectrum::from_integers([(12, 1), (4, 9), (0, 6), (-2, 18), (-6, 2)]);
        assert!(check_partial(&p, &z6).holds);
        assert!(predicted_partial(8, 4).unwrap().zero_eigenvalue);
        let z8 = Spectrum::from_integers([(12, 1), (4, 18), (-4, 21), (0, 24)]);
        assert!(check_partial(&predicted_partial(8, 4).unwrap(), &z8).holds);
        let broken = Spectrum::from_integers([(12, 2), (4, 9), (0, 6), (-2, 17), (-6, 2)]);
        let check = check_partial(&p, &broken);
        assert!(!check.holds && check.violations.len() == 1);
    }

    #[test]
    fn kappa_examples() {
        let p = predicted_spectrum(6, 2).unwrap();
        let v = kappa_check(&p, &p.spectrum);
        assert!(v.holds());
        let off = Spectrum::from_integers([(12, 1), (4, 9), (0, 8), (-2, 18)]);
        let v = kappa_check(&p, &off);
        assert!(!v.kappa_matches && !v.spectra_equal);
    }
}
