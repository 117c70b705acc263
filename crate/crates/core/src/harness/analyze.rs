use serde::Serialize;

use crate::adjacency::Adjacency;
use crate::cayley::{gamma_graph, GammaCase, GammaGraph};
use crate::closed_form::{check_partial, kappa_check, predicted_partial, predicted_spectrum};
use crate::closed_form::{ClosedFormPrediction, KappaVerdict, PartialCheck};
use crate::error::{Error, Result};
use crate::group::{subgroup_generated, Element, FiniteGroup, Subgroup};
use crate::par::Execution;
use crate::qsrg::{compare_with_prediction, qsrg_parameters_with, QsrgComparison, QsrgParams};
use crate::spectrum::{full_spectrum_with, is_integral, IntMatrix, IntegralityReport, Spectrum};

/// Everything measured and predicted for one pair `(G, H)`.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub group: String,
    pub subgroup: Vec<Element>,
    pub subgroup_labels: Vec<String>,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub normal: bool,
    pub case: GammaCase,
    pub outside_preconditions: bool,
    pub vertices: usize,
    pub degree: usize,
    pub connected: bool,
    pub spectrum: Spectrum,
    pub integrality: IntegralityReport,
    pub qsrg: Option<QsrgParams>,
    pub qsrg_error: Option<String>,
    pub qsrg_prediction: Option<QsrgComparison>,
    pub closed_form: Option<ClosedFormPrediction>,
    pub kappa: Option<KappaVerdict>,
    pub partial_bounds: Option<PartialCheck>,
}

impl InstanceReport {
    pub fn closed_form_match(&self) -> Option<bool> {
        self.kappa.map(|v| v.spectra_equal)
    }

    pub fn kappa_measured(&self) -> usize {
        self.spectrum.distinct()
    }
}

/// `{0,3}` style rendering of a subgroup's element indices.
pub fn subgroup_string(elements: &[Element]) -> String {
    let body: Vec<String> = elements.iter().map(ToString::to_string).collect();
    format!("{{{}}}", body.join(","))
}

/// Parses comma-separated generators, each an element index or a label.
/// An empty string yields the trivial subgroup.
pub fn parse_subgroup_generators(group: &FiniteGroup, text: &str) -> Result<Subgroup> {
    let mut generators = Vec::new();
    let mut offset = 0;
    for token in text.split(',') {
        let trimmed = token.trim();
        let position = offset + (token.len() - token.trim_start().len());
        offset += token.len() + 1;
        if trimmed.is_empty() {
            if text.trim().is_empty() {
                continue;
            }
            return Err(Error::parse(position, "empty generator"));
        }
        let element = match trimmed.parse::<usize>() {
            Ok(index) => index,
            Err(_) => group
                .elements()
                .find(|&g| group.label(g) == trimmed)
                .ok_or_else(|| Error::parse(position, format!("unknown element `{trimmed}`")))?,
        };
        if element >= group.order() {
            return Err(Error::parse(
                position,
                format!(
                    "element {element} out of range for a group of order {}",
                    group.order()
                ),
            ));
        }
        generators.push(element);
    }
    subgroup_generated(group, &generators)
}

pub fn analyze_instance(
    name: &str,
    group: &FiniteGroup,
    subgroup: &Subgroup,
    exec: Execution,
) -> Result<InstanceReport> {
    let gamma = gamma_graph(group, subgroup)?;
    analyze_adjacency(name, group, &gamma, gamma.adjacency(), exec)
}

/// Analysis of `adjacency`, normally `gamma.adjacency()`; a different
/// matrix can be passed to test that the checks notice corruption.
pub fn analyze_adjacency(
    name: &str,
    group: &FiniteGroup,
    gamma: &GammaGraph,
    adjacency: &Adjacency,
    exec: Execution,
) -> Result<InstanceReport> {
    let subgroup = &gamma.subgroup;
    let (n, k, ell) = (gamma.n(), gamma.k(), gamma.ell());
    let spectrum = full_spectrum_with(&IntMatrix::from(adjacency), exec)?;
    let integrality = is_integral(&spectrum);
    let (qsrg, qsrg_error) = match qsrg_parameters_with(adjacency, exec) {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let proper = subgroup.is_proper_nontrivial();
    let qsrg_prediction = match (&qsrg, proper) {
        (Some(p), true) => Some(compare_with_prediction(p, n, k, subgroup.is_normal())?),
        _ => None,
    };
    let closed_form = if proper && subgroup.is_normal() {
        Some(predicted_spectrum(n, k)?)
    } else {
        None
    };
    let kappa = closed_form.as_ref().map(|p| kappa_check(p, &spectrum));
    let partial_bounds = if proper {
        Some(check_partial(&predicted_partial(n, k)?, &spectrum))
    } else {
        None
    };
    Ok(InstanceReport {
        group: name.to_string(),
        subgroup: subgroup.elements().to_vec(),
        subgroup_labels: subgroup
            .elements()
            .iter()
            .map(|&h| group.label(h))
            .collect(),
        n,
        k,
        ell,
        normal: subgroup.is_normal(),
        case: gamma.case,
        outside_preconditions: gamma.outside_preconditions,
        vertices: adjacency.vertex_count(),
        degree: adjacency.max_degree(),
        connected: adjacency.is_connected(),
        spectrum,
        integrality,
        qsrg,
        qsrg_error,
        qsrg_prediction,
        closed_form,
        kappa,
        partial_bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupFamilySpec;

    fn build(spec: &str) -> FiniteGroup {
        spec.parse::<GroupFamilySpec>().unwrap().build().unwrap()
    }

    #[test]
    fn subgroup_parsing() {
        let z6 = build("Z6");
        assert_eq!(
            parse_subgroup_generators(&z6, "3").unwrap().elements(),
            &[0, 3]
        );
        assert_eq!(parse_subgroup_generators(&z6, " 2 , 3").unwrap().order(), 6);
        assert!(parse_subgroup_generators(&z6, "").unwrap().is_trivial());
        match parse_subgroup_generators(&z6, "1,9") {
            Err(Error::Parse { position: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_subgroup_generators(&z6, "1,,2").is_err());
        let d4 = build("D4");
        assert_eq!(
            parse_subgroup_generators(&d4, "s").unwrap().elements(),
            &[0, 4]
        );
        assert!(parse_subgroup_generators(&d4, "q").is_err());
    }

    #[test]
    fn z6_report() {
        let z6 = build("Z6");
        let h = subgroup_generated(&z6, &[3]).unwrap();
        let r = analyze_instance("Z6", &z6, &h, Execution::default()).unwrap();
        assert!(r.integrality.is_integral);
        assert_eq!(r.qsrg.as_ref().unwrap().a, Some(4));
        assert!(r.qsrg_prediction.as_ref().unwrap().matches());
        assert_eq!(r.closed_form_match(), Some(true));
        assert!(r.partial_bounds.as_ref().unwrap().holds);
        assert_eq!(subgroup_string(&r.subgroup), "{0,3}");
    }

    #[test]
    fn edgeless_and_non_normal_reports() {
        let z6 = build("Z6");
        let all = subgroup_generated(&z6, &[1]).unwrap();
        let r = analyze_instance("Z6", &z6, &all, Execution::default()).unwrap();
        assert_eq!(r.case, GammaCase::Edgeless);
        assert!(r.closed_form.is_none() && r.qsrg.as_ref().unwrap().degenerate);

        let s3 = build("S3");
        let b = subgroup_generated(&s3, &[1]).unwrap();
        let r = analyze_instance("S3", &s3, &b, Execution::default()).unwrap();
        assert!(!r.integrality.is_integral);
        assert!(r.closed_form.is_none());
        assert!(r.partial_bounds.unwrap().holds);
    }
}
