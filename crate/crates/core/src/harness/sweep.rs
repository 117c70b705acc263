use serde::Serialize;

use super::analyze::{analyze_instance, subgroup_string};
use super::corpus::{corpus, CorpusGroup, HARD_ORDER_BOUND};
use crate::cayley::MIN_THEOREM_ORDER;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::par::{self, Execution};

/// One CSV/JSON row of `qsrg sweep`. Field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub group: String,
    pub subgroup: String,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub normal: bool,
    pub integral: Option<bool>,
    pub kappa: Option<usize>,
    pub grade: Option<usize>,
    pub spectrum: String,
    pub closed_form_match: Option<bool>,
    pub note: String,
}

pub fn sweep(max_order: usize, exec: Execution) -> Result<Vec<SweepRow>> {
    if max_order > HARD_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded {
            order: max_order,
            bound: HARD_ORDER_BOUND,
        });
    }
    sweep_groups(&corpus(max_order)?, exec)
}

/// Every proper non-trivial subgroup of every group, one row each, sorted
/// by group name and then subgroup elements. Errors land in `note`.
pub fn sweep_groups(groups: &[CorpusGroup], exec: Execution) -> Result<Vec<SweepRow>> {
    let mut jobs = Vec::new();
    for entry in groups {
        for h in entry.proper_subgroups()? {
            jobs.push((entry, h));
        }
    }
    jobs.sort_by(|a, b| (&a.0.name, a.1.elements()).cmp(&(&b.0.name, b.1.elements())));
    let inner = if exec.is_parallel() {
        Execution::Sequential
    } else {
        exec
    };
    Ok(par::map(exec, &jobs, |(entry, h)| {
        sweep_row(&entry.name, &entry.group, h, inner)
    }))
}

/// Analyses one instance and flattens the report into a row.
pub fn sweep_row(name: &str, group: &FiniteGroup, h: &Subgroup, exec: Execution) -> SweepRow {
    let n = group.order();
    let mut row = SweepRow {
        group: name.to_string(),
        subgroup: subgroup_string(h.elements()),
        n,
        k: h.order(),
        ell: h.index(),
        normal: h.is_normal(),
        integral: None,
        kappa: None,
        grade: None,
        spectrum: String::new(),
        closed_form_match: None,
        note: String::new(),
    };
    let mut notes = Vec::new();
    if n < MIN_THEOREM_ORDER {
        notes.push(format!("outside preconditions (n < {MIN_THEOREM_ORDER})"));
    }
    match analyze_instance(name, group, h, exec) {
        Ok(report) => {
            row.integral = Some(report.integrality.is_integral);
            row.kappa = Some(report.kappa_measured());
            row.grade = report.qsrg.as_ref().map(|p| p.grade);
            row.spectrum = report.spectrum.to_string();
            row.closed_form_match = report.closed_form_match();
            if let Some(e) = report.qsrg_error {
                notes.push(e);
            }
        }
        Err(e) => notes.push(format!("error: {e}")),
    }
    row.note = notes.join("; ");
    row
}

pub fn write_csv(rows: &[SweepRow], out: impl std::io::Write) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row).map_err(|e| Error::Output(e.into()))?;
    }
    writer.flush().map_err(Error::Output)
}
