//! Plain-text and CSV renderings of the reports.

use std::fmt::Write as _;
use std::io::Write;

use super::analyze::{subgroup_string, InstanceReport};
use super::compare::CompareReport;
use super::sweep::SweepRow;
use super::verify::VerifyReport;
use crate::error::{Error, Result};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

pub fn analyze_text(r: &InstanceReport) -> String {
    let mut s = String::new();
    let labels = format!("{{{}}}", r.subgroup_labels.join(","));
    let _ = writeln!(
        s,
        "group {}  subgroup {} = {}  (n={}, k={}, ell={}, {})",
        r.group,
        subgroup_string(&r.subgroup),
        labels,
        r.n,
        r.k,
        r.ell,
        if r.normal { "normal" } else { "not normal" }
    );
    match r.case {
        crate::cayley::GammaCase::Edgeless => {
            let _ = writeln!(s, "case: H = G, edgeless graph");
        }
        crate::cayley::GammaCase::StronglyRegular => {
            let _ = writeln!(s, "case: H = {{1}}, strongly regular");
        }
        crate::cayley::GammaCase::QuasiStronglyRegular => {}
    }
    if r.outside_preconditions {
        let _ = writeln!(s, "note: n < 5, outside the range the predictions cover");
    }
    let _ = writeln!(
        s,
        "vertices {}  degree {}  connected {}",
        r.vertices,
        r.degree,
        yes_no(r.connected)
    );
    let _ = writeln!(s, "spectrum {}", r.spectrum);
    let _ = writeln!(
        s,
        "integral {} (residual dimension {})",
        yes_no(r.integrality.is_integral),
        r.integrality.residual_dimension
    );
    for (value, mult) in r.spectrum.approx_part() {
        let _ = writeln!(s, "  irrational {value:.6} with multiplicity {mult}");
    }
    match (&r.qsrg, &r.qsrg_error) {
        (Some(p), _) => {
            let a = p.a.map_or("-".to_string(), |a| a.to_string());
            let _ = write!(
                s,
                "qsrg a={a} c-set={} grade={}",
                subgroup_string(&p.c_set),
                p.grade
            );
            if p.degenerate {
                s.push_str(" (degenerate)");
            }
            if let Some(cmp) = &r.qsrg_prediction {
                let _ = write!(
                    s,
                    "  predicted a={} c-set={} {}",
                    cmp.predicted_a,
                    subgroup_string(&cmp.predicted_c_set),
                    verdict(cmp.matches())
                );
            }
            s.push('\n');
        }
        (None, Some(e)) => {
            let _ = writeln!(s, "qsrg: {e}");
        }
        (None, None) => {}
    }
    if let (Some(cf), Some(k)) = (&r.closed_form, &r.kappa) {
        let _ = writeln!(
            s,
            "closed form {} (case {}, kappa {} measured {})",
            verdict(k.spectra_equal),
            cf.case_tag.as_str(),
            k.predicted_kappa,
            k.measured_kappa
        );
    }
    if let Some(b) = &r.partial_bounds {
        if b.holds {
            let _ = writeln!(s, "multiplicity bounds hold");
        } else {
            let _ = writeln!(
                s,
                "multiplicity bounds violated: {}",
                b.violations.join("; ")
            );
        }
    }
    s
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "verified {} groups, {} instances (|G| <= {})",
        r.groups, r.instances, r.max_order
    );
    for (tag, summary) in &r.tags {
        let status = if summary.failed == 0 { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{status} {tag:<24} {} passed, {} failed",
            summary.passed, summary.failed
        );
    }
    for f in &r.failures {
        let _ = writeln!(
            s,
            "failure [{}] {} H={}: expected {}, got {}",
            f.tag, f.group, f.subgroup, f.expected, f.got
        );
    }
    for f in &r.findings {
        let _ = writeln!(
            s,
            "finding [{}] {} H={}: {}",
            f.kind, f.group, f.subgroup, f.detail
        );
    }
    let _ = writeln!(
        s,
        "{}",
        if r.passed() {
            "all assertions passed"
        } else {
            "some assertions failed"
        }
    );
    s
}

pub fn verify_csv(r: &VerifyReport, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Output(e.into());
    w.write_record(["tag", "passed", "failed"]).map_err(io)?;
    for (tag, summary) in &r.tags {
        w.write_record([
            tag.clone(),
            summary.passed.to_string(),
            summary.failed.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(Error::Output)
}

pub fn sweep_text(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    let opt = |b: Option<bool>| b.map_or("-", yes_no);
    for r in rows {
        let _ = write!(
            s,
            "{:<10} {:<24} n={:<2} k={:<2} ell={:<2} normal={:<3} integral={:<3} kappa={} grade={} closed-form={}",
            r.group,
            r.subgroup,
            r.n,
            r.k,
            r.ell,
            yes_no(r.normal),
            opt(r.integral),
            r.kappa.map_or("-".into(), |k| k.to_string()),
            r.grade.map_or("-".into(), |g| g.to_string()),
            opt(r.closed_form_match),
        );
        if !r.note.is_empty() {
            let _ = write!(s, "  [{}]", r.note);
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{} instances", rows.len());
    s
}

pub fn compare_text(r: &CompareReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "left  {}: {}", r.left, r.left_spectrum);
    let _ = writeln!(s, "right {}: {}", r.right, r.right_spectrum);
    let _ = writeln!(s, "isospectral {}", yes_no(r.isospectral));
    let _ = writeln!(s, "verdict {}", r.verdict);
    s
}

pub fn compare_csv(r: &CompareReport, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Output(e.into());
    w.write_record(["left", "right", "isospectral", "verdict"])
        .map_err(io)?;
    w.write_record([
        r.left.clone(),
        r.right.clone(),
        r.isospectral.to_string(),
        r.verdict.to_string(),
    ])
    .map_err(io)?;
    w.flush().map_err(Error::Output)
}
