//! The invariant suite run by `qsrg verify`.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

use super::analyze::subgroup_string;
use super::corpus::{corpus, CorpusGroup, HARD_ORDER_BOUND};
use crate::adjacency::{cartesian_product, Adjacency};
use crate::cayley::{
    cayley_graph, connection_set_sh, gamma_component_graph, gamma_graph, verify_alpha_isomorphism,
    verify_component_isomorphisms, zero_eigenvector_witness, Component, ConnectionSet,
    MIN_THEOREM_ORDER,
};
use crate::characters::{
    abelian_cayley_spectrum_with, char_sum, character_table, fixed_dim_sum_check,
};
use crate::closed_form::{check_partial, kappa_check, predicted_partial, predicted_spectrum};
use crate::error::{Error, Result};
use crate::group::{
    all_subgroups, atom, atoms, complement, direct_square, is_eulerian, is_normal_set,
    subgroup_generated, Subgroup,
};
use crate::par::{self, Execution};
use crate::qsrg::{compare_with_prediction, qsrg_parameters_with};
use crate::spectrum::{
    exact_moment, full_spectrum_with, is_integral, spectral_moment, IntMatrix, Spectrum,
};

/// Every assertion tag `verify` can run.
pub const THEOREM_TAGS: &[&str] = &[
    "regularity",
    "connectivity",
    "a-value",
    "c-set",
    "grade",
    "srg",
    "integrality",
    "component-integrality",
    "perron",
    "multiplicity-bounds",
    "zero-eigenvalue",
    "closed-form",
    "kappa",
    "isospectral",
    "trace",
    "alpha",
    "component-maps",
    "cartesian-product",
    "character-oracle",
    "fixed-dim",
    "atoms",
    "normal-complement",
    "kernel-sum",
];

/// Observations that are reported but never fail the run.
pub const FINDING_KINDS: &[&str] = &["conjecture", "zero-witness"];

const SPECTRAL_TAGS: &[&str] = &[
    "integrality",
    "perron",
    "multiplicity-bounds",
    "zero-eigenvalue",
    "closed-form",
    "kappa",
    "isospectral",
    "trace",
    "character-oracle",
    "conjecture",
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_order: usize,
    pub theorem: Option<String>,
    /// Flip one adjacency bit of the first instance before checking it.
    pub inject_fault: bool,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_order: super::corpus::DEFAULT_VERIFY_ORDER,
            theorem: None,
            inject_fault: false,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub group: String,
    pub subgroup: String,
    pub tag: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub group: String,
    pub subgroup: String,
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TagSummary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub max_order: usize,
    pub groups: usize,
    pub instances: usize,
    pub tags: BTreeMap<String, TagSummary>,
    pub failures: Vec<Failure>,
    pub findings: Vec<Finding>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_tags(&self) -> Vec<&str> {
        self.tags
            .iter()
            .filter(|(_, s)| s.failed > 0)
            .map(|(t, _)| t.as_str())
            .collect()
    }
}

/// `(group, subgroup, spectrum)`
type Labelled = (String, String, Spectrum);

enum Event {
    Check {
        tag: &'static str,
        ok: bool,
        expected: String,
        got: String,
    },
    Finding {
        kind: &'static str,
        detail: String,
    },
}

struct Log<'a> {
    filter: Option<&'a str>,
    events: Vec<Event>,
}

impl<'a> Log<'a> {
    fn new(filter: Option<&'a str>) -> Self {
        Log {
            filter,
            events: Vec::new(),
        }
    }

    fn wants(&self, tag: &str) -> bool {
        self.filter.is_none_or(|f| f == tag)
    }

    fn wants_any(&self, tags: &[&str]) -> bool {
        tags.iter().any(|t| self.wants(t))
    }

    fn check(&mut self, tag: &'static str, ok: bool, expected: impl Display, got: impl Display) {
        if self.wants(tag) {
            self.events.push(Event::Check {
                tag,
                ok,
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    fn finding(&mut self, kind: &'static str, detail: impl Display) {
        if self.wants(kind) {
            self.events.push(Event::Finding {
                kind,
                detail: detail.to_string(),
            });
        }
    }
}

fn flip_first_non_edge(adj: &mut Adjacency) {
    if let Some(v) = (1..adj.vertex_count()).find(|&v| !adj.get(0, v)) {
        adj.toggle_edge(0, v);
    }
}

/// Runs the suite on every corpus group of order at most `max_order`.
pub fn verify(options: &VerifyOptions) -> Result<VerifyReport> {
    if options.max_order > HARD_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded {
            order: options.max_order,
            bound: HARD_ORDER_BOUND,
        });
    }
    if let Some(t) = &options.theorem {
        if !THEOREM_TAGS.contains(&t.as_str()) && !FINDING_KINDS.contains(&t.as_str()) {
            return Err(Error::InvalidIndex(format!(
                "unknown theorem tag `{t}` (known: {})",
                THEOREM_TAGS
                    .iter()
                    .chain(FINDING_KINDS)
                    .copied()
                    .collect::<Vec<_>>()
                    .join(", ")
            )));
        }
    }
    verify_groups(&corpus(options.max_order)?, options)
}

/// Runs the suite on the given groups.
pub fn verify_groups(groups: &[CorpusGroup], options: &VerifyOptions) -> Result<VerifyReport> {
    let filter = options.theorem.as_deref();
    let mut jobs: Vec<(usize, Subgroup)> = Vec::new();
    for (gi, entry) in groups.iter().enumerate() {
        if entry.group.order() < MIN_THEOREM_ORDER {
            continue;
        }
        for h in entry.proper_subgroups()? {
            jobs.push((gi, h));
        }
    }
    let exec = options.execution;
    let inner = if exec.is_parallel() {
        Execution::Sequential
    } else {
        exec
    };
    let results = par::map_range(exec, jobs.len(), |j| {
        let (gi, h) = &jobs[j];
        let fault = options.inject_fault && j == 0;
        check_instance(&groups[*gi], h, fault, inner, filter)
    });
    let group_results = par::map(exec, groups, |entry| check_group(entry, inner, filter));

    let mut report = VerifyReport {
        max_order: options.max_order,
        groups: groups.len(),
        instances: jobs.len(),
        tags: BTreeMap::new(),
        failures: Vec::new(),
        findings: Vec::new(),
    };
    let mut normal_spectra: BTreeMap<(usize, usize), Vec<Labelled>> = BTreeMap::new();
    for ((gi, h), (events, spectrum)) in jobs.iter().zip(results) {
        let name = &groups[*gi].name;
        let sub = subgroup_string(h.elements());
        if let Some(s) = spectrum.filter(|_| h.is_normal()) {
            normal_spectra
                .entry((h.parent_order(), h.order()))
                .or_default()
                .push((name.clone(), sub.clone(), s));
        }
        absorb(&mut report, name, &sub, events);
    }
    for (entry, events) in groups.iter().zip(group_results) {
        absorb(&mut report, &entry.name, "-", events);
    }

    let mut log = Log::new(filter);
    let mut iso_events = Vec::new();
    for ((n, k), members) in &normal_spectra {
        let (first_group, first_sub, reference) = &members[0];
        for (group, sub, s) in &members[1..] {
            log.check(
                "isospectral",
                s == reference,
                format!("spectrum of {first_group} {first_sub} (n={n}, k={k}): {reference}"),
                s,
            );
            iso_events.push((
                group.clone(),
                sub.clone(),
                log.events.drain(..).collect::<Vec<_>>(),
            ));
        }
    }
    for (group, sub, events) in iso_events {
        absorb(&mut report, &group, &sub, events);
    }
    Ok(report)
}

fn absorb(report: &mut VerifyReport, group: &str, subgroup: &str, events: Vec<Event>) {
    for event in events {
        match event {
            Event::Check {
                tag,
                ok,
                expected,
                got,
            } => {
                let summary = report.tags.entry(tag.to_string()).or_default();
                if ok {
                    summary.passed += 1;
                } else {
                    summary.failed += 1;
                    report.failures.push(Failure {
                        group: group.to_string(),
                        subgroup: subgroup.to_string(),
                        tag: tag.to_string(),
                        expected,
                        got,
                    });
                }
            }
            Event::Finding { kind, detail } => report.findings.push(Finding {
                group: group.to_string(),
                subgroup: subgroup.to_string(),
                kind: kind.to_string(),
                detail,
            }),
        }
    }
}

fn check_instance(
    entry: &CorpusGroup,
    h: &Subgroup,
    inject_fault: bool,
    exec: Execution,
    filter: Option<&str>,
) -> (Vec<Event>, Option<Spectrum>) {
    let mut log = Log::new(filter);
    let spectrum = match run_instance_checks(entry, h, inject_fault, exec, &mut log) {
        Ok(s) => s,
        Err(e) => {
            log.filter = None;
            log.check("construction", false, "instance builds and analyses", e);
            None
        }
    };
    (log.events, spectrum)
}

fn run_instance_checks(
    entry: &CorpusGroup,
    h: &Subgroup,
    inject_fault: bool,
    exec: Execution,
    log: &mut Log<'_>,
) -> Result<Option<Spectrum>> {
    let g = &entry.group;
    let (n, k, ell) = (g.order(), h.order(), h.index());
    let degree = 3 * (n - k);
    let gamma = gamma_graph(g, h)?;
    let mut adj = gamma.adjacency().clone();
    if inject_fault {
        flip_first_non_edge(&mut adj);
    }

    if log.wants("regularity") {
        let d = adj.regular_degree();
        log.check("regularity", d == Some(degree), degree, format!("{d:?}"));
    }
    if log.wants("connectivity") {
        log.check("connectivity", adj.is_connected(), true, adj.is_connected());
    }
    if log.wants_any(&["a-value", "c-set", "grade"]) {
        match qsrg_parameters_with(&adj, exec) {
            Ok(p) => {
                let cmp = compare_with_prediction(&p, n, k, h.is_normal())?;
                let a = p.a.map_or("none".to_string(), |a| a.to_string());
                log.check("a-value", cmp.a_matches, cmp.predicted_a, a);
                log.check(
                    "c-set",
                    cmp.c_set_matches,
                    subgroup_string(&cmp.predicted_c_set),
                    subgroup_string(&p.c_set),
                );
                log.check("grade", (3..=5).contains(&p.grade), "3, 4 or 5", p.grade);
            }
            Err(e) => {
                log.check("a-value", false, "a QSRG", &e);
                log.check("c-set", false, "a QSRG", &e);
                log.check("grade", false, "a QSRG", &e);
            }
        }
    }
    if log.wants("component-integrality") {
        for c in Component::ALL {
            let comp = gamma_component_graph(g, h, c)?;
            let s = full_spectrum_with(&IntMatrix::from(comp.adjacency()), exec)?;
            let r = is_integral(&s);
            log.check(
                "component-integrality",
                r.is_integral,
                format!("{c:?} component integral"),
                format!("residual dimension {}", r.residual_dimension),
            );
        }
    }
    if log.wants("alpha") {
        let a = verify_alpha_isomorphism(g, h)?;
        log.check(
            "alpha",
            a.holds(),
            "alpha maps 1→2 and 2→3",
            format!("{a:?}"),
        );
    }
    if log.wants("component-maps") {
        let m = verify_component_isomorphisms(g, h)?;
        log.check(
            "component-maps",
            m.holds(),
            "swap 1→2 and shear 2→3",
            format!("{m:?}"),
        );
    }
    if log.wants("cartesian-product") {
        let outside = ConnectionSet::custom(g, &complement(g, h.elements()))?;
        let base = cayley_graph(g, &outside)?;
        let boxed = cartesian_product(base.adjacency(), base.adjacency());
        let c1 = gamma_component_graph(g, h, Component::First)?;
        let c2 = gamma_component_graph(g, h, Component::Second)?;
        let equal = boxed == c1.adjacency().union(c2.adjacency());
        log.check(
            "cartesian-product",
            equal,
            "box product equals components 1 ∪ 2",
            equal,
        );
    }
    if log.wants("fixed-dim") && g.is_abelian() {
        let count = fixed_dim_sum_check(g, h)?;
        log.check(
            "fixed-dim",
            count == ell * (n - ell),
            ell * (n - ell),
            count,
        );
    }
    if k > 2 && log.wants("zero-witness") {
        if let Some(v) = zero_eigenvector_witness(g, h) {
            let m = IntMatrix::from(&adj);
            if m.mul_vec(&v).iter().any(|&x| x != 0) {
                log.finding(
                    "zero-witness",
                    "six-point vector is not annihilated; 0 is checked by rank instead",
                );
            }
        }
    }

    if !log.wants_any(SPECTRAL_TAGS) {
        return Ok(None);
    }
    let spectrum = full_spectrum_with(&IntMatrix::from(&adj), exec)?;
    let report = is_integral(&spectrum);
    if h.is_normal() {
        log.check(
            "integrality",
            report.is_integral,
            "residual dimension 0",
            format!("residual dimension {}", report.residual_dimension),
        );
    } else if report.is_integral {
        log.finding(
            "conjecture",
            format!("non-normal subgroup with integral spectrum {spectrum}"),
        );
    }
    let top = spectrum.largest();
    let perron_ok =
        top.is_some_and(|e| e.value.exact() == Some(degree as i64) && e.multiplicity == 1);
    log.check(
        "perron",
        perron_ok,
        format!("largest eigenvalue {degree} with multiplicity 1"),
        top.map_or("none".into(), |e| format!("{}:{}", e.value, e.multiplicity)),
    );
    let mut partial = predicted_partial(n, k)?;
    let zero_claim = partial.zero_eigenvalue;
    partial.zero_eigenvalue = false;
    partial.bounds.retain(|b| !b.exact);
    let bounds = check_partial(&partial, &spectrum);
    log.check(
        "multiplicity-bounds",
        bounds.holds,
        format!(
            "m({}) ≥ {}, m({}) ≥ {}",
            n as i64 - 3 * k as i64,
            2 * (ell - 1),
            n - k,
            2 * (n - ell)
        ),
        if bounds.holds {
            "bounds hold".to_string()
        } else {
            bounds.violations.join("; ")
        },
    );
    if zero_claim {
        let m0 = spectrum.multiplicity(0);
        log.check(
            "zero-eigenvalue",
            m0 >= 1,
            "m(0) ≥ 1",
            format!("m(0) = {m0}"),
        );
    }
    if h.is_normal() {
        let prediction = predicted_spectrum(n, k)?;
        log.check(
            "closed-form",
            prediction.spectrum == spectrum,
            &prediction.spectrum,
            &spectrum,
        );
        let verdict = kappa_check(&prediction, &spectrum);
        log.check(
            "kappa",
            verdict.kappa_matches && verdict.kappa_in_range,
            format!("κ = {} in {{4,5,6}}", verdict.predicted_kappa),
            verdict.measured_kappa,
        );
    }
    if log.wants("trace") {
        let (n2, expected2) = ((n * n) as f64, (3 * n * n * (n - k)) as f64);
        let (m0, m1, m2) = match (
            exact_moment(&spectrum, 0),
            exact_moment(&spectrum, 1),
            exact_moment(&spectrum, 2),
        ) {
            (Some(a), Some(b), Some(c)) => (a as f64, b as f64, c as f64),
            _ => (
                spectral_moment(&spectrum, 0),
                spectral_moment(&spectrum, 1),
                spectral_moment(&spectrum, 2),
            ),
        };
        let ok =
            m0 == n2 && m1.abs() <= 1e-6 && (m2 - expected2).abs() <= 1e-6 * expected2.max(1.0);
        log.check(
            "trace",
            ok,
            format!("moments ({n2}, 0, {expected2})"),
            format!("({m0}, {m1}, {m2})"),
        );
    }
    if log.wants("character-oracle") && g.is_abelian() && !inject_fault {
        let square = direct_square(g)?;
        let oracle =
            abelian_cayley_spectrum_with(&square, connection_set_sh(g, h).elements(), exec)?;
        log.check("character-oracle", oracle == spectrum, &oracle, &spectrum);
    }
    Ok(Some(spectrum))
}

fn check_group(entry: &CorpusGroup, exec: Execution, filter: Option<&str>) -> Vec<Event> {
    let mut log = Log::new(filter);
    if let Err(e) = run_group_checks(entry, exec, &mut log) {
        log.filter = None;
        log.check("construction", false, "group-level checks run", e);
    }
    log.events
}

fn run_group_checks(entry: &CorpusGroup, exec: Execution, log: &mut Log<'_>) -> Result<()> {
    let g = &entry.group;
    let n = g.order();
    let subgroups = all_subgroups(g)?;
    let parts = atoms(g);
    if log.wants("atoms") {
        let mut seen = vec![0usize; n];
        for part in &parts {
            for &x in part {
                seen[x] += 1;
            }
        }
        let partition = seen.iter().all(|&c| c == 1);
        let consistent = parts
            .iter()
            .all(|p| p.iter().all(|&x| atom(g, x) == *p) && is_eulerian(g, p));
        log.check(
            "atoms",
            partition && consistent,
            "atoms partition G",
            partition && consistent,
        );
    }
    if log.wants("normal-complement") {
        let candidates = subgroups
            .iter()
            .map(|h| h.elements().to_vec())
            .chain(parts.iter().cloned());
        let dual = candidates
            .into_iter()
            .all(|s| is_normal_set(g, &s) == is_normal_set(g, &complement(g, &s)));
        log.check("normal-complement", dual, "S normal ⇔ G∖S normal", dual);
    }
    if log.wants("kernel-sum") && g.is_abelian() {
        let table = character_table(g)?;
        let whole: Vec<usize> = g.elements().collect();
        let mut ok = true;
        for chi in &table {
            let total = char_sum(chi, &whole).as_integer();
            ok &= total == Some(if chi.is_trivial() { n as i64 } else { 0 });
            for h in &subgroups {
                let expected = if chi.is_trivial_on(h.elements()) {
                    h.order() as i64
                } else {
                    0
                };
                ok &= char_sum(chi, h.elements()).as_integer() == Some(expected);
            }
        }
        log.check(
            "kernel-sum",
            ok,
            "χ(H) ∈ {|H|, 0} by kernel containment",
            ok,
        );
    }
    if log.wants("srg") && n >= MIN_THEOREM_ORDER {
        let trivial = subgroup_generated(g, &[])?;
        let gamma = gamma_graph(g, &trivial)?;
        let expected = (n * n, 3 * n - 3, Some(n), vec![6]);
        match qsrg_parameters_with(gamma.adjacency(), exec) {
            Ok(p) => {
                let got = (p.vertex_count, p.degree, p.a, p.c_set.clone());
                log.check(
                    "srg",
                    got == expected,
                    format!("{expected:?}"),
                    format!("{got:?}"),
                );
            }
            Err(e) => log.check("srg", false, format!("{expected:?}"), e),
        }
    }
    Ok(())
}
