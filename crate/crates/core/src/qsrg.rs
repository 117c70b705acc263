//! Common-neighbour statistics and quasi-strongly regular parameters.
//!
//! A `k`-regular graph is `QSRG(n, k, a; c₁, …, c_p)` when every adjacent
//! pair has exactly `a` common neighbours and every non-adjacent pair has
//! some `cᵢ` common neighbours; `{cᵢ}` is the c-set and `p` the grade.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::adjacency::Adjacency;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

pub type Pair = (usize, usize);

/// `|N(u) ∩ N(v)|`
pub fn common_neighbors(adj: &Adjacency, u: usize, v: usize) -> usize {
    adj.common_neighbors(u, v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QsrgParams {
    pub vertex_count: usize,
    pub degree: usize,
    /// `None` when the graph has no edges.
    pub a: Option<usize>,
    pub c_set: Vec<usize>,
    pub grade: usize,
    /// No adjacent pairs, or no non-adjacent distinct pairs.
    pub degenerate: bool,
    /// The lexicographically first non-adjacent pair attaining each `c`.
    #[serde(serialize_with = "serialize_witnesses")]
    pub witnesses: BTreeMap<usize, Pair>,
}

fn serialize_witnesses<S: Serializer>(
    w: &BTreeMap<usize, Pair>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let as_strings: BTreeMap<String, [usize; 2]> =
        w.iter().map(|(c, p)| (c.to_string(), [p.0, p.1])).collect();
    as_strings.serialize(s)
}

#[derive(Default)]
struct RowStats {
    adjacent: BTreeMap<usize, Pair>,
    nonadjacent: BTreeMap<usize, Pair>,
}

fn merge_first(into: &mut BTreeMap<usize, Pair>, from: BTreeMap<usize, Pair>) {
    for (count, pair) in from {
        into.entry(count).or_insert(pair);
    }
}

pub fn qsrg_parameters(adj: &Adjacency) -> Result<QsrgParams> {
    qsrg_parameters_with(adj, Execution::default())
}

/// Scans every pair of distinct vertices. Rows are processed independently
/// and merged in row order, so witnesses do not depend on scheduling.
pub fn qsrg_parameters_with(adj: &Adjacency, exec: Execution) -> Result<QsrgParams> {
    let n = adj.vertex_count();
    let degree = if n == 0 { 0 } else { adj.degree(0) };
    if let Some(vertex) = (0..n).find(|&u| adj.degree(u) != degree) {
        return Err(Error::NotRegular {
            vertex,
            expected: degree,
            found: adj.degree(vertex),
        });
    }
    let rows = par::map_range(exec, n, |u| {
        let mut stats = RowStats::default();
        for v in u + 1..n {
            let count = adj.common_neighbors(u, v);
            let bucket = if adj.get(u, v) {
                &mut stats.adjacent
            } else {
                &mut stats.nonadjacent
            };
            bucket.entry(count).or_insert((u, v));
        }
        stats
    });
    let mut adjacent = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for row in rows {
        merge_first(&mut adjacent, row.adjacent);
        merge_first(&mut witnesses, row.nonadjacent);
    }
    if adjacent.len() > 1 {
        let mut by_pair: Vec<(Pair, usize)> = adjacent.iter().map(|(&c, &p)| (p, c)).collect();
        by_pair.sort_unstable();
        let (first, first_count) = by_pair[0];
        let (second, second_count) = by_pair[1];
        return Err(Error::NotQsrg {
            first,
            first_count,
            second,
            second_count,
        });
    }
    let a = adjacent.keys().next().copied();
    let c_set: Vec<usize> = witnesses.keys().copied().collect();
    Ok(QsrgParams {
        vertex_count: n,
        degree,
        a,
        grade: c_set.len(),
        degenerate: a.is_none() || c_set.is_empty(),
        c_set,
        witnesses,
    })
}

/// `|G| − 2|H| + 2`; non-positive only in the edgeless case `H = G`.
pub fn predicted_a(n: usize, k: usize) -> i64 {
    n as i64 - 2 * k as i64 + 2
}

/// The c-set predicted for a proper non-trivial subgroup of order `k` and
/// index `ell`, duplicates merged.
pub fn predicted_c_set(n: usize, k: usize, ell: usize, normal: bool) -> Result<Vec<usize>> {
    if k <= 1 || k >= n || !n.is_multiple_of(k) || n / k != ell {
        return Err(Error::InvalidIndex(format!(
            "need 1 < k < n with n = k·ell, got n={n}, k={k}, ell={ell}"
        )));
    }
    let mut set = match (ell, normal, k) {
        (2, _, _) => vec![0, 2],
        (_, true, 2) => vec![2, 6],
        (_, true, _) => vec![0, 2, 6],
        (_, false, 2) => vec![2, 4, 6],
        (_, false, _) => vec![0, 2, 4, 6],
    };
    set.push(n - k);
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

/// Measured parameters set against the predictions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QsrgComparison {
    pub predicted_a: i64,
    pub a_matches: bool,
    pub predicted_c_set: Vec<usize>,
    pub c_set_matches: bool,
    /// Predicted values no non-adjacent pair attains.
    pub unattained: Vec<usize>,
    /// Measured values outside the prediction.
    pub unexpected: Vec<usize>,
}

impl QsrgComparison {
    pub fn matches(&self) -> bool {
        self.a_matches && self.c_set_matches
    }
}

pub fn compare_with_prediction(
    params: &QsrgParams,
    n: usize,
    k: usize,
    normal: bool,
) -> Result<QsrgComparison> {
    let ell = n.checked_div(k).unwrap_or(0);
    let predicted = predicted_c_set(n, k, ell, normal)?;
    let predicted_a = predicted_a(n, k);
    let unattained: Vec<usize> = predicted
        .iter()
        .copied()
        .filter(|c| !params.c_set.contains(c))
        .collect();
    let unexpected: Vec<usize> = params
        .c_set
        .iter()
        .copied()
        .filter(|c| !predicted.contains(c))
        .collect();
    Ok(QsrgComparison {
        predicted_a,
        a_matches: params.a.map(|a| a as i64) == Some(predicted_a),
        c_set_matches: unattained.is_empty() && unexpected.is_empty(),
        predicted_c_set: predicted,
        unattained,
        unexpected,
    })
}

/// The JSON report shape: parameters plus the prediction verdict.
#[derive(Clone, Debug, Serialize)]
pub struct QsrgReport {
    pub n: usize,
    pub degree: usize,
    pub a: Option<usize>,
    pub c_set: Vec<usize>,
    pub grade: usize,
    pub matches_prediction: Option<bool>,
    #[serde(serialize_with = "serialize_witnesses")]
    pub witnesses: BTreeMap<usize, Pair>,
}

impl QsrgReport {
    pub fn new(params: &QsrgParams, comparison: Option<&QsrgComparison>) -> Self {
        QsrgReport {
            n: params.vertex_count,
            degree: params.degree,
            a: params.a,
            c_set: params.c_set.clone(),
            grade: params.grade,
            matches_prediction: comparison.map(QsrgComparison::matches),
            witnesses: params.witnesses.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::gamma_graph;
    use crate::group::{subgroup_generated, FiniteGroup, GroupFamilySpec};

    fn build(spec: &str) -> FiniteGroup {
        spec.parse::<GroupFamilySpec>().unwrap().build().unwrap()
    }

    fn gamma_params(spec: &str, gens: &[usize]) -> QsrgParams {
        let g = build(spec);
        let h = subgroup_generated(&g, gens).unwrap();
        qsrg_parameters(gamma_graph(&g, &h).unwrap().adjacency()).unwrap()
    }

    fn brute_common(adj: &Adjacency, u: usize, v: usize) -> usize {
        (0..adj.vertex_count())
            .filter(|&w| adj.get(u, w) && adj.get(v, w))
            .count()
    }

    #[test]
    fn small_graphs() {
        let c4 = Adjacency::from_fn(4, |u, v| (u + 1) % 4 == v || (v + 1) % 4 == u);
        assert_eq!(common_neighbors(&c4, 0, 2), 2);
        let k5 = Adjacency::from_fn(5, |u, v| u != v);
        assert_eq!(common_neighbors(&k5, 1, 3), 3);
        let k6 = Adjacency::from_fn(6, |u, v| u != v);
        let p = qsrg_parameters(&k6).unwrap();
        assert_eq!((p.a, p.grade, p.degenerate), (Some(4), 0, true));
        assert!(p.c_set.is_empty());
    }

    #[test]
    fn z6_instances() {
        let g = build("Z6");
        let h = subgroup_generated(&g, &[3]).unwrap();
        let gamma = gamma_graph(&g, &h).unwrap();
        let adj = gamma.adjacency();
        let (u, v) = (0, adj.neighbors(0).next().unwrap());
        assert_eq!(common_neighbors(adj, u, v), brute_common(adj, u, v));
        assert_eq!(common_neighbors(adj, u, v), 4);

        let p = qsrg_parameters(adj).unwrap();
        assert_eq!((p.a, p.c_set.clone(), p.grade), (Some(4), vec![2, 4, 6], 3));
        for (&c, &(x, y)) in &p.witnesses {
            assert!(!adj.get(x, y));
            assert_eq!(brute_common(adj, x, y), c);
        }
        let p = gamma_params("Z6", &[2]);
        assert_eq!((p.a, p.c_set, p.grade), (Some(2), vec![0, 2, 3], 3));
    }

    #[test]
    fn srg_case() {
        let p = gamma_params("Z5", &[]);
        assert_eq!((p.vertex_count, p.degree, p.a), (25, 12, Some(5)));
        assert_eq!(p.c_set, vec![6]);
    }

    #[test]
    fn irregular_and_non_qsrg_graphs() {
        let path = Adjacency::from_fn(3, |u, v| u.abs_diff(v) == 1);
        assert!(matches!(
            qsrg_parameters(&path),
            Err(Error::NotRegular { vertex: 1, .. })
        ));
        // Triangular prism: triangle edges have 1 common neighbour, rungs 0.
        let prism = Adjacency::from_fn(6, |u, v| u != v && ((u / 3 == v / 3) || (u % 3 == v % 3)));
        match qsrg_parameters(&prism) {
            Err(Error::NotQsrg {
                first: (0, 1),
                first_count: 1,
                second: (0, 3),
                second_count: 0,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_a(6, 2), 4);
        assert_eq!(predicted_a(6, 3), 2);
        assert!(predicted_a(4, 4) <= 0);
        assert_eq!(predicted_c_set(6, 2, 3, true).unwrap(), vec![2, 4, 6]);
        assert_eq!(predicted_c_set(6, 3, 2, true).unwrap(), vec![0, 2, 3]);
        assert_eq!(predicted_c_set(6, 2, 3, false).unwrap(), vec![2, 4, 6]);
        assert_eq!(predicted_c_set(12, 3, 4, true).unwrap(), vec![0, 2, 6, 9]);
        assert_eq!(
            predicted_c_set(12, 3, 4, false).unwrap(),
            vec![0, 2, 4, 6, 9]
        );
        assert!(predicted_c_set(6, 4, 1, true).is_err());
    }

    #[test]
    fn comparison_reports_attainment() {
        let p = gamma_params("S3", &[1]);
        let cmp = compare_with_prediction(&p, 6, 2, false).unwrap();
        assert!(cmp.matches());
        let cmp = compare_with_prediction(&p, 6, 2, true).unwrap();
        assert!(
            cmp.matches(),
            "normal and non-normal predictions coincide at n=6, k=2"
        );
        let p = gamma_params("Z12", &[4]);
        let cmp = compare_with_prediction(&p, 12, 3, true).unwrap();
        assert!(cmp.matches(), "{cmp:?}");
    }

    #[test]
    fn report_json() {
        let p = gamma_params("Z6", &[3]);
        let json = serde_json::to_value(QsrgReport::new(&p, None)).unwrap();
        assert_eq!(json["n"], 36);
        assert_eq!(json["c_set"], serde_json::json!([2, 4, 6]));
        assert!(json["witnesses"]["6"].is_array());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = build("D4");
        let h = subgroup_generated(&g, &[4]).unwrap();
        let gamma = gamma_graph(&g, &h).unwrap();
        assert_eq!(
            qsrg_parameters_with(gamma.adjacency(), Execution::Sequential).unwrap(),
            qsrg_parameters_with(gamma.adjacency(), Execution::Parallel).unwrap()
        );
    }
}
