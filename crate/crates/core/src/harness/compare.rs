use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::adjacency::Adjacency;
use crate::par::{self, Execution};
use crate::spectrum::{full_spectrum_with, IntMatrix, Spectrum};
use crate::Result;

/// Cheap isomorphism invariants. Differing values certify
/// non-isomorphism; equal values prove nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphInvariants {
    /// Multiset of per-vertex triangle counts, as `count -> vertices`.
    pub triangles_per_vertex: BTreeMap<usize, usize>,
    /// Common-neighbour counts over adjacent pairs, `count -> pairs`.
    pub adjacent_common: BTreeMap<usize, usize>,
    /// Common-neighbour counts over non-adjacent distinct pairs.
    pub non_adjacent_common: BTreeMap<usize, usize>,
    pub four_cliques: usize,
}

pub fn graph_invariants(adj: &Adjacency, exec: Execution) -> GraphInvariants {
    let n = adj.vertex_count();
    let per_vertex = par::map_range(exec, n, |u| {
        let mut adjacent = BTreeMap::new();
        let mut non_adjacent = BTreeMap::new();
        let mut twice_triangles = 0;
        let mut cliques = 0;
        for v in u + 1..n {
            let c = adj.common_neighbors(u, v);
            if adj.get(u, v) {
                *adjacent.entry(c).or_insert(0) += 1;
            } else {
                *non_adjacent.entry(c).or_insert(0) += 1;
            }
        }
        for v in adj.neighbors(u) {
            twice_triangles += adj.common_neighbors(u, v);
            if v <= u {
                continue;
            }
            // Count cliques u < v < w < x once.
            let common: Vec<usize> = adj
                .neighbors(u)
                .filter(|&w| w > v && adj.get(v, w))
                .collect();
            for (i, &w) in common.iter().enumerate() {
                cliques += common[i + 1..].iter().filter(|&&x| adj.get(w, x)).count();
            }
        }
        (twice_triangles / 2, adjacent, non_adjacent, cliques)
    });
    let mut inv = GraphInvariants {
        triangles_per_vertex: BTreeMap::new(),
        adjacent_common: BTreeMap::new(),
        non_adjacent_common: BTreeMap::new(),
        four_cliques: 0,
    };
    for (t, a, na, c) in per_vertex {
        *inv.triangles_per_vertex.entry(t).or_insert(0) += 1;
        for (key, count) in a {
            *inv.adjacent_common.entry(key).or_insert(0) += count;
        }
        for (key, count) in na {
            *inv.non_adjacent_common.entry(key).or_insert(0) += count;
        }
        inv.four_cliques += c;
    }
    inv
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "invariant", rename_all = "kebab-case")]
pub enum Verdict {
    NotIsospectral,
    /// Isospectral, and the named invariant tells the graphs apart.
    IsospectralDistinguished(String),
    /// Isospectral and no implemented invariant differs.
    IsospectralIndistinguishable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NotIsospectral => write!(f, "not-isospectral"),
            Verdict::IsospectralDistinguished(name) => {
                write!(f, "isospectral+distinguished({name})")
            }
            Verdict::IsospectralIndistinguishable => write!(f, "isospectral+indistinguishable"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub left: String,
    pub right: String,
    pub left_spectrum: Spectrum,
    pub right_spectrum: Spectrum,
    pub isospectral: bool,
    pub verdict: Verdict,
    pub left_invariants: Option<GraphInvariants>,
    pub right_invariants: Option<GraphInvariants>,
}

pub fn compare_graphs(
    left: (&str, &Adjacency),
    right: (&str, &Adjacency),
    exec: Execution,
) -> Result<CompareReport> {
    let left_spectrum = full_spectrum_with(&IntMatrix::from(left.1), exec)?;
    let right_spectrum = full_spectrum_with(&IntMatrix::from(right.1), exec)?;
    let isospectral = left_spectrum == right_spectrum;
    let (verdict, li, ri) = if isospectral {
        let li = graph_invariants(left.1, exec);
        let ri = graph_invariants(right.1, exec);
        let differing = [
            (
                "triangles-per-vertex",
                li.triangles_per_vertex != ri.triangles_per_vertex,
            ),
            (
                "adjacent-common-neighbours",
                li.adjacent_common != ri.adjacent_common,
            ),
            (
                "non-adjacent-common-neighbours",
                li.non_adjacent_common != ri.non_adjacent_common,
            ),
            ("four-cliques", li.four_cliques != ri.four_cliques),
        ]
        .into_iter()
        .find(|(_, differs)| *differs);
        let verdict = match differing {
            Some((name, _)) => Verdict::IsospectralDistinguished(name.to_string()),
            None => Verdict::IsospectralIndistinguishable,
        };
        (verdict, Some(li), Some(ri))
    } else {
        (Verdict::NotIsospectral, None, None)
    };
    Ok(CompareReport {
        left: left.0.to_string(),
        right: right.0.to_string(),
        left_spectrum,
        right_spectrum,
        isospectral,
        verdict,
        left_invariants: li,
        right_invariants: ri,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::gamma_graph;
    use crate::group::{FiniteGroup, GroupFamilySpec};
    use crate::harness::analyze::parse_subgroup_generators;

    fn gamma(spec: &str, gens: &str) -> Adjacency {
        let g: FiniteGroup = spec.parse::<GroupFamilySpec>().unwrap().build().unwrap();
        let h = parse_subgroup_generators(&g, gens).unwrap();
        gamma_graph(&g, &h).unwrap().adjacency().clone()
    }

    #[test]
    fn invariants_of_k4() {
        let k4 = Adjacency::from_fn(4, |u, v| u != v);
        let inv = graph_invariants(&k4, Execution::Sequential);
        assert_eq!(inv.triangles_per_vertex, BTreeMap::from([(3, 4)]));
        assert_eq!(inv.adjacent_common, BTreeMap::from([(2, 6)]));
        assert!(inv.non_adjacent_common.is_empty());
        assert_eq!(inv.four_cliques, 1);
    }

    #[test]
    fn verdicts() {
        let z6 = gamma("Z6", "3");
        let same = compare_graphs(("a", &z6), ("b", &z6), Execution::default()).unwrap();
        assert_eq!(same.verdict, Verdict::IsospectralIndistinguishable);

        let s3 = gamma("S3", "1");
        let diff = compare_graphs(("a", &z6), ("b", &s3), Execution::default()).unwrap();
        assert_eq!(diff.verdict, Verdict::NotIsospectral);

        let z8 = gamma("Z8", "2");
        let z4z2 = gamma("Z4xZ2", "1,4");
        let pair = compare_graphs(("a", &z8), ("b", &z4z2), Execution::default()).unwrap();
        assert!(pair.isospectral);
        assert_ne!(pair.verdict, Verdict::NotIsospectral);
    }
}
