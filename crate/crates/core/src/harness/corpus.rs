use crate::error::Result;
use crate::group::{all_subgroups, FiniteGroup, GroupFamilySpec, Subgroup};

/// Largest `|G|` for which `Γ_H(G)` is built (256 vertices).
pub const HARD_ORDER_BOUND: usize = 16;
/// Default bound for `verify`.
pub const DEFAULT_VERIFY_ORDER: usize = 12;

#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: String,
    pub spec: GroupFamilySpec,
    pub group: FiniteGroup,
}

impl CorpusGroup {
    pub fn new(spec: GroupFamilySpec) -> Result<Self> {
        let group = spec.build()?;
        Ok(CorpusGroup {
            name: spec.to_string(),
            spec,
            group,
        })
    }

    /// Proper non-trivial subgroups in enumeration order.
    pub fn proper_subgroups(&self) -> Result<Vec<Subgroup>> {
        Ok(all_subgroups(&self.group)?
            .into_iter()
            .filter(Subgroup::is_proper_nontrivial)
            .collect())
    }
}

/// Invariant-factor lists `m₁ ≥ m₂ ≥ … ≥ 2` with `m_{i+1} | m_i` and
/// product `n`; one per abelian group of order `n`.
pub fn invariant_factor_lists(n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            out.push(prefix.clone());
            return;
        }
        // Dead ends (a remainder no divisor of `cap` can finish) emit nothing.
        for m in (2..=cap.min(remaining)).rev() {
            if remaining.is_multiple_of(m) && cap.is_multiple_of(m) {
                prefix.push(m);
                go(remaining / m, m, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n == 1 {
        return vec![Vec::new()];
    }
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn abelian_spec(factors: &[usize]) -> GroupFamilySpec {
    let mut it = factors.iter().map(|&m| GroupFamilySpec::Cyclic(m));
    let first = it.next().unwrap_or(GroupFamilySpec::Cyclic(1));
    it.fold(first, GroupFamilySpec::product)
}

/// The built-in corpus up to `max_order`: one abelian group per
/// isomorphism class (invariant-factor form), the dihedral groups `D_m`
/// with `m ≥ 3`, and `S3`. Sorted by spec string.
pub fn corpus(max_order: usize) -> Result<Vec<CorpusGroup>> {
    let mut specs = Vec::new();
    for n in 2..=max_order {
        for factors in invariant_factor_lists(n) {
            specs.push(abelian_spec(&factors));
        }
    }
    for m in 3..=max_order / 2 {
        specs.push(GroupFamilySpec::Dihedral(m));
    }
    if max_order >= 6 {
        specs.push(GroupFamilySpec::Symmetric(3));
    }
    let mut groups: Vec<CorpusGroup> = specs
        .into_iter()
        .map(CorpusGroup::new)
        .collect::<Result<_>>()?;
    groups.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(groups)
}
