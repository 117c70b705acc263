use std::collections::BTreeSet;

use super::{Element, FiniteGroup};
use crate::error::{Error, Result};

/// Default bound on `|G|` for exhaustive subgroup enumeration.
pub const SUBGROUP_ENUMERATION_BOUND: usize = 24;

/// A subgroup `H ≤ G`, stored as its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<Element>,
    parent_order: usize,
    is_normal: bool,
}

impl Subgroup {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// `|H|`
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `[G:H]`
    pub fn index(&self) -> usize {
        self.parent_order / self.elements.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn contains(&self, g: Element) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.parent_order
    }

    pub fn is_proper_nontrivial(&self) -> bool {
        !self.is_trivial() && !self.is_full()
    }

    /// Membership mask over the parent group.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.parent_order];
        for &h in &self.elements {
            mask[h] = true;
        }
        mask
    }

    /// Builds the subgroup from an element set already known to be closed.
    pub(crate) fn from_closed_set(group: &FiniteGroup, mut elements: Vec<Element>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let is_normal = super::is_normal_set(group, &elements);
        Subgroup {
            elements,
            parent_order: group.order(),
            is_normal,
        }
    }
}

/// Smallest subgroup containing `generators`.
pub fn subgroup_generated(group: &FiniteGroup, generators: &[Element]) -> Result<Subgroup> {
    for &g in generators {
        group.check_element(g)?;
    }
    Ok(Subgroup::from_closed_set(group, closure(group, generators)))
}

fn closure(group: &FiniteGroup, generators: &[Element]) -> Vec<Element> {
    let mut inside = vec![false; group.order()];
    let mut members = vec![group.identity()];
    inside[group.identity()] = true;
    let mut cursor = 0;
    // In a finite group the monoid generated by a set is already a group.
    while cursor < members.len() {
        let x = members[cursor];
        cursor += 1;
        for &g in generators {
            let y = group.mul(x, g);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
    }
    members
}

/// Every subgroup of `group`, sorted by `(order, elements)`.
pub fn all_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    all_subgroups_bounded(group, SUBGROUP_ENUMERATION_BOUND)
}

/// Enumerates subgroups by closing cyclic subgroups under pairwise joins.
pub fn all_subgroups_bounded(group: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if group.order() > bound {
        return Err(Error::OrderBoundExceeded {
            order: group.order(),
            bound,
        });
    }

    let mut found: BTreeSet<Vec<Element>> = BTreeSet::new();
    for g in group.elements() {
        let mut c = closure(group, &[g]);
        c.sort_unstable();
        found.insert(c);
    }

    let mut frontier: Vec<Vec<Element>> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let current: Vec<Vec<Element>> = found.iter().cloned().collect();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &current {
                if is_subset(a, b) || is_subset(b, a) {
                    continue;
                }
                let gens: Vec<Element> = a.iter().chain(b.iter()).copied().collect();
                let mut joined = closure(group, &gens);
                joined.sort_unstable();
                if !found.contains(&joined) {
                    found.insert(joined.clone());
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }

    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|elements| Subgroup::from_closed_set(group, elements))
        .collect();
    subgroups.sort_by(|x, y| {
        x.order()
            .cmp(&y.order())
            .then_with(|| x.elements.cmp(&y.elements))
    });
    Ok(subgroups)
}

fn is_subset(a: &[Element], b: &[Element]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}
