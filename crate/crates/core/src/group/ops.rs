use super::{Element, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Default bound on `|G|` for building `G × G` (256 vertices).
pub const DIRECT_SQUARE_BOUND: usize = 16;

fn mask_of(n: usize, set: &[Element]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &s in set {
        mask[s] = true;
    }
    mask
}

/// True iff `g S g⁻¹ = S` for every `g`.
pub fn is_normal_set(group: &FiniteGroup, set: &[Element]) -> bool {
    let mask = mask_of(group.order(), set);
    group
        .elements()
        .all(|g| set.iter().all(|&s| mask[group.conjugate(g, s)]))
}

/// `G ∖ S`, sorted.
pub fn complement(group: &FiniteGroup, set: &[Element]) -> Vec<Element> {
    let mask = mask_of(group.order(), set);
    group.elements().filter(|&g| !mask[g]).collect()
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The generators of `⟨g⟩`: `{g^k : gcd(k, o(g)) = 1}`, sorted.
pub fn atom(group: &FiniteGroup, g: Element) -> Vec<Element> {
    let order = group.element_order(g);
    let mut out = Vec::new();
    let mut x = g;
    for k in 1..=order {
        if gcd(k, order) == 1 {
            out.push(x);
        }
        x = group.mul(x, g);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The atoms of `group`, each sorted, ordered by smallest member.
pub fn atoms(group: &FiniteGroup) -> Vec<Vec<Element>> {
    let mut covered = vec![false; group.order()];
    let mut out = Vec::new();
    for g in group.elements() {
        if covered[g] {
            continue;
        }
        let a = atom(group, g);
        for &x in &a {
            covered[x] = true;
        }
        out.push(a);
    }
    out
}

/// True iff `S` is a union of atoms.
pub fn is_eulerian(group: &FiniteGroup, set: &[Element]) -> bool {
    let mask = mask_of(group.order(), set);
    set.iter()
        .all(|&s| atom(group, s).into_iter().all(|x| mask[x]))
}

/// `G₁ × G₂` with `index(g₁, g₂) = index(g₁)·|G₂| + index(g₂)`.
pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> FiniteGroup {
    let (n1, n2) = (left.order(), right.order());
    let n = n1 * n2;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (a1, a2) = (a / n2, a % n2);
        for b in 0..n {
            let (b1, b2) = (b / n2, b % n2);
            table.push(left.mul(a1, b1) * n2 + right.mul(a2, b2));
        }
    }
    let labels = (0..n)
        .map(|a| format!("({},{})", left.label(a / n2), right.label(a % n2)))
        .collect();
    FiniteGroup::from_flat_table(n, table, Some(labels))
        .expect("direct product of groups is a group")
}

/// `G × G`, guarded by [`DIRECT_SQUARE_BOUND`].
pub fn direct_square(group: &FiniteGroup) -> Result<FiniteGroup> {
    direct_square_bounded(group, DIRECT_SQUARE_BOUND)
}

pub fn direct_square_bounded(group: &FiniteGroup, bound: usize) -> Result<FiniteGroup> {
    if group.order() > bound {
        return Err(Error::OrderBoundExceeded {
            order: group.order(),
            bound,
        });
    }
    Ok(direct_product(group, group))
}

/// `G / H` on cosets ordered by their minimal representative.
pub fn quotient(group: &FiniteGroup, subgroup: &Subgroup) -> Result<FiniteGroup> {
    quotient_with_representatives(group, subgroup).map(|(q, _, _)| q)
}

/// Returns the quotient together with the representative of each coset and
/// the coset index of each element of `group`.
pub(crate) fn quotient_with_representatives(
    group: &FiniteGroup,
    subgroup: &Subgroup,
) -> Result<(FiniteGroup, Vec<Element>, Vec<usize>)> {
    if !subgroup.is_normal() {
        return Err(Error::NotNormal);
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in group.elements() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(g);
        for &h in subgroup.elements() {
            coset_of[group.mul(g, h)] = idx;
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[group.mul(a, b)]);
        }
    }
    let labels = reps
        .iter()
        .map(|&r| format!("{}H", group.label(r)))
        .collect();
    let quotient = FiniteGroup::from_flat_table(q, table, Some(labels))?;
    Ok((quotient, reps, coset_of))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{all_subgroups, subgroup_generated, GroupFamilySpec};

    fn build(spec: &str) -> FiniteGroup {
        spec.parse::<GroupFamilySpec>().unwrap().build().unwrap()
    }

    fn is_isomorphic_to_cyclic(g: &FiniteGroup) -> bool {
        g.elements().any(|x| g.element_order(x) == g.order())
    }

    #[test]
    fn normal_sets() {
        let s3 = build("S3");
        let nonid = complement(&s3, &[s3.identity()]);
        assert!(is_normal_set(&s3, &nonid));
        assert!(!is_normal_set(&s3, &[1]));
        let z6 = build("Z6");
        assert!(is_normal_set(&z6, &[1]));
        assert!(is_normal_set(&z6, &[1, 2, 5]));
    }

    #[test]
    fn atoms_of_z6() {
        let z6 = build("Z6");
        assert_eq!(atom(&z6, 2), vec![2, 4]);
        assert_eq!(atom(&z6, 1), vec![1, 5]);
        assert_eq!(atom(&z6, 0), vec![0]);
        assert_eq!(atoms(&z6), vec![vec![0], vec![1, 5], vec![2, 4], vec![3]]);
    }

    #[test]
    fn eulerian_sets() {
        let z6 = build("Z6");
        assert!(is_eulerian(&z6, &[1, 5]));
        assert!(!is_eulerian(&z6, &[1]));
        let z8 = build("Z8");
        let h = subgroup_generated(&z8, &[2]).unwrap();
        let outside = complement(&z8, h.elements());
        assert_eq!(outside, vec![1, 3, 5, 7]);
        assert!(is_eulerian(&z8, &outside));
        // Atoms of Z8 enumerated directly.
        assert_eq!(
            atoms(&z8),
            vec![vec![0], vec![1, 3, 5, 7], vec![2, 6], vec![4]]
        );
    }

    #[test]
    fn direct_squares() {
        let z2 = build("Z2");
        let v4 = direct_square(&z2).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
        assert!(v4.elements().all(|x| v4.element_order(x) <= 2));

        assert_eq!(direct_square(&build("Z6")).unwrap().order(), 36);
        let s3sq = direct_square(&build("S3")).unwrap();
        assert_eq!(s3sq.order(), 36);
        assert!(!s3sq.is_abelian());

        assert!(matches!(
            direct_square(&build("Z17")),
            Err(Error::OrderBoundExceeded {
                order: 17,
                bound: 16
            })
        ));
    }

    #[test]
    fn direct_square_contains_axis_and_diagonal_copies() {
        let g = build("S3");
        let n = g.order();
        let sq = direct_square(&g).unwrap();
        let first: Vec<Element> = (0..n).map(|a| a * n + g.identity()).collect();
        let second: Vec<Element> = (0..n).map(|a| g.identity() * n + a).collect();
        let diagonal: Vec<Element> = (0..n).map(|a| a * n + a).collect();
        for set in [first, second, diagonal] {
            let h = subgroup_generated(&sq, &set).unwrap();
            assert_eq!(h.order(), n);
            let mut sorted = set.clone();
            sorted.sort_unstable();
            assert_eq!(h.elements(), &sorted[..]);
        }
    }

    #[test]
    fn quotients() {
        let z6 = build("Z6");
        let h2 = subgroup_generated(&z6, &[3]).unwrap();
        let q = quotient(&z6, &h2).unwrap();
        assert_eq!(q.order(), 3);
        assert!(is_isomorphic_to_cyclic(&q));

        let h3 = subgroup_generated(&z6, &[2]).unwrap();
        assert_eq!(quotient(&z6, &h3).unwrap().order(), 2);

        let s3 = build("S3");
        let b = subgroup_generated(&s3, &[1]).unwrap();
        assert!(matches!(quotient(&s3, &b), Err(Error::NotNormal)));
    }

    #[test]
    fn quotient_orders_and_abelian_closure() {
        for spec in ["Z12", "D6", "Z4xZ2", "S4", "D4xZ2"] {
            let g = build(spec);
            for h in all_subgroups(&g).unwrap().iter().filter(|h| h.is_normal()) {
                let q = quotient(&g, h).unwrap();
                assert_eq!(q.order(), h.index(), "{spec}");
                if g.is_abelian() {
                    assert!(q.is_abelian());
                }
            }
        }
    }
}
