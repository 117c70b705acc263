//! Connection sets, Cayley graphs and the family `Γ_H(G)`.
//!
//! Vertices of `Cay(G, S)` are the group elements in index order, and `u ~ v`
//! iff `u·v⁻¹ ∈ S`. For `Γ_H(G)` the group is `G × G` with the pinned
//! product ordering `index(a, b) = a·n + b`.

use serde::Serialize;

use crate::adjacency::Adjacency;
use crate::error::{Error, Result};
use crate::group::{complement, direct_square, Element, FiniteGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Provenance {
    /// The full connection set `S_H`.
    Full,
    /// `(G∖H) × {1}`
    First,
    /// `{1} × (G∖H)`
    Second,
    /// The diagonal `{(g, g) : g ∈ G∖H}`.
    Diagonal,
    Custom,
}

/// The three pieces of `S_H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    First,
    Second,
    Diagonal,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::First, Component::Second, Component::Diagonal];

    fn provenance(self) -> Provenance {
        match self {
            Component::First => Provenance::First,
            Component::Second => Provenance::Second,
            Component::Diagonal => Provenance::Diagonal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSet {
    elements: Vec<Element>,
    group_order: usize,
    provenance: Provenance,
}

impl ConnectionSet {
    /// A user-supplied connection set, validated against `group`.
    pub fn custom(group: &FiniteGroup, elements: &[Element]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let set = ConnectionSet {
            elements,
            group_order: group.order(),
            provenance: Provenance::Custom,
        };
        set.validate(group)?;
        Ok(set)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn contains(&self, g: Element) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Checks `S ⊆ G ∖ {1}` and `S = S⁻¹`.
    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        validate_connection_set(group, &self.elements)?;
        if self.group_order != group.order() {
            return Err(Error::BadConnectionSet(format!(
                "set lives in a group of order {}, graph group has order {}",
                self.group_order,
                group.order()
            )));
        }
        Ok(())
    }
}

pub(crate) fn validate_connection_set(group: &FiniteGroup, set: &[Element]) -> Result<()> {
    let mut mask = vec![false; group.order()];
    for &s in set {
        if s >= group.order() {
            return Err(Error::BadConnectionSet(format!("element {s} out of range")));
        }
        mask[s] = true;
    }
    if mask[group.identity()] {
        return Err(Error::BadConnectionSet("contains the identity".into()));
    }
    if let Some(&s) = set.iter().find(|&&s| !mask[group.inverse(s)]) {
        return Err(Error::BadConnectionSet(format!(
            "not inverse-closed: {s} is present but its inverse {} is not",
            group.inverse(s)
        )));
    }
    Ok(())
}

/// `S_H` as indices into `G × G`.
pub fn connection_set_sh(group: &FiniteGroup, subgroup: &Subgroup) -> ConnectionSet {
    let mut elements: Vec<Element> = Component::ALL
        .iter()
        .flat_map(|&c| component_elements(group, subgroup, c))
        .collect();
    elements.sort_unstable();
    ConnectionSet {
        elements,
        group_order: group.order() * group.order(),
        provenance: Provenance::Full,
    }
}

/// One of `S_H^(1)`, `S_H^(2)`, `S_H^(3)` as indices into `G × G`.
pub fn connection_component(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    component: Component,
) -> ConnectionSet {
    let mut elements = component_elements(group, subgroup, component);
    elements.sort_unstable();
    ConnectionSet {
        elements,
        group_order: group.order() * group.order(),
        provenance: component.provenance(),
    }
}

fn component_elements(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    component: Component,
) -> Vec<Element> {
    let n = group.order();
    let e = group.identity();
    complement(group, subgroup.elements())
        .into_iter()
        .map(|g| match component {
            Component::First => g * n + e,
            Component::Second => e * n + g,
            Component::Diagonal => g * n + g,
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    adjacency: Adjacency,
    connection: ConnectionSet,
}

impl CayleyGraph {
    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.vertex_count()
    }

    pub fn degree(&self) -> usize {
        self.connection.len()
    }

    pub fn is_connected(&self) -> bool {
        self.adjacency.is_connected()
    }
}

/// `Cay(group, S)`.
pub fn cayley_graph(group: &FiniteGroup, connection: &ConnectionSet) -> Result<CayleyGraph> {
    connection.validate(group)?;
    let mut mask = vec![false; group.order()];
    for &s in connection.elements() {
        mask[s] = true;
    }
    let inverses = group.inverses();
    let adjacency = Adjacency::from_fn(group.order(), |u, v| mask[group.mul(u, inverses[v])]);
    Ok(CayleyGraph {
        adjacency,
        connection: connection.clone(),
    })
}

/// Which regime of the family an instance falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaCase {
    /// `H = G`: no edges.
    Edgeless,
    /// `H = {1}`: strongly regular with parameters `(n², 3n−3, n, 6)`.
    StronglyRegular,
    /// Proper non-trivial `H`.
    QuasiStronglyRegular,
}

impl GammaCase {
    pub fn of(subgroup: &Subgroup) -> Self {
        if subgroup.is_full() {
            GammaCase::Edgeless
        } else if subgroup.is_trivial() {
            GammaCase::StronglyRegular
        } else {
            GammaCase::QuasiStronglyRegular
        }
    }
}

/// Smallest group order for which the family's theorems are claimed.
pub const MIN_THEOREM_ORDER: usize = 5;

/// `Γ_H(G)` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct GammaGraph {
    pub square: FiniteGroup,
    pub subgroup: Subgroup,
    pub graph: CayleyGraph,
    pub case: GammaCase,
    /// `|G| < 5`: built, but outside the range the theorems cover.
    pub outside_preconditions: bool,
}

impl GammaGraph {
    pub fn adjacency(&self) -> &Adjacency {
        self.graph.adjacency()
    }

    /// `|G|`
    pub fn n(&self) -> usize {
        self.subgroup.parent_order()
    }

    /// `|H|`
    pub fn k(&self) -> usize {
        self.subgroup.order()
    }

    /// `[G:H]`
    pub fn ell(&self) -> usize {
        self.subgroup.index()
    }
}

/// Builds `Γ_H(G)`; `|G|` is capped by the direct-square bound.
pub fn gamma_graph(group: &FiniteGroup, subgroup: &Subgroup) -> Result<GammaGraph> {
    check_parent(group, subgroup)?;
    let square = direct_square(group)?;
    let graph = cayley_graph(&square, &connection_set_sh(group, subgroup))?;
    Ok(GammaGraph {
        square,
        subgroup: subgroup.clone(),
        graph,
        case: GammaCase::of(subgroup),
        outside_preconditions: group.order() < MIN_THEOREM_ORDER,
    })
}

/// `Γ_H^(k)(G) = Cay(G × G, S_H^(k))`.
pub fn gamma_component_graph(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    component: Component,
) -> Result<CayleyGraph> {
    check_parent(group, subgroup)?;
    let square = direct_square(group)?;
    cayley_graph(&square, &connection_component(group, subgroup, component))
}

fn check_parent(group: &FiniteGroup, subgroup: &Subgroup) -> Result<()> {
    if subgroup.parent_order() != group.order() {
        return Err(Error::InvalidIndex(format!(
            "subgroup belongs to a group of order {}, not {}",
            subgroup.parent_order(),
            group.order()
        )));
    }
    Ok(())
}

/// True iff `map` is a bijection with `A[u][v] = B[map u][map v]` for all
/// `u, v`.
pub fn is_isomorphism(map: &[usize], a: &Adjacency, b: &Adjacency) -> bool {
    let n = a.vertex_count();
    if map.len() != n || b.vertex_count() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    (0..n).all(|u| (0..n).all(|v| a.get(u, v) == b.get(map[u], map[v])))
}

/// The vertex map `α(x, y) = (y⁻¹, y⁻¹x)` on `G × G`.
pub fn alpha_map(group: &FiniteGroup) -> Vec<usize> {
    pair_map(group, |x, y| {
        let yi = group.inverse(y);
        (yi, group.mul(yi, x))
    })
}

/// The swap `(x, y) ↦ (y, x)`, carrying `Γ_H^(1)` onto `Γ_H^(2)`.
pub fn swap_map(group: &FiniteGroup) -> Vec<usize> {
    pair_map(group, |x, y| (y, x))
}

/// `(x, y) ↦ (y, y·x)`, carrying `Γ_H^(2)` onto `Γ_H^(3)`.
pub fn shear_map(group: &FiniteGroup) -> Vec<usize> {
    pair_map(group, |x, y| (y, group.mul(y, x)))
}

fn pair_map(group: &FiniteGroup, f: impl Fn(Element, Element) -> (Element, Element)) -> Vec<usize> {
    let n = group.order();
    (0..n * n)
        .map(|v| {
            let (a, b) = f(v / n, v % n);
            a * n + b
        })
        .collect()
}

/// Outcome of checking one vertex map against the component graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentMapCheck {
    pub first_to_second: bool,
    pub second_to_third: bool,
}

impl ComponentMapCheck {
    pub fn holds(&self) -> bool {
        self.first_to_second && self.second_to_third
    }
}

fn check_component_maps(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    first_map: &[usize],
    second_map: &[usize],
) -> Result<ComponentMapCheck> {
    let g1 = gamma_component_graph(group, subgroup, Component::First)?;
    let g2 = gamma_component_graph(group, subgroup, Component::Second)?;
    let g3 = gamma_component_graph(group, subgroup, Component::Diagonal)?;
    Ok(ComponentMapCheck {
        first_to_second: is_isomorphism(first_map, g1.adjacency(), g2.adjacency()),
        second_to_third: is_isomorphism(second_map, g2.adjacency(), g3.adjacency()),
    })
}

/// Exhaustively checks whether `α` maps `Γ_H^(1)` onto `Γ_H^(2)` and
/// `Γ_H^(2)` onto `Γ_H^(3)`.
///
/// `α` conjugates the second coordinate, so both parts hold when `G ∖ H` is
/// closed under conjugation; for non-normal `H` they can fail.
pub fn verify_alpha_isomorphism(
    group: &FiniteGroup,
    subgroup: &Subgroup,
) -> Result<ComponentMapCheck> {
    let alpha = alpha_map(group);
    check_component_maps(group, subgroup, &alpha, &alpha)
}

/// Checks `Γ_H^(1) ≅ Γ_H^(2) ≅ Γ_H^(3)` through [`swap_map`] and
/// [`shear_map`], which are isomorphisms for every subgroup.
pub fn verify_component_isomorphisms(
    group: &FiniteGroup,
    subgroup: &Subgroup,
) -> Result<ComponentMapCheck> {
    check_component_maps(group, subgroup, &swap_map(group), &shear_map(group))
}

/// The six-point candidate null vector of the adjacency matrix of `Γ_H(G)`
/// for `|H| > 2`.
///
/// With `h ∈ H` non-trivial and `h'` either `h⁻¹` (if `o(h) ≥ 3`) or a
/// second involution of `H`, the vector is `+1` on `(h,1), (1,h), (h',h')`,
/// `−1` on `(h',1), (1,h'), (h,h)` and `0` elsewhere. Returns `None` when
/// `|H| ≤ 2`. It is a null vector when `H` has an element of order at least
/// 3; when every non-identity element of `H` is an involution it can fail
/// (the Klein subgroup `{e, r², s, sr²}` of `D4` is an example), so callers
/// must check it.
pub fn zero_eigenvector_witness(group: &FiniteGroup, subgroup: &Subgroup) -> Option<Vec<i64>> {
    if subgroup.order() <= 2 {
        return None;
    }
    let e = group.identity();
    let nontrivial: Vec<Element> = subgroup
        .elements()
        .iter()
        .copied()
        .filter(|&h| h != e)
        .collect();
    let (h, h2) = match nontrivial.iter().find(|&&h| group.element_order(h) >= 3) {
        Some(&h) => (h, group.inverse(h)),
        None => (nontrivial[0], nontrivial[1]),
    };
    let n = group.order();
    let mut v = vec![0i64; n * n];
    for (a, b, sign) in [
        (h, e, 1),
        (e, h, 1),
        (h2, h2, 1),
        (h2, e, -1),
        (e, h2, -1),
        (h, h, -1),
    ] {
        v[a * n + b] = sign;
    }
    Some(v)
}
