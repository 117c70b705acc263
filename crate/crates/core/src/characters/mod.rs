//! Characters of finite abelian groups with exact root-of-unity values.
//!
//! For abelian `G` the eigenvalues of `Cay(G, S)` are exactly the character
//! sums `χ(S)`, which gives a spectral oracle independent of any matrix
//! computation.

mod cyclotomic;

use std::collections::BTreeMap;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicInt};

use crate::cayley::validate_connection_set;
use crate::error::{Error, Result};
use crate::group::{
    quotient_with_representatives, subgroup_generated, Element, FiniteGroup, Subgroup,
};
use crate::par::{self, Execution};
use crate::spectrum::{SpectralValue, Spectrum, SpectrumEntry, CLUSTER_TOLERANCE};

/// An explicit isomorphism `G → Z_{m₁} × ⋯ × Z_{m_r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianDecomposition {
    cyclic_orders: Vec<usize>,
    generators: Vec<Element>,
    coordinates: Vec<Vec<usize>>,
}

impl AbelianDecomposition {
    pub fn cyclic_orders(&self) -> &[usize] {
        &self.cyclic_orders
    }

    /// `generators[i]` maps to the `i`-th unit vector.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn coordinates(&self, g: Element) -> &[usize] {
        &self.coordinates[g]
    }

    /// `lcm(m₁, …, m_r)`, the exponent of the group.
    pub fn exponent(&self) -> usize {
        self.cyclic_orders.iter().fold(1, |acc, &m| lcm(acc, m))
    }

    /// Checks bijectivity and `coord(gh) = coord(g) + coord(h)` on all pairs.
    pub fn is_isomorphism(&self, group: &FiniteGroup) -> bool {
        let n = group.order();
        if self.coordinates.len() != n || self.cyclic_orders.iter().product::<usize>() != n {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        if !self.coordinates.iter().all(|c| seen.insert(c.clone())) {
            return false;
        }
        group.elements().all(|g| {
            group.elements().all(|h| {
                let gh = &self.coordinates[group.mul(g, h)];
                self.cyclic_orders
                    .iter()
                    .enumerate()
                    .all(|(i, &m)| gh[i] == (self.coordinates[g][i] + self.coordinates[h][i]) % m)
            })
        })
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Splits off the cyclic subgroup of a maximal-order element and recurses
/// on the quotient.
pub fn decompose_abelian(group: &FiniteGroup) -> Result<AbelianDecomposition> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let (cyclic_orders, generators) = split(group)?;
    let coordinates = coordinates_from_generators(group, &cyclic_orders, &generators);
    let decomposition = AbelianDecomposition {
        cyclic_orders,
        generators,
        coordinates,
    };
    debug_assert!(decomposition.is_isomorphism(group));
    Ok(decomposition)
}

fn split(group: &FiniteGroup) -> Result<(Vec<usize>, Vec<Element>)> {
    if group.order() == 1 {
        return Ok((Vec::new(), Vec::new()));
    }
    let g = group
        .elements()
        .max_by_key(|&x| (group.element_order(x), std::cmp::Reverse(x)))
        .expect("non-empty group");
    let m = group.element_order(g);
    let cyclic = subgroup_generated(group, &[g])?;
    let (quotient, reps, _) = quotient_with_representatives(group, &cyclic)?;
    let (q_orders, q_gens) = split(&quotient)?;

    let mut orders = vec![m];
    let mut gens = vec![g];
    for (&r, &q) in q_orders.iter().zip(&q_gens) {
        let y = reps[q];
        // A lift of order r exists because ⟨g⟩ is a direct factor.
        let lift = cyclic
            .elements()
            .iter()
            .map(|&c| group.mul(y, c))
            .find(|&x| group.element_order(x) == r)
            .expect("maximal cyclic subgroup has a complement");
        orders.push(r);
        gens.push(lift);
    }
    Ok((orders, gens))
}

fn coordinates_from_generators(
    group: &FiniteGroup,
    orders: &[usize],
    gens: &[Element],
) -> Vec<Vec<usize>> {
    let mut coordinates = vec![Vec::new(); group.order()];
    let mut tuple = vec![0usize; orders.len()];
    loop {
        let element = tuple
            .iter()
            .zip(gens)
            .fold(group.identity(), |acc, (&x, &g)| {
                group.mul(acc, group.pow(g, x))
            });
        coordinates[element] = tuple.clone();
        // Odometer increment, last coordinate fastest.
        let mut i = orders.len();
        loop {
            if i == 0 {
                return coordinates;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < orders[i] {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// A linear character `g ↦ exp(2πi·Σ aᵢxᵢ/mᵢ)`.
///
/// Values are stored as exponents `e(g)` of a primitive `N`-th root of
/// unity, `N` the group exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianCharacter {
    frequency: Vec<usize>,
    modulus: usize,
    exponents: Vec<usize>,
}

impl AbelianCharacter {
    pub fn frequency(&self) -> &[usize] {
        &self.frequency
    }

    /// `N`: every value is an `N`-th root of unity.
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// `e` with `χ(g) = ζ_N^e`.
    pub fn exponent(&self, g: Element) -> usize {
        self.exponents[g]
    }

    /// `χ(g)` as the reduced fraction `p/q` of a full turn.
    pub fn value_turns(&self, g: Element) -> (usize, usize) {
        let e = self.exponents[g];
        let d = gcd(e, self.modulus);
        (e / d, self.modulus / d)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// True when every element of `set` lies in the kernel.
    pub fn is_trivial_on(&self, set: &[Element]) -> bool {
        set.iter().all(|&h| self.exponents[h] == 0)
    }

    pub fn degree(&self) -> usize {
        1
    }
}

/// All `|G|` characters, frequencies in lexicographic order (trivial first).
pub fn character_table(group: &FiniteGroup) -> Result<Vec<AbelianCharacter>> {
    let decomposition = decompose_abelian(group)?;
    Ok(characters_of(group, &decomposition))
}

fn characters_of(
    group: &FiniteGroup,
    decomposition: &AbelianDecomposition,
) -> Vec<AbelianCharacter> {
    let orders = decomposition.cyclic_orders();
    let modulus = decomposition.exponent();
    let mut out = Vec::with_capacity(group.order());
    let mut freq = vec![0usize; orders.len()];
    loop {
        let exponents = group
            .elements()
            .map(|g| {
                let x = decomposition.coordinates(g);
                orders
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| freq[i] * x[i] * (modulus / m))
                    .sum::<usize>()
                    % modulus
            })
            .collect();
        out.push(AbelianCharacter {
            frequency: freq.clone(),
            modulus,
            exponents,
        });
        let mut i = orders.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            freq[i] += 1;
            if freq[i] < orders[i] {
                break;
            }
            freq[i] = 0;
        }
    }
}

/// `χ(S) = Σ_{s ∈ S} χ(s)`, exactly.
pub fn char_sum(chi: &AbelianCharacter, set: &[Element]) -> CyclotomicInt {
    CyclotomicInt::from_exponents(chi.modulus, set.iter().map(|&s| chi.exponents[s]))
}

/// `|G|·⟨χ, ψ⟩ = Σ_g χ(g)·conj(ψ(g))`, exactly.
pub fn inner_product_scaled(chi: &AbelianCharacter, psi: &AbelianCharacter) -> CyclotomicInt {
    assert_eq!(chi.modulus, psi.modulus);
    let n = chi.modulus;
    CyclotomicInt::from_exponents(
        n,
        chi.exponents
            .iter()
            .zip(&psi.exponents)
            .map(|(&a, &b)| (a + n - b) % n),
    )
}

pub fn abelian_cayley_spectrum(group: &FiniteGroup, set: &[Element]) -> Result<Spectrum> {
    abelian_cayley_spectrum_with(group, set, Execution::default())
}

/// The multiset `{χ(S) : χ ∈ Irr(G)}`. Equal values are grouped by their
/// exact cyclotomic form; integer values are reported exactly.
pub fn abelian_cayley_spectrum_with(
    group: &FiniteGroup,
    set: &[Element],
    exec: Execution,
) -> Result<Spectrum> {
    let table = character_table(group)?;
    validate_connection_set(group, set)?;
    let sums = par::map(exec, &table, |chi| char_sum(chi, set));
    let mut classes: BTreeMap<CyclotomicInt, usize> = BTreeMap::new();
    for s in sums {
        *classes.entry(s).or_default() += 1;
    }
    let entries = classes
        .into_iter()
        .map(|(value, multiplicity)| SpectrumEntry {
            value: match value.as_integer() {
                Some(v) => SpectralValue::Exact(v),
                None => SpectralValue::Approx(value.to_complex().re),
            },
            multiplicity,
        });
    Ok(Spectrum::new(
        entries,
        CLUSTER_TOLERANCE * (set.len() as f64).max(1.0),
    ))
}

/// Number of ordered pairs `(χᵢ, χⱼ)` of characters, both non-trivial on
/// `H`, whose product is trivial on `H`. Equals `ℓ(n − ℓ)`.
pub fn fixed_dim_sum_check(group: &FiniteGroup, subgroup: &Subgroup) -> Result<usize> {
    let table = character_table(group)?;
    let h = subgroup.elements();
    let nontrivial: Vec<&AbelianCharacter> = table.iter().filter(|c| !c.is_trivial_on(h)).collect();
    let count = nontrivial
        .iter()
        .map(|a| {
            nontrivial
                .iter()
                .filter(|b| {
                    h.iter()
                        .all(|&x| (a.exponents[x] + b.exponents[x]) % a.modulus == 0)
                })
                .count()
        })
        .sum();
    Ok(count)
}

/// Characters whose kernel contains `H`; there are `[G:H]` of them.
pub fn characters_trivial_on(group: &FiniteGroup, subgroup: &Subgroup) -> Result<usize> {
    Ok(character_table(group)?
        .iter()
        .filter(|c| c.is_trivial_on(subgroup.elements()))
        .count())
}
