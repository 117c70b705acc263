use proptest::prelude::*;

use qsrg_core::adjacency::Adjacency;
use qsrg_core::cayley::{gamma_graph, verify_component_isomorphisms, zero_eigenvector_witness};
use qsrg_core::characters::CyclotomicInt;
use qsrg_core::group::{
    atoms, complement, is_eulerian, is_normal_set, subgroup_generated, FiniteGroup, GroupFamilySpec,
};
use qsrg_core::qsrg::common_neighbors;
use qsrg_core::spectrum::{
    full_spectrum, integer_multiplicity, integer_multiplicity_bareiss, spectral_moment, IntMatrix,
};

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..=16).prop_map(GroupFamilySpec::Cyclic),
        (3usize..=8).prop_map(GroupFamilySpec::Dihedral),
        Just(GroupFamilySpec::Symmetric(3)),
        Just(GroupFamilySpec::Symmetric(4)),
        ((1usize..=4), (1usize..=4)).prop_map(|(a, b)| GroupFamilySpec::product(
            GroupFamilySpec::Cyclic(a),
            GroupFamilySpec::Cyclic(b)
        )),
    ]
    .prop_map(|spec| spec.build().unwrap())
}

fn group_with_mask() -> impl Strategy<Value = (FiniteGroup, Vec<bool>)> {
    small_group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(any::<bool>(), n))
    })
}

/// Group of order at most 8 (Γ_H at most 64 vertices) plus one generator.
fn gamma_instance() -> impl Strategy<Value = (FiniteGroup, usize)> {
    prop_oneof![
        (5usize..=8).prop_map(GroupFamilySpec::Cyclic),
        (3usize..=4).prop_map(GroupFamilySpec::Dihedral),
        Just(GroupFamilySpec::product(
            GroupFamilySpec::Cyclic(4),
            GroupFamilySpec::Cyclic(2)
        )),
    ]
    .prop_flat_map(|spec| {
        let g = spec.build().unwrap();
        let n = g.order();
        (Just(g), 0..n)
    })
}

fn random_graph() -> impl Strategy<Value = Adjacency> {
    (2usize..=14).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            Adjacency::from_fn(n, |u, v| u != v && bits[u.min(v) * n + u.max(v)])
        })
    })
}

fn subset(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn atoms_partition_the_group(g in small_group()) {
        let parts = atoms(&g);
        let mut seen = vec![0; g.order()];
        for part in &parts {
            prop_assert!(is_eulerian(&g, part));
            for &x in part {
                seen[x] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn normal_sets_have_normal_complements((g, mask) in group_with_mask()) {
        let s = subset(&mask);
        prop_assert_eq!(is_normal_set(&g, &s), is_normal_set(&g, &complement(&g, &s)));
    }

    #[test]
    fn cyclotomic_form_matches_complex_value(
        modulus in 1usize..=24,
        exponents in prop::collection::vec(0usize..48, 0..20),
    ) {
        let z = CyclotomicInt::from_exponents(modulus, exponents.iter().copied());
        let direct: num_complex::Complex64 = exponents
            .iter()
            .map(|&e| num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / modulus as f64))
            .sum();
        prop_assert!((z.to_complex() - direct).norm() < 1e-9);
        // For N > 1 the N-th roots of unity sum to zero.
        if modulus > 1 {
            let padded = CyclotomicInt::from_exponents(modulus, exponents.iter().copied().chain(0..modulus));
            prop_assert_eq!(padded, z);
        }
    }

    #[test]
    fn spectrum_moments_match_the_graph(adj in random_graph()) {
        let s = full_spectrum(&IntMatrix::from(&adj)).unwrap();
        let n = adj.vertex_count() as f64;
        prop_assert_eq!(s.dimension(), adj.vertex_count());
        prop_assert!((spectral_moment(&s, 0) - n).abs() < 1e-9);
        prop_assert!(spectral_moment(&s, 1).abs() < 1e-6);
        prop_assert!((spectral_moment(&s, 2) - 2.0 * adj.edge_count() as f64).abs() < 1e-6);
    }

    #[test]
    fn certified_nullity_equals_bareiss(adj in random_graph(), lambda in -3i64..=3) {
        let m = IntMatrix::from(&adj);
        prop_assert_eq!(integer_multiplicity(&m, lambda), integer_multiplicity_bareiss(&m, lambda));
    }

    #[test]
    fn bitset_common_neighbours_match_brute_force(adj in random_graph()) {
        let n = adj.vertex_count();
        for u in 0..n {
            for v in u + 1..n {
                let brute = (0..n).filter(|&w| adj.get(u, w) && adj.get(v, w)).count();
                prop_assert_eq!(common_neighbors(&adj, u, v), brute);
            }
        }
    }

    #[test]
    fn table_text_round_trip(g in small_group()) {
        let back = FiniteGroup::parse_table_text(&g.to_table_text()).unwrap();
        prop_assert_eq!(back.order(), g.order());
        for a in g.elements() {
            prop_assert_eq!(back.row(a), g.row(a));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gamma_is_regular_of_degree_three_times_outside((g, x) in gamma_instance()) {
        let h = subgroup_generated(&g, &[x]).unwrap();
        let gamma = gamma_graph(&g, &h).unwrap();
        let adj = gamma.adjacency();
        prop_assert!(adj.is_symmetric() && !adj.has_loops());
        prop_assert_eq!(adj.regular_degree(), Some(3 * (g.order() - h.order())));
    }

    #[test]
    fn component_maps_hold_for_every_subgroup((g, x) in gamma_instance()) {
        let h = subgroup_generated(&g, &[x]).unwrap();
        prop_assert!(verify_component_isomorphisms(&g, &h).unwrap().holds());
    }

    #[test]
    fn zero_witness_is_null_when_h_has_an_element_of_order_three_or_more((g, x) in gamma_instance()) {
        let h = subgroup_generated(&g, &[x]).unwrap();
        prop_assume!(h.order() > 2 && h.elements().iter().any(|&e| g.element_order(e) >= 3));
        let v = zero_eigenvector_witness(&g, &h).unwrap();
        let m = IntMatrix::from(gamma_graph(&g, &h).unwrap().adjacency());
        prop_assert!(m.mul_vec(&v).iter().all(|&y| y == 0));
    }
}
