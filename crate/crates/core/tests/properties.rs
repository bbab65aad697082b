use domipoly::families::{generate, verify_k_tree, FamilySpec};
use domipoly::oracle::{
    domination_number, domination_polynomial, domination_tally, domination_tally_with,
    Strategy as Exec,
};
use domipoly::recurrence::{d_join, d_kstar, d_union, ExpansionTerms};
use domipoly::roots::{classify_real, find_roots};
use domipoly::{Graph, Polynomial, VertexSet};
use num_bigint::BigInt;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(-50i64..50, 0..7).prop_map(|c| Polynomial::from_i64s(&c))
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

proptest! {
    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Polynomial::zero());
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), t in -6i64..6) {
        let t = BigInt::from(t);
        prop_assert_eq!((&a * &b).eval_int(&t), a.eval_int(&t) * b.eval_int(&t));
        prop_assert_eq!((&a + &b).eval_int(&t), a.eval_int(&t) + b.eval_int(&t));
    }

    #[test]
    fn json_round_trip(a in poly_strategy()) {
        prop_assert_eq!(Polynomial::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn graph_operations_keep_invariants(g in graph_strategy(7), h in graph_strategy(4), u in 0usize..7) {
        let u = u % g.n();
        prop_assert!(g.invariants_hold());
        prop_assert!(g.delete_vertex(u).unwrap().invariants_hold());
        prop_assert!(g.contract_vertex(u).unwrap().invariants_hold());
        prop_assert!(g.disjoint_union(&h).unwrap().invariants_hold());
        prop_assert!(g.join(&h).unwrap().invariants_hold());
        prop_assert!(g.corona(&h).unwrap().invariants_hold());
        prop_assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn tally_is_bounded_by_binomials(g in graph_strategy(10)) {
        let tally = domination_tally(&g).unwrap();
        for (i, &c) in tally.counts.iter().enumerate() {
            prop_assert!(c <= binomial(g.n(), i));
        }
    }

    #[test]
    fn sequential_and_parallel_agree(g in graph_strategy(12)) {
        let seq = domination_tally_with(&g, Exec::Sequential).unwrap();
        prop_assert_eq!(seq, domination_tally_with(&g, Exec::default()).unwrap());
    }

    #[test]
    fn top_coefficients_and_lowest_degree(g in graph_strategy(10)) {
        let d = domination_polynomial(&g).unwrap();
        let n = g.n();
        prop_assert_eq!(d.degree(), Some(n));
        prop_assert_eq!(d.coeff(n), BigInt::from(1));
        // every (n-1)-set dominates exactly when no vertex is isolated
        if g.degrees().iter().all(|&deg| deg > 0) {
            prop_assert_eq!(d.coeff(n - 1), BigInt::from(n));
        }
        prop_assert_eq!(d.min_degree().unwrap(), domination_number(&g).unwrap());
    }

    #[test]
    fn union_is_multiplicative(g in graph_strategy(6), h in graph_strategy(6)) {
        let (dg, dh) = (domination_polynomial(&g).unwrap(), domination_polynomial(&h).unwrap());
        let direct = domination_polynomial(&g.disjoint_union(&h).unwrap()).unwrap();
        prop_assert_eq!(direct, d_union(&dg, &dh));
    }

    #[test]
    fn join_formula(g in graph_strategy(6), h in graph_strategy(6)) {
        let (dg, dh) = (domination_polynomial(&g).unwrap(), domination_polynomial(&h).unwrap());
        let direct = domination_polynomial(&g.join(&h).unwrap()).unwrap();
        prop_assert_eq!(direct, d_join(&dg, g.n(), &dh, h.n()));
    }

    #[test]
    fn expansion_identity(g in graph_strategy(9), u in 0usize..9) {
        let u = u % g.n();
        let terms = ExpansionTerms::at(&g, u).unwrap();
        prop_assert_eq!(terms.combine(), domination_polynomial(&g).unwrap());
    }

    #[test]
    fn corona_copies_look_like_a_cone(g in graph_strategy(3), h in graph_strategy(4)) {
        let c = g.corona(&h).unwrap();
        let (n, m) = (g.n(), h.n());
        let cone = Graph::complete(1).unwrap().join(&h).unwrap();
        for i in 0..n {
            let copy: VertexSet = std::iter::once(i).chain(n + i * m..n + (i + 1) * m).collect();
            prop_assert_eq!(c.induced(copy).unwrap().is_isomorphic_small(&cone), Some(true));
        }
    }

    #[test]
    fn kstar_roots_are_conjugate_closed(k in 1usize..6, extra in 1usize..30) {
        let roots = find_roots(&d_kstar(k, k + extra).unwrap(), 1e-10).unwrap();
        prop_assert!(roots.conjugate_symmetric(1e-8));
        prop_assert!(roots.roots.iter().any(|z| z.norm() == 0.0));
        prop_assert_eq!(roots.roots.len(), k + extra);
    }
}

#[test]
fn kpath_and_kstar_edge_counts() {
    for k in 1..=5 {
        for n in k + 1..=16 {
            let expected = k * n - k * (k + 1) / 2;
            assert_eq!(
                generate(&FamilySpec::kpath(k, n)).unwrap().edge_count(),
                expected
            );
            assert_eq!(
                generate(&FamilySpec::kstar(k, n)).unwrap().edge_count(),
                expected
            );
        }
    }
}

#[test]
fn k_tree_recognition() {
    for k in 1..=5 {
        for n in k..=16 {
            assert!(
                verify_k_tree(&generate(&FamilySpec::kpath(k, n)).unwrap(), k),
                "kpath {k} {n}"
            );
            if n > k {
                assert!(verify_k_tree(
                    &generate(&FamilySpec::kstar(k, n)).unwrap(),
                    k
                ));
            }
            if n >= k + 3 {
                assert!(!verify_k_tree(
                    &generate(&FamilySpec::kcycle(k, n)).unwrap(),
                    k
                ));
                assert!(!verify_k_tree(
                    &generate(&FamilySpec::kwheel(k, n)).unwrap(),
                    k
                ));
            }
        }
    }
}

#[test]
fn kstar_degree_sequence() {
    for k in 1..=5 {
        for n in k + 1..=16 {
            let mut degrees = generate(&FamilySpec::kstar(k, n)).unwrap().degrees();
            degrees.sort_unstable();
            let mut expected = vec![k; n - k];
            expected.extend(std::iter::repeat_n(n - 1, k));
            assert_eq!(degrees, expected, "kstar {k} {n}");
        }
    }
}

// Real roots of the k-star polynomial checked against high-precision values.
#[test]
fn kstar_real_roots_reference_values() {
    let reference = [
        (30, -0.499_376_232_286_448),
        (36, -0.499_493_679_816_821_8),
        (44, -0.499_595_283_491_439_8),
    ];
    for (n, r) in reference {
        let roots = find_roots(&d_kstar(4, n).unwrap(), 1e-10).unwrap();
        let real = classify_real(&roots, 1e-8).real_roots;
        assert_eq!(real.len(), 1, "n={n}: {real:?}");
        assert!((real[0] - r).abs() < 1e-12, "n={n}: {} vs {r}", real[0]);
    }
}
