mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::{rank, rows};
use vecchoose::engine::{find_choice, Poly, SearchOptions};
use vecchoose::fields::FieldSpec;
use vecchoose::graphs::{parse_graph, write_graph, Graph};
use vecchoose::linalg::Subspace;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sum_and_intersection_are_lattice_bounds(p in prime(), t in 1usize..7, a in 0usize..7, b in 0usize..7, seed: u64) {
        let f = FieldSpec::prime(p).unwrap();
        let (a, b) = (a.min(t), b.min(t));
        let u = Subspace::random(f, t, a, seed).unwrap();
        let v = Subspace::random(f, t, b, seed ^ 0x9e37).unwrap();
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.intersect(&u).unwrap(), u.clone());
        prop_assert_eq!(i.sum(&u).unwrap(), u.clone());
        prop_assert_eq!(u.sum(&v).unwrap(), v.sum(&u).unwrap());
        prop_assert_eq!(u.intersect(&v).unwrap(), v.intersect(&u).unwrap());
        // (U + V)^⊥ = U^⊥ ∩ V^⊥
        prop_assert_eq!(s.orthogonal_complement(), u.orthogonal_complement().intersect(&v.orthogonal_complement()).unwrap());
        prop_assert_eq!(rank(rows(&s), p), s.dim());
    }

    #[test]
    fn rational_roots_of_products(roots in prop::collection::vec((-20i64..20, 1i64..6), 0..4), extra in 1i64..5) {
        // prod (d x - n) times x^2 + extra, which has no real root
        let mut poly = Poly::from_i64s(&[extra, 0, 1]);
        for &(n, d) in &roots {
            poly = poly.mul(&Poly::from_i64s(&[-n, d]));
        }
        let mut want: Vec<BigRational> = roots.iter().map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))).collect();
        want.sort();
        want.dedup();
        let mut got = poly.rational_roots();
        got.sort();
        prop_assert_eq!(&got, &want);
        prop_assert_eq!(poly.count_real_roots(), want.len());
    }

    #[test]
    fn graph_text_round_trip(n in 1usize..12, edges in prop::collection::vec((0usize..12, 0usize..12), 0..30)) {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            let (u, v) = (u % n, v % n);
            if u != v && !g.has_edge(u, v) {
                g.add_edge(u, v).unwrap();
            }
        }
        let text = write_graph(&g);
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn search_is_deterministic(p in prop::sample::select(vec![2u64, 3]), len in 3usize..7, seed: u64) {
        let f = FieldSpec::prime(p).unwrap();
        let g = Graph::cycle(len).unwrap();
        let subs = (0..len).map(|v| Subspace::random(f, 3, 2, seed.wrapping_add(v as u64)).unwrap()).collect();
        let a = vecchoose::engine::SubspaceAssignment::new(g, f, 3, subs).unwrap();
        let one = find_choice(&a, &SearchOptions::default()).unwrap();
        let two = find_choice(&a, &SearchOptions { threads: Some(1), ..Default::default() }).unwrap();
        prop_assert_eq!(one.to_text(), two.to_text());
        if let Some(w) = one.witness() {
            prop_assert!(common::choice_ok(&a, w));
        }
    }
}
