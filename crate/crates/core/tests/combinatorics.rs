use std::collections::BTreeSet;

use monodromy_core::braid::{artin_halftwist, FreeGroupAutomorphism, FreeWord};
use monodromy_core::lonne::{build_graph, relation_system};
use monodromy_core::obstruction::zero_winding_search;
use monodromy_core::{SurfaceModel, WindingFunction};
use proptest::prelude::*;

#[test]
fn graph_adjacency_is_symmetric_and_triangles_are_counted() {
    for d in 3..=8u32 {
        let g = build_graph(d).unwrap();
        let n = g.vertices().len();
        for i in 0..n {
            assert!(!g.adjacent(i, i));
            for j in 0..n {
                assert_eq!(g.adjacent(i, j), g.adjacent(j, i));
            }
        }
        let m = d as usize - 2;
        assert_eq!(g.triangles().len(), 2 * m * m, "d = {d}");
        // Every triangle's cyclic edges agree with the global edge orientation.
        let oriented: BTreeSet<(usize, usize)> = g.oriented_edges().into_iter().collect();
        for t in g.triangles() {
            for k in 0..3 {
                assert!(oriented.contains(&(t[k], t[(k + 1) % 3])), "d = {d}, triangle {t:?}");
            }
        }
        let c = relation_system(&g).counts();
        assert_eq!(c.commutation + c.braid, n * (n - 1) / 2);
        assert_eq!(c.braid, g.edges().len());
    }
}

/// Reduction by repeatedly deleting the first cancelling pair.
fn naive_reduce(mut w: Vec<i32>) -> Vec<i32> {
    while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] == -w[i + 1]) {
        w.drain(i..i + 2);
    }
    w
}

fn letters(rank: i32) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop_oneof![-rank..=-1, 1..=rank], 0..40)
}

fn braid(r: usize, gens: &[(usize, bool)]) -> FreeGroupAutomorphism {
    let factors: Vec<FreeGroupAutomorphism> = gens
        .iter()
        .map(|&(i, inv)| {
            let s = artin_halftwist(1 + i % (r - 1), r).unwrap();
            if inv {
                s.inverse()
            } else {
                s
            }
        })
        .collect();
    FreeGroupAutomorphism::product(r, &factors).unwrap()
}

proptest! {
    #[test]
    fn free_reduction_is_confluent(x in letters(3), y in letters(3)) {
        let xy: Vec<i32> = x.iter().chain(&y).copied().collect();
        let direct = FreeWord::from_letters(xy.clone());
        let naive = naive_reduce(xy);
        prop_assert_eq!(direct.letters(), naive.as_slice());
        let staged = FreeWord::from_letters(x.clone()).mul(&FreeWord::from_letters(y.clone()));
        prop_assert_eq!(&staged, &direct);
        prop_assert!(direct.mul(&direct.inverse()).is_identity());
    }

    #[test]
    fn automorphism_composition_is_associative(
        r in 3usize..=5,
        a in prop::collection::vec((0usize..4, any::<bool>()), 0..5),
        b in prop::collection::vec((0usize..4, any::<bool>()), 0..5),
        c in prop::collection::vec((0usize..4, any::<bool>()), 0..5),
    ) {
        let (a, b, c) = (braid(r, &a), braid(r, &b), braid(r, &c));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert!(left.inverse_is_exact().unwrap());
        prop_assert!(left.preserves_boundary().unwrap());
    }

    #[test]
    fn artin_relations(r in 3usize..=6, i in 1usize..5) {
        let i = 1 + (i - 1) % (r - 2);
        let s = |k: usize| artin_halftwist(k, r).unwrap();
        let lhs = FreeGroupAutomorphism::product(r, &[s(i), s(i + 1), s(i)]).unwrap();
        let rhs = FreeGroupAutomorphism::product(r, &[s(i + 1), s(i), s(i + 1)]).unwrap();
        prop_assert_eq!(lhs, rhs);
        for j in 1..r {
            if j.abs_diff(i) >= 2 {
                let ij = s(i).compose(&s(j)).unwrap();
                prop_assert_eq!(ij, s(j).compose(&s(i)).unwrap());
            }
        }
    }
}

/// The zero-winding search in a single handle succeeds within depth `2n` for every
/// modulus up to 12 and every pair of values on `a` and `b`.
#[test]
fn zero_winding_search_succeeds_for_small_moduli() {
    for n in 2..=12u32 {
        // Genus n + 1 makes (2g - 2) z = 2n z vanish mod n.
        let g = n as usize + 1;
        let s = SurfaceModel::closed(g, n).unwrap();
        for sa in 0..n as i64 {
            for sb in 0..n as i64 {
                let mut values = vec![0; 2 * g];
                values[0] = sa;
                values[1] = sb;
                let phi = WindingFunction::new(s, values, 1).unwrap();
                let (_, c, _) = zero_winding_search(&phi, 1, 2 * n as usize)
                    .unwrap_or_else(|e| panic!("n = {n}, s(a) = {sa}, s(b) = {sb}: {e}"));
                assert_eq!(c.w(), 0);
            }
        }
    }
}
