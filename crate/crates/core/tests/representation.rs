use monodromy_core::winding::{arf_by_count, pair_mod2};
use monodromy_core::{
    arf, evaluate, intersection, relation_holds, spin_census, stabilizes, twist_map, FramedCurveClass, HomologyClass,
    QuadraticForm, SurfaceModel, TwistWord, WindingFunction,
};
use proptest::prelude::*;

fn class(s: SurfaceModel, c: &[i64]) -> HomologyClass {
    HomologyClass::new(s, c.to_vec()).unwrap()
}

fn coeffs(rank: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, rank)
}

/// A closed genus-3 surface with a 4-spin structure.
fn phi() -> WindingFunction {
    let s = SurfaceModel::closed(3, 4).unwrap();
    WindingFunction::new(s, vec![1, 3, 0, 2, 3, 1], 1).unwrap()
}

/// Framed curves reachable from the coordinate curves of `phi` by twists, so their
/// framings are forced by the twist-linear rule rather than declared.
fn trusted_curves(phi: &WindingFunction) -> Vec<FramedCurveClass> {
    let g = phi.surface().genus();
    let mut out: Vec<FramedCurveClass> = (0..2 * g).map(|i| phi.basis_curve(i).unwrap()).collect();
    out.extend((1..g).map(|k| phi.connector(k).unwrap()));
    out
}

fn trusted_word(phi: &WindingFunction, picks: &[(usize, i64)]) -> TwistWord {
    let base = trusted_curves(phi);
    let mut w = TwistWord::empty(phi.surface());
    for &(i, k) in picks {
        w.push(base[i % base.len()].clone(), k).unwrap();
    }
    w
}

fn exps() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

proptest! {
    #[test]
    fn pairing_is_skew_and_bilinear(x in coeffs(6, 5), y in coeffs(6, 5), z in coeffs(6, 5), k in -4i64..=4) {
        let s = SurfaceModel::new(2, 2, 0).unwrap();
        let (x, y, z) = (class(s, &x), class(s, &y), class(s, &z));
        prop_assert_eq!(intersection(&x, &y).unwrap(), -intersection(&y, &x).unwrap());
        prop_assert_eq!(intersection(&x, &x).unwrap(), 0);
        let lhs = intersection(&x.scale(k).add(&y).unwrap(), &z).unwrap();
        prop_assert_eq!(lhs, k * intersection(&x, &z).unwrap() + intersection(&y, &z).unwrap());
    }

    #[test]
    fn pairing_mod_two_matches_integer_pairing(x in coeffs(8, 3), y in coeffs(8, 3)) {
        let s = SurfaceModel::closed(4, 6).unwrap();
        let (x, y) = (class(s, &x), class(s, &y));
        let p = intersection(&x, &y).unwrap().rem_euclid(2) as u8;
        prop_assert_eq!(pair_mod2(x.mod2_bits(), y.mod2_bits()), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn twists_are_symplectic(c in coeffs(8, 3), w in 0i64..6, k in -3i64..=3) {
        let s = SurfaceModel::new(3, 2, 6).unwrap();
        let t = twist_map(&FramedCurveClass::declared(class(s, &c), w), k);
        prop_assert!(t.is_symplectic());
        prop_assert!(t.compose(&t.inverse().unwrap()).unwrap().is_identity());
    }
}

proptest! {
    #[test]
    fn braid_relation_for_curves_meeting_once(c in coeffs(6, 3), w in 0i64..4, k in 0usize..6) {
        // Any class b with <a, b> = ±1 against a = e_k after adding a suitable multiple.
        let s = SurfaceModel::closed(3, 4).unwrap();
        let a = FramedCurveClass::declared(s.basis_class(k).unwrap(), 1);
        let mut bc = c.clone();
        let partner = k ^ 1;
        let p = intersection(a.h(), &class(s, &bc)).unwrap();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        bc[partner] += sign * (1 - p);
        let b = FramedCurveClass::declared(class(s, &bc), w);
        prop_assert_eq!(intersection(a.h(), b.h()).unwrap(), 1);
        let aba = TwistWord::new(s, vec![(a.clone(), 1), (b.clone(), 1), (a.clone(), 1)]).unwrap();
        let bab = TwistWord::new(s, vec![(b.clone(), 1), (a.clone(), 1), (b.clone(), 1)]).unwrap();
        prop_assert!(relation_holds(&aba, &bab).unwrap());
        // T_a T_b (a) = b on classes.
        let ab = evaluate(&TwistWord::new(s, vec![(a.clone(), 1), (b.clone(), 1)]).unwrap()).unwrap();
        prop_assert_eq!(ab.apply_class(a.h()).unwrap(), b.h().clone());
    }

    #[test]
    fn twist_powers_add(c in coeffs(6, 3), w in 0i64..4, j in -4i64..=4, k in -4i64..=4) {
        let s = SurfaceModel::closed(3, 4).unwrap();
        let c = FramedCurveClass::declared(class(s, &c), w);
        let tj = twist_map(&c, j);
        let tk = twist_map(&c, k);
        prop_assert_eq!(tj.compose(&tk).unwrap(), twist_map(&c, j + k));
        if k != 0 {
            prop_assert_eq!(evaluate(&TwistWord::single(&c, k).unwrap()).unwrap(), tk);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        p in prop::collection::vec((0usize..8, exps()), 0..8),
        q in prop::collection::vec((0usize..8, exps()), 0..8),
    ) {
        let phi = phi();
        let (u, v) = (trusted_word(&phi, &p), trusted_word(&phi, &q));
        let lhs = evaluate(&u.concat(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, evaluate(&u).unwrap().compose(&evaluate(&v).unwrap()).unwrap());
        let inv = evaluate(&u.inverse()).unwrap();
        prop_assert!(evaluate(&u).unwrap().compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn stabilizer_is_closed_under_products_and_inverses(
        moves in prop::collection::vec((0usize..8, exps()), 1..5),
        picks in prop::collection::vec((0usize..8, any::<bool>()), 1..6),
    ) {
        let phi = phi();
        let n = phi.modulus() as i64;
        let mover = evaluate(&trusted_word(&phi, &moves)).unwrap();
        // Stabilizing generators: T_c^n for any c, and T_c when w(c) = 0.
        let base = trusted_curves(&phi);
        let mut w = TwistWord::empty(phi.surface());
        for (i, full_power) in picks {
            let c = mover.apply(&base[i % base.len()]).unwrap();
            if full_power || c.w() != 0 {
                w.push(c, n).unwrap();
            } else {
                w.push(c, 1).unwrap();
            }
        }
        prop_assert!(stabilizes(&w, &phi).unwrap());
        prop_assert!(stabilizes(&w.inverse(), &phi).unwrap());
        prop_assert!(stabilizes(&w.concat(&w.inverse()).unwrap(), &phi).unwrap());
    }

    #[test]
    fn single_twist_stabilizes_iff_framing_vanishes(
        moves in prop::collection::vec((0usize..8, exps()), 0..6),
        i in 0usize..8,
    ) {
        let phi = phi();
        let base = trusted_curves(&phi);
        let c = apply(&trusted_word(&phi, &moves), &base[i % base.len()]);
        let t = TwistWord::single(&c, 1).unwrap();
        prop_assert_eq!(stabilizes(&t, &phi).unwrap(), c.w() == 0);
    }
}

fn apply(w: &TwistWord, c: &FramedCurveClass) -> FramedCurveClass {
    monodromy_core::apply_word(w, c).unwrap()
}

/// Images of the basis under a product of mod-2 transvections.
fn transvection_images(g: usize, vs: &[u64]) -> Vec<u64> {
    (0..2 * g)
        .map(|i| {
            let mut x = 1u64 << i;
            for &v in vs.iter().rev() {
                if pair_mod2(x, v) == 1 {
                    x ^= v;
                }
            }
            x
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn arf_is_invariant_under_symplectic_change(g in 1usize..=4, bits in any::<u64>(), vs in prop::collection::vec(any::<u64>(), 0..12)) {
        let mask = (1u64 << (2 * g)) - 1;
        let q = QuadraticForm::from_bits(g, bits & mask).unwrap();
        let vs: Vec<u64> = vs.iter().map(|v| v & mask).collect();
        let moved = q.pullback(&transvection_images(g, &vs)).unwrap();
        prop_assert_eq!(arf(&moved), arf(&q));
        prop_assert_eq!(arf_by_count(&moved), arf(&moved));
    }
}

#[test]
fn census_matches_closed_forms() {
    for g in 1..=6usize {
        let c = spin_census(g).unwrap();
        let half = 1u64 << (g - 1);
        assert_eq!((c.even, c.odd), (half * ((1 << g) + 1), half * ((1 << g) - 1)), "g = {g}");
    }
    assert!(spin_census(0).is_err());
    assert!(spin_census(9).is_err());
}
