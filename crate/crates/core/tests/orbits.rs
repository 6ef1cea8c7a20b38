use monodromy_core::lonne::realize;
use monodromy_core::orbits::{form_orbit, form_stabilizer_generators, symplectic_generators, transvection_perm, Perm};
use monodromy_core::{arf, schreier_sims, sp_order, QuadraticForm};
use proptest::prelude::*;

fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn order_ignores_generator_order_and_redundancy(
        order in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
        extra in prop::collection::vec((0usize..5, 0usize..5), 0..4),
    ) {
        let base = symplectic_generators(2).unwrap();
        let mut gens: Vec<Perm> = order.iter().map(|&i| base[i].clone()).collect();
        for (i, j) in extra {
            gens.push(compose(&base[i], &base[j]));
        }
        let grp = schreier_sims(&gens, 16).unwrap();
        prop_assert_eq!(grp.order(), sp_order(2));
        for p in &gens {
            prop_assert!(grp.contains(p));
        }
    }
}

#[test]
fn form_orbits_have_census_sizes() {
    for g in 1..=6usize {
        let gens = symplectic_generators(g).unwrap();
        let half = 1usize << (g - 1);
        let odd = QuadraticForm::from_bits(g, 0b11).unwrap();
        let even = QuadraticForm::from_bits(g, 0).unwrap();
        assert_eq!(arf(&odd), 1);
        assert_eq!(form_orbit(&odd, &gens).unwrap().len(), half * ((1 << g) - 1), "odd, g = {g}");
        assert_eq!(form_orbit(&even, &gens).unwrap().len(), half * ((1 << g) + 1), "even, g = {g}");
    }
}

#[test]
fn orbit_stabilizer() {
    for g in 1..=3usize {
        let gens = symplectic_generators(g).unwrap();
        for bits in [0u64, 0b11] {
            let q = QuadraticForm::from_bits(g, bits).unwrap();
            let orbit = form_orbit(&q, &gens).unwrap().len();
            let stab = schreier_sims(&form_stabilizer_generators(&q, &gens).unwrap(), 1 << (2 * g)).unwrap();
            assert_eq!(stab.order() * orbit, sp_order(g as u32), "g = {g}, q = {bits:b}");
        }
    }
}

#[test]
fn vanishing_transvections_fix_the_degree_five_form() {
    let r = realize(5).unwrap();
    let vectors: Vec<u64> = r.assignment.iter().map(|c| c.h().mod2_bits()).collect();
    let q = QuadraticForm::solve_from_values(6, &vectors, &vec![1; vectors.len()]).unwrap();
    let gens: Vec<Perm> = vectors.iter().map(|&v| transvection_perm(6, v).unwrap()).collect();
    let orbit = form_orbit(&q, &gens).unwrap();
    assert_eq!(orbit.len(), 1);
    assert!(orbit.contains(&q.bits()));
}

#[test]
fn invalid_generators_are_rejected() {
    assert!(schreier_sims(&[vec![0, 0]], 2).is_err());
    assert!(schreier_sims(&[vec![0, 1, 2]], 2).is_err());
    assert!(schreier_sims(&[], 1 << 17).is_err());
}
