use monodromy_core::d5::{derive_fixture, load_fixture, realization_document, FixtureDocument, SHIPPED_FIXTURE};
use monodromy_core::lonne::realize;
use monodromy_core::{intersection, johnson_cases, shipped_fixture};

#[test]
fn fixture_invariants() {
    let f = shipped_fixture().unwrap();
    let c = |n: &str| f.curve(n).unwrap().clone();
    for i in 1..12 {
        for j in i + 1..=12 {
            let p = intersection(c(&format!("c{i}")).h(), c(&format!("c{j}")).h()).unwrap();
            assert_eq!(p.abs(), (j == i + 1) as i64, "<c{i}, c{j}>");
        }
    }
    assert_eq!(intersection(c("c10").h(), c("z").h()).unwrap(), 1);
    assert_eq!(intersection(c("b").h(), c("z").h()).unwrap(), 0);
    assert_eq!(intersection(c("b").h(), c("c10").h()).unwrap(), 0);
    // z is -(b + y) up to the orientation that makes <c10, z> = +1.
    let by = c("b").h().add(c("y").h()).unwrap();
    assert!(by.add(c("z").h()).unwrap().is_zero() || by.add(&c("z").h().scale(-1)).unwrap().is_zero());
    for n in ["b", "beta"] {
        assert_eq!(c(n).w(), 1, "{n}");
    }
}

#[test]
fn every_case_is_torelli_and_spin_stabilizing() {
    let r = johnson_cases(&shipped_fixture().unwrap()).unwrap();
    for case in &r.cases {
        assert!(case.torelli && case.stabilizes && case.chain_relation_holds, "{}", case.id);
        assert!(case.boundary_classes_cancel, "{}", case.id);
    }
    let named: Vec<(&str, Option<bool>)> =
        r.cases.iter().map(|c| (c.id.as_str(), c.boundary_matches_named)).filter(|(_, m)| m.is_some()).collect();
    assert_eq!(named, [("k3", Some(true)), ("k5", Some(true)), ("k9", Some(true)), ("k6-beta", Some(true))]);
}

#[test]
fn derivation_is_reproducible() {
    assert_eq!(derive_fixture().unwrap(), derive_fixture().unwrap());
    let doc = FixtureDocument::from_json(SHIPPED_FIXTURE).unwrap();
    assert_eq!(FixtureDocument::from_json(&doc.to_json()).unwrap(), doc);
}

#[test]
fn realization_export_is_not_a_degree_five_fixture() {
    let doc = realization_document(&realize(5).unwrap()).unwrap();
    assert_eq!(doc.curves.len(), 16);
    assert_eq!(doc.pairings.len(), 33);
    assert!(load_fixture(&doc).unwrap_err().to_string().contains("schema"));
}
