use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use monodromy_core::braid::verify_flap;
use monodromy_core::d5::{realization_document, run_recipes, CurveFixture};
use monodromy_core::lonne::{build_graph, realize, strip_census, triangle_case_check, ValidationRecord};
use monodromy_core::obstruction::obstruction_witness;
use monodromy_core::relations::{verify_chain_braid, verify_star_homology};
use monodromy_core::{arf, beauville_check, genus_of_degree, johnson_cases, parse_fixture, shipped_fixture, spin_census, Error};
use serde_json::json;

use crate::report::{check, Check, RunReport};

/// Reads a fixture from `path`, or the shipped one.
pub fn fixture(path: Option<&Path>) -> Result<CurveFixture> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading fixture {}", p.display()))?;
            Ok(parse_fixture(&text)?)
        }
        None => Ok(shipped_fixture()?),
    }
}

fn fixture_param(path: Option<&Path>) -> String {
    path.map_or_else(|| "shipped".to_string(), |p| p.display().to_string())
}

fn validation_checks(v: &ValidationRecord) -> Vec<Check> {
    vec![
        check("framings zero", v.framings_zero.all_passed()),
        check("primitive and distinct", v.primitive_and_distinct.all_passed()),
        check("edge pairings", v.edge_pairings.all_passed()),
        check("non-edge pairings", v.non_edge_pairings.all_passed()),
        check("commutation relations", v.commutation_relations.all_passed()),
        check("braid relations", v.braid_relations.all_passed()),
        check("triangle relations", v.triangle_relations.all_passed()),
        check("orientation conditions", v.orientation_conditions.all_passed()),
    ]
}

pub fn genus() -> Result<RunReport> {
    let table: Vec<(u32, usize)> = (3..=9).map(|d| Ok((d, genus_of_degree(d)?))).collect::<Result<_>>()?;
    let small: Vec<usize> = table.iter().take(3).map(|&(_, g)| g).collect();
    let closed_form = table.iter().all(|&(d, g)| g as u32 == (d - 1) * (d - 2) / 2);
    let checks = vec![check("genus of degrees 3, 4, 5 is 1, 3, 6", small == [1, 3, 6]), check("closed form", closed_form)];
    RunReport::new("genus", &[], checks, json!({ "degrees": table }))
}

pub fn graph(d: u32) -> Result<RunReport> {
    let g = build_graph(d)?;
    let e = g.export();
    let m = d as usize - 1;
    let checks = vec![
        check("vertex count (d-1)^2", e.vertex_count == m * m),
        check("triangle count 2(d-2)^2", e.triangle_count == 2 * (m - 1) * (m - 1)),
    ];
    RunReport::new("lonne graph", &[("d", d.to_string())], checks, e)
}

pub fn graph_dot(d: u32) -> Result<String> {
    Ok(build_graph(d)?.to_dot())
}

pub fn realize_to(d: u32, out: &Path) -> Result<RunReport> {
    let r = realize(d)?;
    let doc = realization_document(&r)?;
    std::fs::write(out, doc.to_json()).with_context(|| format!("writing {}", out.display()))?;
    let checks = validation_checks(&r.validation);
    let data = json!({ "genus": r.surface.genus(), "modulus": r.surface.modulus(), "validation": r.validation });
    RunReport::new("lonne realize", &[("d", d.to_string()), ("out", out.display().to_string())], checks, data)
}

pub fn census(d: u32) -> Result<RunReport> {
    let s = strip_census(d)?;
    let checks = vec![check("census identities", s.identities_hold), check("cut surface has d boundary components", s.chi_cut_twice == d as i64)];
    RunReport::new("lonne census", &[("d", d.to_string())], checks, s)
}

pub fn relations(d: u32) -> Result<RunReport> {
    let r = realize(d)?;
    let t = triangle_case_check()?;
    let mut checks = validation_checks(&r.validation);
    checks.push(check("(x, y, T_y z) satisfies the triangle relation", t.twisted_forward.holds_in_all_rotations));
    checks.push(check("(x, y, T_y^-1 z) fails the triangle relation", !t.twisted_backward.relation_holds));
    checks.push(check("three-boundary triple fails the triangle relation", !t.three_boundary.relation_holds));
    let data = json!({
        "relation_checks": r.validation.relation_checks(),
        "validation": r.validation,
        "triangle_cases": t,
    });
    RunReport::new("verify relations", &[("d", d.to_string())], checks, data)
}

pub fn star(g: usize) -> Result<RunReport> {
    let r = verify_star_homology(g)?;
    let mut checks = vec![
        check("word is the identity", r.lhs_identity_full && r.lhs_identity_capped),
        check("equals the boundary twists", r.matches_boundary_twists),
        check("dropping any factor breaks it", r.mutations_break.iter().all(|&b| b)),
    ];
    if g == 1 {
        checks.push(check("classical star relation", r.classical_star));
    }
    RunReport::new("verify star", &[("g", g.to_string())], checks, r)
}

pub fn flap(g: usize) -> Result<RunReport> {
    let r = verify_flap(g)?;
    let checks = vec![
        check("capped identity", r.capped_identity),
        check("f rotates the punctures", r.f_is_rotation),
        check("alpha is unique", r.alpha_unique),
        check("delta1 exponent is 2g", r.delta1_exponent == 2 * g as i64),
        check("overall", r.passed),
    ];
    RunReport::new("verify flap", &[("g", g.to_string())], checks, r)
}

pub fn chain(k: usize) -> Result<RunReport> {
    let r = verify_chain_braid(k)?;
    let mut checks = vec![check("braid shadow", r.braid_shadow.matches_boundary_twist)];
    for h in &r.homology {
        checks.push(check(format!("homological relation on genus {}", h.genus), h.relation_holds && h.boundary_classes_cancel));
    }
    RunReport::new("verify chain", &[("k", k.to_string())], checks, r)
}

pub fn spin(g: usize) -> Result<RunReport> {
    let c = spin_census(g)?;
    let half = 1u64 << (g - 1);
    let full = 1u64 << g;
    let (even, odd) = (half * (full + 1), half * (full - 1));
    let checks = vec![check("even count 2^(g-1)(2^g+1)", c.even == even), check("odd count 2^(g-1)(2^g-1)", c.odd == odd)];
    let data = json!({ "g": g, "even": c.even, "odd": c.odd, "expected_even": even, "expected_odd": odd });
    RunReport::new("spin census", &[("g", g.to_string())], checks, data)
}

pub fn obstruction(d: u32) -> Result<RunReport> {
    let w = obstruction_witness(d)?;
    let r = &w.report;
    let n = r.modulus as i64;
    let mut checks = vec![
        check("w(b) = -2z", w.b.w() == (-2 * r.fiber_value).rem_euclid(n)),
        check("w(b) is nonzero", r.framing_nonzero),
        check("carried framing matches the Euler characteristic prediction", r.framings_agree),
        check("boundary sum", r.boundary_sum_holds),
        check("does not stabilize the full structure", !r.stabilizes_full),
    ];
    if let Some(s) = &r.spin {
        checks.push(check("stabilizes the reduced structure", s.stabilizes_spin && s.scaled_framing == 0));
    }
    RunReport::new("spin obstruction", &[("d", d.to_string())], checks, json!({ "b_framing": w.b.w(), "report": r }))
}

pub fn beauville(d: u32, path: Option<&Path>) -> Result<RunReport> {
    if d != 5 {
        return Err(Error::InvalidInput(format!("the stabilizer check is for d = 5, got {d}")).into());
    }
    let f = fixture(path)?;
    let r = beauville_check(&f.lonne_realization()?)?;
    let checks = vec![
        check("all transvections fix q", r.fixes_q.iter().all(|&b| b)),
        check("Arf invariant 1", r.arf == 1 && r.arf_by_count == 1),
        check("group order is |Sp_12(F_2)| / 2016", r.order_matches),
    ];
    RunReport::new("beauville", &[("d", d.to_string()), ("fixture", fixture_param(path))], checks, r)
}

pub fn johnson(path: Option<&Path>) -> Result<RunReport> {
    let f = fixture(path)?;
    let recipes = run_recipes(&f)?;
    let j = johnson_cases(&f)?;
    let mut checks = vec![
        check("fixture validates", true),
        check("Arf of the spin model is 1", arf(f.quadratic_form()) == 1),
        check("recipes reproduce their targets", recipes.passed),
        check("g(beta) = b", j.conjugation.g_beta_is_b),
        check("g(c5) = c4", j.conjugation.g_c5_is_c4),
        check("g(c6) = gamma", j.conjugation.g_c6_is_gamma),
    ];
    for c in &j.cases {
        checks.push(check(format!("case {}", c.id), c.passed));
    }
    RunReport::new("johnson", &[("fixture", fixture_param(path))], checks, json!({ "recipes": recipes, "johnson": j }))
}

/// The full acceptance suite, one section per area.
pub fn report_all(timing: bool) -> Result<RunReport> {
    let mut sections: Vec<RunReport> = Vec::new();
    let mut run = |f: &dyn Fn() -> Result<RunReport>| -> Result<()> {
        let start = Instant::now();
        let mut r = f()?;
        if timing {
            r.duration_ms = Some(start.elapsed().as_millis() as u64);
        }
        sections.push(r);
        Ok(())
    };
    run(&genus)?;
    for d in 3..=8 {
        run(&|| graph(d))?;
    }
    run(&|| relations(5))?;
    run(&|| census(5))?;
    for d in 6..=9 {
        run(&|| obstruction(d))?;
    }
    for g in 1..=4 {
        run(&|| star(g))?;
    }
    for g in 1..=3 {
        run(&|| flap(g))?;
    }
    for k in [3, 5, 7, 9] {
        run(&|| chain(k))?;
    }
    for g in [1, 2, 6] {
        run(&|| spin(g))?;
    }
    run(&|| beauville(5, None))?;
    run(&|| johnson(None))?;
    let checks = sections
        .iter()
        .map(|s| {
            let params: Vec<String> = s.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            check(format!("{} {}", s.command, params.join(" ")).trim_end(), s.passed)
        })
        .collect();
    if sections.is_empty() {
        bail!("no sections ran");
    }
    RunReport::new("report", &[("all", "true".into())], checks, sections)
}
