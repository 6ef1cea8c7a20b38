use std::collections::HashMap;

use serde::Serialize;

use super::graph::{build_graph, LonneGraph};
use crate::error::{invalid, Error, Result};
use crate::lattice::symplectic_model;
use crate::mapclass::{apply_word, relation_holds, TwistWord};
use crate::symplectic::{genus_of_degree, intersection, FramedCurveClass, HomologyClass, SurfaceModel};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub passed: usize,
    pub total: usize,
}

impl CheckTally {
    fn record(&mut self, ok: bool) {
        self.total += 1;
        self.passed += ok as usize;
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

/// Outcome of checking an assignment against every relation of Γ_d.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationRecord {
    pub framings_zero: CheckTally,
    pub primitive_and_distinct: CheckTally,
    pub edge_pairings: CheckTally,
    pub non_edge_pairings: CheckTally,
    pub commutation_relations: CheckTally,
    pub braid_relations: CheckTally,
    pub triangle_relations: CheckTally,
    pub orientation_conditions: CheckTally,
    /// First few failures, for diagnostics.
    pub failures: Vec<String>,
}

impl ValidationRecord {
    pub fn passed(&self) -> bool {
        [
            self.framings_zero,
            self.primitive_and_distinct,
            self.edge_pairings,
            self.non_edge_pairings,
            self.commutation_relations,
            self.braid_relations,
            self.triangle_relations,
            self.orientation_conditions,
        ]
        .iter()
        .all(|t| t.all_passed())
    }

    /// Commutation, braid and triangle relations: one check each.
    pub fn relation_checks(&self) -> CheckTally {
        let mut t = CheckTally::default();
        for x in [self.commutation_relations, self.braid_relations, self.triangle_relations] {
            t.passed += x.passed;
            t.total += x.total;
        }
        t
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

fn inv(c: &FramedCurveClass) -> (FramedCurveClass, i64) {
    (c.clone(), -1)
}

/// Check a framed-class assignment (indexed like `graph.vertices()`) against Γ_d.
///
/// Relations are checked for the monodromy generators `T_c^{-1}`. Each positive
/// triangle `(i, j, k)` must satisfy the triangle relation and the orientation
/// condition `<c_i, T_{c_j}^{-1}(c_k)> = 0` in all three cyclic rotations.
pub fn validate_assignment(graph: &LonneGraph, classes: &[FramedCurveClass]) -> Result<ValidationRecord> {
    let n = graph.vertices().len();
    if classes.len() != n {
        return invalid(format!("expected {n} classes, got {}", classes.len()));
    }
    let surface = classes[0].surface();
    if classes.iter().any(|c| c.surface() != surface) {
        return invalid("assignment mixes surface models");
    }
    let label = |i: usize| graph.vertices()[i].label();
    let mut rec = ValidationRecord::default();

    for (i, c) in classes.iter().enumerate() {
        let ok = c.w() == 0;
        rec.framings_zero.record(ok);
        if !ok {
            rec.fail(format!("{} has framing {}", label(i), c.w()));
        }
    }
    for i in 0..n {
        let mut ok = classes[i].h().is_primitive();
        for j in 0..n {
            if j != i && (classes[j].h() == classes[i].h() || classes[j].h() == &classes[i].h().neg()) {
                ok = false;
            }
        }
        rec.primitive_and_distinct.record(ok);
        if !ok {
            rec.fail(format!("{} is imprimitive or repeats another class", label(i)));
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            let p = intersection(classes[i].h(), classes[j].h())?;
            let (ci, cj) = (&classes[i], &classes[j]);
            if graph.adjacent(i, j) {
                let ok = p.abs() == 1;
                rec.edge_pairings.record(ok);
                if !ok {
                    rec.fail(format!("<{}, {}> = {p}, expected ±1", label(i), label(j)));
                }
                let lhs = TwistWord::new(surface, vec![inv(ci), inv(cj), inv(ci)])?;
                let rhs = TwistWord::new(surface, vec![inv(cj), inv(ci), inv(cj)])?;
                let ok = relation_holds(&lhs, &rhs)?;
                rec.braid_relations.record(ok);
                if !ok {
                    rec.fail(format!("braid relation fails for {}, {}", label(i), label(j)));
                }
            } else {
                let ok = p == 0;
                rec.non_edge_pairings.record(ok);
                if !ok {
                    rec.fail(format!("<{}, {}> = {p}, expected 0", label(i), label(j)));
                }
                let lhs = TwistWord::new(surface, vec![inv(ci), inv(cj)])?;
                let rhs = TwistWord::new(surface, vec![inv(cj), inv(ci)])?;
                let ok = relation_holds(&lhs, &rhs)?;
                rec.commutation_relations.record(ok);
                if !ok {
                    rec.fail(format!("commutation fails for {}, {}", label(i), label(j)));
                }
            }
        }
    }

    for t in graph.triangles() {
        let mut rel_ok = true;
        let mut orient_ok = true;
        for r in 0..3 {
            let (i, j, k) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
            let (ci, cj, ck) = (&classes[i], &classes[j], &classes[k]);
            let lhs = TwistWord::new(surface, vec![inv(ci), inv(cj), inv(ck), inv(ci)])?;
            let rhs = TwistWord::new(surface, vec![inv(cj), inv(ck), inv(ci), inv(cj)])?;
            rel_ok &= relation_holds(&lhs, &rhs)?;
            let moved = apply_word(&TwistWord::single(cj, -1)?, ck)?;
            orient_ok &= intersection(ci.h(), moved.h())? == 0;
        }
        let name = format!("({}, {}, {})", label(t[0]), label(t[1]), label(t[2]));
        rec.triangle_relations.record(rel_ok);
        if !rel_ok {
            rec.fail(format!("triangle relation fails for {name}"));
        }
        rec.orientation_conditions.record(orient_ok);
        if !orient_ok {
            rec.fail(format!("orientation condition fails for {name}"));
        }
    }
    Ok(rec)
}

/// Replace the third curve `c_k` of positive triangle `t = (i, j, k)` by
/// `T_{c_j}^{-2}(c_k)`: if `c_k = T_{c_j}(z)` this yields `T_{c_j}^{-1}(z)`,
/// the opposite sign convention.
pub fn flip_triangle_third_curve(
    graph: &LonneGraph,
    classes: &[FramedCurveClass],
    triangle: usize,
) -> Result<Vec<FramedCurveClass>> {
    let t = *graph
        .triangles()
        .get(triangle)
        .ok_or_else(|| Error::InvalidInput(format!("no triangle {triangle}")))?;
    let mut out = classes.to_vec();
    out[t[2]] = apply_word(&TwistWord::single(&classes[t[1]], -2)?, &classes[t[2]])?;
    Ok(out)
}

/// Pairing signs `<c_i, c_j> = ±1` on edges forced by the orientation condition.
///
/// For a positive triangle `(i, j, k)` the orientation condition holds exactly when
/// `ε_ij ε_jk ε_ki = +1`. Orientations of individual curves are a gauge freedom, fixed
/// here by making every row edge `(a,b) -> (a,b+1)` and every first-column edge
/// `(a,1) -> (a+1,1)` positive (a spanning tree). The remaining signs follow by
/// propagation through triangles; any inconsistency is an error.
pub fn solve_orientation_signs(graph: &LonneGraph) -> Result<HashMap<(usize, usize), i64>> {
    let vs = graph.vertices();
    let mut sign: HashMap<(usize, usize), i64> = HashMap::new();
    for &(i, j) in graph.edges() {
        let (u, v) = (vs[i], vs[j]);
        if u.a == v.a || (u.b == 1 && v.b == 1) {
            sign.insert((i, j), 1);
        }
    }
    let get = |s: &HashMap<(usize, usize), i64>, i: usize, j: usize| {
        if i < j {
            s.get(&(i, j)).copied()
        } else {
            s.get(&(j, i)).map(|x| -x)
        }
    };
    loop {
        let mut changed = false;
        for t in graph.triangles() {
            let e = [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])];
            let known: Vec<Option<i64>> = e.iter().map(|&(i, j)| get(&sign, i, j)).collect();
            let unknown: Vec<usize> = (0..3).filter(|&k| known[k].is_none()).collect();
            match unknown.len() {
                0 => {
                    if known.iter().map(|x| x.unwrap()).product::<i64>() != 1 {
                        return Err(Error::Internal(format!("inconsistent orientation signs on triangle {t:?}")));
                    }
                }
                1 => {
                    let k = unknown[0];
                    let others: i64 = (0..3).filter(|&m| m != k).map(|m| known[m].unwrap()).product();
                    let (i, j) = e[k];
                    // ε_ij must make the product +1.
                    let s = others;
                    if i < j {
                        sign.insert((i, j), s);
                    } else {
                        sign.insert((j, i), -s);
                    }
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    for &(i, j) in graph.edges() {
        if !sign.contains_key(&(i, j)) {
            return Err(Error::Internal(format!("edge {i}-{j} received no sign")));
        }
    }
    Ok(sign)
}

/// An explicit assignment of framed classes to the vertices of Γ_d.
#[derive(Debug, Clone)]
pub struct LonneRealization {
    pub graph: LonneGraph,
    pub surface: SurfaceModel,
    pub assignment: Vec<FramedCurveClass>,
    pub validation: ValidationRecord,
}

/// Realize Γ_d (4 <= d <= 6) by vanishing-cycle classes on Σ_g with modulus `d - 3`.
///
/// The Gram matrix is fixed by the solved orientation signs, and coordinates come from
/// symplectic reduction taking odd rows first (each odd row becomes a standard chain),
/// then even rows.
pub fn realize(d: u32) -> Result<LonneRealization> {
    if !(4..=6).contains(&d) {
        return invalid(format!("realize supports 4 <= d <= 6, got {d}"));
    }
    let graph = build_graph(d)?;
    let signs = solve_orientation_signs(&graph)?;
    let n = graph.vertices().len();
    let mut gram = vec![vec![0i64; n]; n];
    for (&(i, j), &s) in &signs {
        gram[i][j] = s;
        gram[j][i] = -s;
    }
    let vs = graph.vertices();
    let mut order: Vec<usize> = (0..n).filter(|&i| vs[i].a % 2 == 1).collect();
    order.extend((0..n).filter(|&i| vs[i].a % 2 == 0));
    let model = symplectic_model(&gram, &order)?;
    let g = genus_of_degree(d)?;
    if model.genus != g {
        return Err(Error::Internal(format!("realized genus {} differs from {g}", model.genus)));
    }
    let surface = SurfaceModel::closed(g, d - 3)?;
    let assignment = model
        .coordinates
        .into_iter()
        .map(|x| HomologyClass::new(surface, x).map(FramedCurveClass::vanishing))
        .collect::<Result<Vec<_>>>()?;
    let validation = validate_assignment(&graph, &assignment)?;
    if !validation.passed() {
        return Err(Error::Internal(format!("realization failed validation: {:?}", validation.failures)));
    }
    Ok(LonneRealization { graph, surface, assignment, validation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_match_the_uniform_pattern() {
        let g = build_graph(5).unwrap();
        let s = solve_orientation_signs(&g).unwrap();
        let vs = g.vertices();
        for (&(i, j), &e) in &s {
            let (u, v) = (vs[i], vs[j]);
            let expected = if u.a == v.a || u.b == v.b { 1 } else { -1 };
            assert_eq!(e, expected, "{u:?} {v:?}");
        }
    }

    #[test]
    fn realize_small_degrees() {
        for d in 4..=6 {
            let r = realize(d).unwrap();
            assert!(r.validation.passed());
            assert_eq!(r.assignment.len(), (d as usize - 1).pow(2));
        }
        assert!(realize(3).is_err());
        assert!(realize(7).is_err());
    }

    #[test]
    fn first_row_is_a_standard_chain() {
        let r = realize(5).unwrap();
        let c = |i: usize| r.assignment[i].h().coeffs().to_vec();
        assert_eq!(c(0)[..4], [1, 0, 0, 0]);
        assert_eq!(c(1)[..4], [0, 1, 0, 0]);
        assert_eq!(c(2)[..4], [-1, 0, 1, 0]);
        assert_eq!(c(3)[..4], [0, 0, 0, 1]);
    }

    #[test]
    fn flipping_any_triangle_is_rejected() {
        let r = realize(5).unwrap();
        for t in 0..r.graph.triangles().len() {
            let bad = flip_triangle_third_curve(&r.graph, &r.assignment, t).unwrap();
            assert!(!validate_assignment(&r.graph, &bad).unwrap().passed(), "triangle {t}");
        }
    }
}
