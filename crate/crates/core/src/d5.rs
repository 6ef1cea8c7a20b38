//! The degree-5 pipeline on Σ_6: a named curve fixture, the twist recipes that produce
//! it from the Lönne configuration, and the eight bounding-pair cases.
//!
//! Nothing here claims the fixture is isotopic to a particular picture. It is an explicit
//! set of framed homology classes that satisfies every algebraic constraint checked below.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lonne::{build_graph, realize, validate_assignment, LonneRealization, ValidationRecord};
use crate::mapclass::{apply_word, is_torelli, relation_holds, stabilizes, TwistWord};
use crate::relations::{chain_boundaries, chain_word, orient_chain};
use crate::symplectic::{intersection, FramedCurveClass, HomologyClass, SurfaceModel};
use crate::winding::{arf, QuadraticForm, WindingFunction};

/// The fixture shipped with the crate.
pub const SHIPPED_FIXTURE: &str = include_str!("../fixtures/d5.json");

/// Index `k` of the curve `a_k` at row `r + 1`, column `c + 1` of Γ_5.
pub const GRID: [[usize; 4]; 4] = [[15, 5, 3, 1], [13, 7, 2, 4], [11, 9, 8, 6], [10, 12, 14, 16]];

const GENUS: usize = 6;
const MODULUS: u32 = 2;
/// Value of the spin structure on a fiber.
const FIBER: i64 = 1;
/// χ of the subsurface bounded by `b`, `y` and `z` (genus 2, three boundary curves).
const CHI_BYZ: i64 = -5;

/// One twist factor in a document: curve name and exponent.
pub type NamedFactor = (String, i64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveEntry {
    pub h: Vec<i64>,
    pub w: i64,
}

/// `target = word(source)`, with the word written left to right and acting right to left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Recipe {
    pub target: String,
    pub source: String,
    pub word: Vec<NamedFactor>,
}

/// Serialized form of a curve fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDocument {
    pub genus: usize,
    pub modulus: u32,
    pub curves: BTreeMap<String, CurveEntry>,
    pub pairings: Vec<(String, String, i64)>,
    pub recipes: Vec<Recipe>,
}

impl FixtureDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("schema: {e}")))
    }

    /// JSON with one curve, pairing or recipe per line.
    pub fn to_json(&self) -> String {
        let j = |v: &dyn erased::Json| v.json();
        let block = |items: Vec<String>| {
            if items.is_empty() {
                "[]".to_string()
            } else {
                format!("[\n    {}\n  ]", items.join(",\n    "))
            }
        };
        let curves: Vec<String> = self.curves.iter().map(|(n, c)| format!("{}: {}", j(n), j(c))).collect();
        let curves = if curves.is_empty() { "{}".to_string() } else { format!("{{\n    {}\n  }}", curves.join(",\n    ")) };
        format!(
            "{{\n  \"genus\": {},\n  \"modulus\": {},\n  \"curves\": {},\n  \"pairings\": {},\n  \"recipes\": {}\n}}\n",
            self.genus,
            self.modulus,
            curves,
            block(self.pairings.iter().map(|p| j(p)).collect()),
            block(self.recipes.iter().map(|r| j(r)).collect()),
        )
    }
}

mod erased {
    pub trait Json {
        fn json(&self) -> String;
    }

    impl<T: serde::Serialize> Json for T {
        fn json(&self) -> String {
            serde_json::to_string(self).expect("plain data always serializes")
        }
    }
}

fn a_name(k: usize) -> String {
    format!("a{k}")
}

fn c_name(k: usize) -> String {
    format!("c{k}")
}

/// Curves that are vanishing cycles and therefore carry framing 0.
pub fn vanishing_names() -> Vec<String> {
    let mut v: Vec<String> = (1..=16).map(a_name).collect();
    v.extend((1..=13).map(c_name));
    v.extend(["x", "y", "z", "gamma"].map(String::from));
    v
}

fn required_names() -> Vec<String> {
    let mut v = vanishing_names();
    v.extend(["b", "beta"].map(String::from));
    v
}

/// The recipe list, in execution order.
fn recipe_table() -> Vec<Recipe> {
    let r = |target: &str, source: &str, word: &[(&str, i64)]| Recipe {
        target: target.into(),
        source: source.into(),
        word: word.iter().map(|(n, k)| (n.to_string(), *k)).collect(),
    };
    vec![
        r("c1", "a1", &[]),
        r("c2", "a2", &[]),
        r("c4", "a5", &[]),
        r("c8", "a10", &[]),
        r("c12", "a6", &[]),
        r("c3", "a3", &[("a2", -1)]),
        r("c13", "a4", &[("a2", -1)]),
        r("c10", "a13", &[("a15", 1)]),
        r("c6", "a14", &[("a16", 1)]),
        r("c9", "a11", &[("c10", 1), ("a10", -1)]),
        r("c7", "a12", &[("c6", 1), ("a10", -1)]),
        r("c5", "a13", &[("c6", -1), ("c7", -1), ("c8", -1), ("c9", -1), ("c10", -1)]),
        r("c11", "a14", &[("c10", -1), ("c9", -1), ("c8", -1), ("c7", -1), ("c6", -1)]),
        r(
            "x",
            "a7",
            &[
                ("c6", 1),
                ("c7", -1),
                ("c8", -1),
                ("c9", -1),
                ("c5", 1),
                ("c4", 1),
                ("c6", -1),
                ("c7", -1),
                ("c8", -1),
                ("a9", -1),
            ],
        ),
        r(
            "y",
            "a8",
            &[
                ("c10", 1),
                ("c9", -1),
                ("c8", -1),
                ("c7", -1),
                ("c11", 1),
                ("c12", 1),
                ("c10", -1),
                ("c9", -1),
                ("c8", -1),
                ("a9", -1),
            ],
        ),
        r("gamma", "c6", &[("x", 1), ("c5", -1), ("c4", -1)]),
        r("beta", "b", &[("c4", 1), ("c5", 1), ("x", -1)]),
        r("z", "c10", &[("c10", 1), ("b", 2), ("z", 1)]),
    ]
}

/// The conjugator `g = T_x T_{c5}^{-1} T_{c4}^{-1}`.
fn conjugator() -> Vec<NamedFactor> {
    vec![("x".into(), 1), ("c5".into(), -1), ("c4".into(), -1)]
}

fn render(word: &[NamedFactor]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|(n, k)| if *k == 1 { format!("T({n})") } else { format!("T({n})^{k}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn surface() -> Result<SurfaceModel> {
    SurfaceModel::closed(GENUS, MODULUS)
}

fn build_word(s: SurfaceModel, word: &[NamedFactor], lookup: &mut dyn FnMut(&str) -> Result<FramedCurveClass>) -> Result<TwistWord> {
    let mut out = TwistWord::empty(s);
    for (n, k) in word {
        out.push(lookup(n)?, *k)?;
    }
    Ok(out)
}

/// `b`: the boundary class of the chain `c1, c2, c3`, framed by the chain rule.
fn boundary_b(curves: &BTreeMap<String, FramedCurveClass>) -> Result<FramedCurveClass> {
    let chain = ["c1", "c2", "c3"]
        .iter()
        .map(|n| curves.get(*n).cloned().ok_or_else(|| Error::InvalidInput(format!("{n} is needed for b"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(chain_boundaries(&orient_chain(&chain)?, FIBER)?.0)
}

/// Sub-assignment `a_1 .. a_16` in the vertex order of Γ_5.
fn lonne_assignment(curves: &BTreeMap<String, FramedCurveClass>) -> Result<Vec<FramedCurveClass>> {
    GRID.iter()
        .flatten()
        .map(|&k| curves.get(&a_name(k)).cloned().ok_or_else(|| Error::InvalidInput(format!("missing a{k}"))))
        .collect()
}

/// Build the fixture document from `realize(5)` by running the recipe table.
pub fn derive_fixture() -> Result<FixtureDocument> {
    let r = realize(5)?;
    let s = r.surface;
    let mut curves: BTreeMap<String, FramedCurveClass> = BTreeMap::new();
    for (row, names) in GRID.iter().enumerate() {
        for (col, &k) in names.iter().enumerate() {
            curves.insert(a_name(k), r.assignment[row * 4 + col].clone());
        }
    }
    for recipe in recipe_table() {
        if recipe.word.iter().any(|(n, _)| *n == recipe.target) {
            continue;
        }
        if !curves.contains_key("b") && (recipe.source == "b" || recipe.word.iter().any(|(n, _)| n == "b")) {
            let b = boundary_b(&curves)?;
            curves.insert("b".into(), b);
        }
        let source = curves[&recipe.source].clone();
        let word = build_word(s, &recipe.word, &mut |n| {
            curves.get(n).cloned().ok_or_else(|| Error::Internal(format!("recipe table uses {n} early")))
        })?;
        curves.insert(recipe.target.clone(), apply_word(&word, &source)?);
    }
    // z closes up b and y: [b] + [y] + [z] = 0, oriented so that <c10, z> = +1.
    let mut z = curves["b"].h().add(curves["y"].h())?.neg();
    if intersection(curves["c10"].h(), &z)? < 0 {
        z = z.neg();
    }
    curves.insert("z".into(), FramedCurveClass::vanishing(z));

    let mut pairings = Vec::new();
    for i in 1..=12 {
        for j in i + 1..=12 {
            pairings.push((c_name(i), c_name(j), intersection(curves[&c_name(i)].h(), curves[&c_name(j)].h())?));
        }
    }
    for (u, v) in [("c10", "z"), ("b", "z"), ("b", "c10")] {
        pairings.push((u.into(), v.into(), intersection(curves[u].h(), curves[v].h())?));
    }
    Ok(FixtureDocument {
        genus: GENUS,
        modulus: MODULUS,
        curves: curves
            .into_iter()
            .map(|(n, c)| (n, CurveEntry { h: c.h().coeffs().to_vec(), w: c.w() }))
            .collect(),
        pairings,
        recipes: recipe_table(),
    })
}

/// A realization written in the fixture schema: curves named by vertex label, the
/// declared pairings are the edge pairings, and there are no recipes.
pub fn realization_document(r: &LonneRealization) -> Result<FixtureDocument> {
    let vs = r.graph.vertices();
    let mut pairings = Vec::new();
    for &(i, j) in r.graph.edges() {
        pairings.push((vs[i].label(), vs[j].label(), intersection(r.assignment[i].h(), r.assignment[j].h())?));
    }
    Ok(FixtureDocument {
        genus: r.surface.genus(),
        modulus: r.surface.modulus(),
        curves: vs
            .iter()
            .zip(&r.assignment)
            .map(|(v, c)| (v.label(), CurveEntry { h: c.h().coeffs().to_vec(), w: c.w() }))
            .collect(),
        pairings,
        recipes: Vec::new(),
    })
}

/// A validated genus-6 fixture.
#[derive(Debug, Clone)]
pub struct CurveFixture {
    surface: SurfaceModel,
    curves: BTreeMap<String, FramedCurveClass>,
    pairings: Vec<(String, String, i64)>,
    recipes: Vec<Recipe>,
    form: QuadraticForm,
    phi: WindingFunction,
    lonne: ValidationRecord,
}

impl CurveFixture {
    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    /// A curve exactly as declared in the document.
    pub fn curve(&self, name: &str) -> Option<&FramedCurveClass> {
        self.curves.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.curves.keys().map(String::as_str)
    }

    pub fn pairings(&self) -> &[(String, String, i64)] {
        &self.pairings
    }

    pub fn recipes(&self) -> &[Recipe] {
        &self.recipes
    }

    /// The quadratic form with `q = 1` on every vanishing cycle.
    pub fn quadratic_form(&self) -> &QuadraticForm {
        &self.form
    }

    /// The mod-2 winding function of the form.
    pub fn spin_structure(&self) -> &WindingFunction {
        &self.phi
    }

    pub fn lonne_validation(&self) -> &ValidationRecord {
        &self.lonne
    }

    /// The Lönne configuration `a_1 .. a_16` as a realization of Γ_5.
    pub fn lonne_realization(&self) -> Result<LonneRealization> {
        Ok(LonneRealization {
            graph: build_graph(5)?,
            surface: self.surface,
            assignment: lonne_assignment(&self.curves)?,
            validation: self.lonne.clone(),
        })
    }
}

/// Index of a chain curve `c_i` with `1 <= i <= 12`.
fn chain_index(name: &str) -> Option<usize> {
    let i: usize = name.strip_prefix('c')?.parse().ok()?;
    (1..=12).contains(&i).then_some(i)
}

fn chain_expected(i: usize, j: usize, p: i64) -> bool {
    if i.abs_diff(j) == 1 {
        p.abs() == 1
    } else {
        p == 0
    }
}

pub fn parse_fixture(text: &str) -> Result<CurveFixture> {
    load_fixture(&FixtureDocument::from_json(text)?)
}

pub fn shipped_fixture() -> Result<CurveFixture> {
    parse_fixture(SHIPPED_FIXTURE)
}

/// Validate a document and build the fixture. Errors name the failing constraint.
pub fn load_fixture(doc: &FixtureDocument) -> Result<CurveFixture> {
    if doc.genus != GENUS || doc.modulus != MODULUS {
        return invalid(format!(
            "schema: expected genus {GENUS} and modulus {MODULUS}, got {} and {}",
            doc.genus, doc.modulus
        ));
    }
    let s = surface()?;
    let required = required_names();
    for n in &required {
        if !doc.curves.contains_key(n) {
            return invalid(format!("schema: curve {n} is missing"));
        }
    }
    let mut curves = BTreeMap::new();
    for (n, e) in &doc.curves {
        if !required.contains(n) {
            return invalid(format!("schema: unknown curve {n}"));
        }
        if e.h.len() != s.rank() {
            return invalid(format!("schema: {n} has {} coordinates, expected {}", e.h.len(), s.rank()));
        }
        let h = HomologyClass::new(s, e.h.clone())?;
        let c = if n.starts_with('a') && e.w.rem_euclid(MODULUS as i64) == 0 {
            FramedCurveClass::vanishing(h)
        } else {
            FramedCurveClass::declared(h, e.w)
        };
        curves.insert(n.clone(), c);
    }
    for n in vanishing_names() {
        if curves[&n].w() != 0 {
            return invalid(format!("vanishing framing: w({n}) = {} but vanishing cycles have framing 0", curves[&n].w()));
        }
    }
    for (u, v, p) in &doc.pairings {
        for n in [u, v] {
            if !curves.contains_key(n) {
                return invalid(format!("schema: pairing table names unknown curve {n}"));
            }
        }
        if let (Some(i), Some(j)) = (chain_index(u), chain_index(v)) {
            if !chain_expected(i, j, *p) {
                return invalid(format!("chain violation: declared <{u}, {v}> = {p}"));
            }
        }
    }
    let pair = |u: &str, v: &str| intersection(curves[u].h(), curves[v].h());
    for i in 1..=12 {
        for j in i + 1..=12 {
            let p = pair(&c_name(i), &c_name(j))?;
            if !chain_expected(i, j, p) {
                return invalid(format!("chain violation: <c{i}, c{j}> = {p}"));
            }
        }
    }
    for (u, v, p) in &doc.pairings {
        let actual = pair(u, v)?;
        if actual != *p {
            return invalid(format!("pairing mismatch: table says <{u}, {v}> = {p}, classes give {actual}"));
        }
    }
    if pair("c10", "z")?.abs() != 1 || pair("b", "z")? != 0 || pair("b", "c10")? != 0 {
        return invalid("configuration: need |<c10, z>| = 1 and b disjoint from z and c10");
    }
    let (b, y, z) = (curves["b"].h(), curves["y"].h(), curves["z"].h());
    let closes = [1i64, -1]
        .iter()
        .any(|&e1| [1i64, -1].iter().any(|&e2| b.add(&y.scale(e1)).and_then(|t| t.add(&z.scale(e2))).map(|t| t.is_zero()).unwrap_or(false)));
    if !closes {
        return invalid("configuration: [b], [y], [z] do not sum to zero for any orientations");
    }
    let wsum = curves["b"].w() + curves["y"].w() + curves["z"].w();
    if (wsum - CHI_BYZ).rem_euclid(MODULUS as i64) != 0 {
        return invalid(format!("configuration: w(b) + w(y) + w(z) = {wsum} is not chi = {CHI_BYZ} mod {MODULUS}"));
    }

    let graph = build_graph(5)?;
    let lonne = validate_assignment(&graph, &lonne_assignment(&curves)?)?;
    if !lonne.passed() {
        return invalid(format!("lonne: a1..a16 fail the Γ_5 checks: {:?}", lonne.failures));
    }

    let names = vanishing_names();
    let vectors: Vec<u64> = names.iter().map(|n| curves[n].h().mod2_bits()).collect();
    let form = QuadraticForm::solve_from_values(GENUS, &vectors, &vec![1u8; vectors.len()])
        .map_err(|e| Error::InvalidInput(format!("spin: no form is 1 on all vanishing cycles ({e})")))?;
    for (n, c) in &curves {
        let q = form.eval_class(c.h()) as i64;
        if q != (c.w() + 1).rem_euclid(2) {
            return invalid(format!("spin: q({n}) = {q} disagrees with w({n}) = {}", c.w()));
        }
    }
    if arf(&form) != 1 {
        return invalid("spin: the form has Arf invariant 0");
    }
    let values = form.diag().iter().map(|&q| (q as i64 + 1) % 2).collect();
    let phi = WindingFunction::new(s, values, FIBER)?;
    Ok(CurveFixture {
        surface: s,
        curves,
        pairings: doc.pairings.clone(),
        recipes: doc.recipes.clone(),
        form,
        phi,
        lonne,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RecipeOutcome {
    pub target: String,
    pub source: String,
    pub word: String,
    /// The target appears in its own word (e.g. `T_{c10} T_b^2 T_z (c10) = z`).
    pub braid_trick: bool,
    pub matches: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecipeReport {
    pub recipes: Vec<RecipeOutcome>,
    /// `b` equals the framed boundary of the chain `c1, c2, c3`.
    pub b_is_chain_boundary: bool,
    /// The z recipe reproduces z while `T_b^2` acts trivially on c10 and z.
    pub tb_squared_bookkeeping: bool,
    pub passed: bool,
}

/// Runs the recipes, returning the report and the curves they produced.
fn execute(fixture: &CurveFixture) -> Result<(RecipeReport, BTreeMap<String, FramedCurveClass>)> {
    let s = fixture.surface;
    let mut derived: BTreeMap<String, FramedCurveClass> =
        fixture.curves.iter().filter(|(n, _)| n.starts_with('a')).map(|(n, c)| (n.clone(), c.clone())).collect();
    let mut outcomes = Vec::new();
    let mut b_is_chain_boundary = false;
    let mut tb_squared_bookkeeping = false;
    for recipe in &fixture.recipes {
        let braid_trick = recipe.word.iter().any(|(n, _)| *n == recipe.target);
        let needs_b = recipe.source == "b" || recipe.word.iter().any(|(n, _)| n == "b");
        if needs_b && !derived.contains_key("b") {
            if let Ok(b) = boundary_b(&derived) {
                b_is_chain_boundary = fixture.curves.get("b") == Some(&b);
                derived.insert("b".into(), b);
            }
        }
        let mut lookup = |n: &str| -> Result<FramedCurveClass> {
            if let Some(c) = derived.get(n) {
                return Ok(c.clone());
            }
            if braid_trick && n == recipe.target {
                if let Some(c) = fixture.curves.get(n) {
                    return Ok(c.clone());
                }
            }
            invalid(format!("{n} has not been produced by an earlier recipe"))
        };
        let result = lookup(&recipe.source)
            .and_then(|src| Ok((src, build_word(s, &recipe.word, &mut lookup)?)))
            .and_then(|(src, w)| apply_word(&w, &src));
        let (matches, note) = match (&result, fixture.curves.get(&recipe.target)) {
            (Ok(out), Some(target)) if out == target => (true, None),
            (Ok(out), Some(target)) => {
                (false, Some(format!("produced h = {} w = {}, fixture has h = {} w = {}", out.h(), out.w(), target.h(), target.w())))
            }
            (Ok(_), None) => (false, Some(format!("unknown target {}", recipe.target))),
            (Err(e), _) => (false, Some(e.to_string())),
        };
        if matches && braid_trick && recipe.target == "z" {
            let c10 = &derived["c10"];
            let b = &derived["b"];
            let z = &fixture.curves["z"];
            tb_squared_bookkeeping = intersection(b.h(), c10.h())? == 0 && intersection(b.h(), z.h())? == 0;
        }
        if let (true, false, Ok(out)) = (matches, braid_trick, result) {
            derived.insert(recipe.target.clone(), out);
        }
        outcomes.push(RecipeOutcome {
            target: recipe.target.clone(),
            source: recipe.source.clone(),
            word: render(&recipe.word),
            braid_trick,
            matches,
            note,
        });
    }
    let passed = !outcomes.is_empty() && outcomes.iter().all(|o| o.matches) && b_is_chain_boundary && tb_squared_bookkeeping;
    Ok((RecipeReport { recipes: outcomes, b_is_chain_boundary, tb_squared_bookkeeping, passed }, derived))
}

pub fn run_recipes(fixture: &CurveFixture) -> Result<RecipeReport> {
    Ok(execute(fixture)?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    Straight,
    BetaChain,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseRecord {
    pub id: String,
    pub k: usize,
    pub kind: CaseKind,
    pub chain: Vec<String>,
    /// For β-chains: the chain after applying `g`.
    pub transported_chain: Option<Vec<String>>,
    pub chain_word: String,
    pub boundary_square_word: String,
    pub bounding_pair_word: String,
    pub boundary_class: Vec<i64>,
    pub boundary_framings: [i64; 2],
    /// Fixture curve expected to carry the boundary class, if any.
    pub named_boundary: Option<String>,
    pub boundary_matches_named: Option<bool>,
    pub boundary_classes_cancel: bool,
    pub chain_relation_holds: bool,
    /// For β-chains: `g W g^{-1}` equals the chain word of the transported chain.
    pub conjugation_holds: Option<bool>,
    pub torelli: bool,
    pub stabilizes: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugationChecks {
    pub conjugator: String,
    pub g_beta_is_b: bool,
    pub g_c5_is_c4: bool,
    pub g_c6_is_gamma: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct JohnsonReport {
    pub recipes_passed: bool,
    pub conjugation: ConjugationChecks,
    pub cases: Vec<CaseRecord>,
    pub passed: bool,
}

fn chain_names(k: usize, kind: CaseKind) -> (Vec<String>, Option<Vec<String>>) {
    match kind {
        CaseKind::Straight => ((1..=k).map(c_name).collect(), None),
        CaseKind::BetaChain => {
            let mut orig = vec!["beta".to_string()];
            orig.extend((5..=k).map(c_name));
            let mut moved: Vec<String> = ["b", "c4", "gamma"].map(String::from).to_vec();
            moved.extend((7..=k).map(c_name));
            (orig, Some(moved))
        }
    }
}

fn named_boundary(k: usize) -> Option<&'static str> {
    match k {
        3 => Some("b"),
        5 => Some("x"),
        6 => Some("c6"),
        9 => Some("y"),
        _ => None,
    }
}

/// The chain word for `names`, rendered as `(T(c1)^2 T(c2) ...)^k`.
fn chain_word_text(names: &[String]) -> String {
    let mut base = vec![(names[0].clone(), 2)];
    base.extend(names[1..].iter().map(|n| (n.clone(), 1)));
    format!("({})^{}", render(&base), names.len())
}

fn run_case(
    k: usize,
    kind: CaseKind,
    curves: &BTreeMap<String, FramedCurveClass>,
    g: &TwistWord,
    phi: &WindingFunction,
) -> Result<CaseRecord> {
    let get = |n: &String| curves.get(n).cloned().ok_or_else(|| Error::InvalidInput(format!("{n} is not available")));
    let (names, moved) = chain_names(k, kind);
    let working = moved.clone().unwrap_or_else(|| names.clone());
    let chain = orient_chain(&working.iter().map(get).collect::<Result<Vec<_>>>()?)?;
    let word = chain_word(&chain)?;
    let (d1, d2) = chain_boundaries(&chain, FIBER)?;
    let rhs = TwistWord::new(chain[0].surface(), vec![(d1.clone(), 1), (d2.clone(), 1)])?;
    let chain_relation_holds = relation_holds(&word, &rhs)?;
    let boundary_classes_cancel = d1.h().add(d2.reversed().h())?.is_zero();
    let bp = TwistWord::single(&d1, 2)?.concat(&word.inverse())?;
    let torelli = is_torelli(&bp)?;
    let stab = stabilizes(&bp, phi)?;
    let conjugation_holds = match &moved {
        Some(_) => {
            let orig = orient_chain(&names.iter().map(get).collect::<Result<Vec<_>>>()?)?;
            let conj = g.concat(&chain_word(&orig)?)?.concat(&g.inverse())?;
            Some(relation_holds(&conj, &word)?)
        }
        None => None,
    };
    let named = named_boundary(k);
    let boundary_matches_named = named.map(|n| {
        curves.get(n).is_some_and(|c| {
            (c.h() == d1.h() || c.h() == &d1.h().neg()) && (c.w() - d1.w()).rem_euclid(MODULUS as i64) == 0
        })
    });
    let passed = chain_relation_holds
        && boundary_classes_cancel
        && torelli
        && stab
        && conjugation_holds != Some(false)
        && boundary_matches_named != Some(false);
    let id = match kind {
        CaseKind::Straight => format!("k{k}"),
        CaseKind::BetaChain => format!("k{k}-beta"),
    };
    Ok(CaseRecord {
        id,
        k,
        kind,
        chain: names,
        chain_word: chain_word_text(&working),
        transported_chain: moved,
        boundary_square_word: format!("T(d1)^2 with d1 = {}", d1.h()),
        bounding_pair_word: format!("T(d1)^2 {}^-1 = T(d1) T(d2)^-1", chain_word_text(&working)),
        boundary_class: d1.h().coeffs().to_vec(),
        boundary_framings: [d1.w(), d2.w()],
        named_boundary: named.map(String::from),
        boundary_matches_named,
        boundary_classes_cancel,
        chain_relation_holds,
        conjugation_holds,
        torelli,
        stabilizes: stab,
        passed,
    })
}

/// The eight cases: straight chains `k = 3, 5, 7, 9`, then β-chains `k = 6, 8, 10, 12`.
pub fn johnson_cases(fixture: &CurveFixture) -> Result<JohnsonReport> {
    let (recipes, curves) = execute(fixture)?;
    let s = fixture.surface;
    let g_factors = conjugator();
    let g = build_word(s, &g_factors, &mut |n| {
        curves.get(n).cloned().ok_or_else(|| Error::InvalidInput(format!("{n} is not available")))
    })?;
    let moved = |n: &str| -> Result<FramedCurveClass> {
        let c = curves.get(n).ok_or_else(|| Error::InvalidInput(format!("{n} is not available")))?;
        apply_word(&g, c)
    };
    // Curves, not oriented classes: g(c5) = <c4, c5> c4.
    let same = |a: Result<FramedCurveClass>, n: &str| {
        a.map(|c| curves.get(n).is_some_and(|t| *t == c || *t == c.reversed())).unwrap_or(false)
    };
    let conjugation = ConjugationChecks {
        conjugator: render(&g_factors),
        g_beta_is_b: same(moved("beta"), "b"),
        g_c5_is_c4: same(moved("c5"), "c4"),
        g_c6_is_gamma: same(moved("c6"), "gamma"),
    };
    let mut cases = Vec::new();
    for (k, kind) in [3, 5, 7, 9]
        .map(|k| (k, CaseKind::Straight))
        .into_iter()
        .chain([6, 8, 10, 12].map(|k| (k, CaseKind::BetaChain)))
    {
        cases.push(run_case(k, kind, &curves, &g, &fixture.phi)?);
    }
    let passed = recipes.passed
        && conjugation.g_beta_is_b
        && conjugation.g_c5_is_c4
        && conjugation.g_c6_is_gamma
        && cases.iter().all(|c| c.passed);
    Ok(JohnsonReport { recipes_passed: recipes.passed, conjugation, cases, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_fixture_is_the_derived_one() {
        let derived = derive_fixture().unwrap();
        if std::env::var_os("MONODROMY_WRITE_FIXTURE").is_some() {
            std::fs::write(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/d5.json"), derived.to_json()).unwrap();
        }
        assert_eq!(FixtureDocument::from_json(SHIPPED_FIXTURE).unwrap(), derived);
    }

    #[test]
    fn shipped_fixture_loads_and_recipes_match() {
        let f = shipped_fixture().unwrap();
        assert_eq!(arf(f.quadratic_form()), 1);
        assert!(f.lonne_validation().passed());
        let r = run_recipes(&f).unwrap();
        assert!(r.passed, "{r:#?}");
        assert!(r.recipes.iter().any(|o| o.target == "z" && o.braid_trick && o.matches));
    }

    #[test]
    fn johnson_cases_pass() {
        let f = shipped_fixture().unwrap();
        let r = johnson_cases(&f).unwrap();
        assert!(r.passed, "{r:#?}");
        let ids: Vec<&str> = r.cases.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["k3", "k5", "k7", "k9", "k6-beta", "k8-beta", "k10-beta", "k12-beta"]);
        assert_eq!(r.cases[0].boundary_matches_named, Some(true));
        assert_eq!(r.cases[1].boundary_matches_named, Some(true));
    }

    fn doc() -> FixtureDocument {
        FixtureDocument::from_json(SHIPPED_FIXTURE).unwrap()
    }

    fn rejected(d: &FixtureDocument) -> String {
        load_fixture(d).unwrap_err().to_string()
    }

    #[test]
    fn injected_pairing_is_a_chain_violation() {
        let mut d = doc();
        for p in d.pairings.iter_mut().filter(|p| p.0 == "c3" && p.1 == "c5") {
            p.2 = 1;
        }
        assert!(rejected(&d).contains("chain violation"));

        let mut d = doc();
        let c2 = d.curves["c2"].h.clone();
        for (x, y) in d.curves.get_mut("c5").unwrap().h.iter_mut().zip(c2) {
            *x += y;
        }
        assert!(rejected(&d).contains("chain violation"));
    }

    #[test]
    fn nonzero_vanishing_framing_is_rejected() {
        let mut d = doc();
        d.curves.get_mut("c1").unwrap().w = 1;
        assert!(rejected(&d).contains("vanishing framing"));
    }

    #[test]
    fn schema_errors() {
        assert!(parse_fixture("{").is_err());
        let mut d = doc();
        d.curves.remove("gamma");
        assert!(rejected(&d).contains("missing"));
        let mut d = doc();
        d.genus = 5;
        assert!(rejected(&d).contains("schema"));
    }

    #[test]
    fn tampered_recipe_is_reported() {
        let mut d = doc();
        d.recipes.iter_mut().find(|r| r.target == "c3").unwrap().word[0].1 = 1;
        let f = load_fixture(&d).unwrap();
        let r = run_recipes(&f).unwrap();
        assert!(!r.passed);
        let bad: Vec<&str> = r.recipes.iter().filter(|o| !o.matches).map(|o| o.target.as_str()).collect();
        assert!(bad.contains(&"c3"));
    }
}
