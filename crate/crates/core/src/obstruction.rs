//! A curve whose twist cannot preserve the (d-3)-spin structure of a degree-d curve.
//!
//! Three zero-winding curves in disjoint genus-1 blocks together with one more curve
//! `b` bound a four-holed sphere, so `w(b) = χ·z = -2z`, which is nonzero mod `d-3`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::affine::twist_map;
use crate::error::{invalid, Error, Result};
use crate::mapclass::{apply_word, stabilizes, TwistWord};
use crate::symplectic::{genus_of_degree, FramedCurveClass, SurfaceModel};
use crate::winding::{subsurface_sum, WindingFunction};

/// One factor of a recorded word, by curve name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedFactor {
    pub curve: String,
    pub exponent: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroCurveSearch {
    pub block: usize,
    /// Coefficients of the found class on `(a_block, b_block)`.
    pub class: [i64; 2],
    /// Word carrying `a_block` to the found class, leftmost factor acting last.
    pub word: Vec<NamedFactor>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpinTest {
    /// `(d-3)/2`.
    pub multiplier: i64,
    /// `(d-3)/2 · w(b)` mod `d-3`.
    pub scaled_framing: i64,
    pub stabilizes_spin: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub d: u32,
    pub genus: usize,
    pub modulus: u32,
    pub fiber_value: i64,
    pub searches: Vec<ZeroCurveSearch>,
    /// `[b] = c_1 + c_2 + c_3` for the searched curves, i.e. minus the sum of the
    /// boundary-oriented components.
    pub b_class: Vec<i64>,
    pub carried_framing: i64,
    pub chi_predicted_framing: i64,
    pub framings_agree: bool,
    pub boundary_sum_holds: bool,
    pub framing_nonzero: bool,
    pub stabilizes_full: bool,
    pub spin: Option<SpinTest>,
}

impl ObstructionReport {
    /// Everything the obstruction argument needs.
    pub fn passed(&self) -> bool {
        self.framings_agree
            && self.boundary_sum_holds
            && self.framing_nonzero
            && !self.stabilizes_full
            && self.spin.as_ref().is_none_or(|s| s.stabilizes_spin && s.scaled_framing == 0)
    }
}

#[derive(Debug, Clone)]
pub struct ObstructionWitness {
    pub b: FramedCurveClass,
    pub report: ObstructionReport,
}

/// Winding function used as the model of the (d-3)-spin structure: `z = 1`,
/// `s(a_j) = j`, `s(b_j) = 2j + 1` mod `d-3`. Any admissible choice would do.
pub fn model_winding_function(d: u32) -> Result<WindingFunction> {
    if d < 6 {
        return invalid(format!("the obstruction needs d >= 6, got {d}"));
    }
    let g = genus_of_degree(d)?;
    let n = d - 3;
    let surface = SurfaceModel::closed(g, n)?;
    let values = (1..=g as i64).flat_map(|j| [j, 2 * j + 1]).collect();
    WindingFunction::new(surface, values, 1)
}

/// Breadth-first search over `T_a^{±1}, T_b^{±1}` applied to `a_block` for a class of
/// winding 0. Ties break in the order `T_a, T_a^{-1}, T_b, T_b^{-1}`.
pub fn zero_winding_search(
    phi: &WindingFunction,
    block: usize,
    max_depth: usize,
) -> Result<(TwistWord, FramedCurveClass, ZeroCurveSearch)> {
    let a = phi.a(block)?;
    let b = phi.b(block)?;
    let moves = [(&a, 1i64, "a"), (&a, -1, "a"), (&b, 1, "b"), (&b, -1, "b")];
    let maps: Vec<_> = moves.iter().map(|(c, k, _)| twist_map(c, *k)).collect();
    let key = |c: &FramedCurveClass| {
        let h = c.h().coeffs();
        (h[2 * block - 2], h[2 * block - 1], c.w())
    };
    let mut parent: HashMap<(i64, i64, i64), Option<((i64, i64, i64), usize)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(key(&a), None);
    queue.push_back((a.clone(), 0usize));
    let mut found = None;
    while let Some((c, depth)) = queue.pop_front() {
        if c.w() == 0 {
            found = Some(c);
            break;
        }
        if depth == max_depth {
            continue;
        }
        for (i, m) in maps.iter().enumerate() {
            let next = m.apply(&c)?;
            let k = key(&next);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(k) {
                e.insert(Some((key(&c), i)));
                queue.push_back((next, depth + 1));
            }
        }
    }
    let target = found.ok_or_else(|| {
        Error::Internal(format!("no zero-winding curve within depth {max_depth} in block {block}"))
    })?;
    // Moves in application order, then reversed into a right-to-left word.
    let mut path = Vec::new();
    let mut k = key(&target);
    while let Some(Some((prev, i))) = parent.get(&k) {
        path.push(*i);
        k = *prev;
    }
    let mut word = TwistWord::empty(phi.surface());
    let mut named = Vec::new();
    for &i in &path {
        let (c, e, name) = moves[i];
        word.push(c.clone(), e)?;
        named.push(NamedFactor { curve: format!("{name}{block}"), exponent: e });
    }
    let carried = apply_word(&word, &a)?;
    if carried != target {
        return Err(Error::Internal("search path does not reproduce its endpoint".into()));
    }
    let (p, q, _) = key(&target);
    Ok((word, carried, ZeroCurveSearch { block, class: [p, q], word: named }))
}

/// Word taking `a_1 + ... + a_k` to `a_1 + ... + a_{k+1}`:
/// `T_{b_k}^{-1} T_{a_k}^{-1} T_{m_k} T_{b_k}` with `m_k = a_{k+1} - a_k`.
fn extension_word(phi: &WindingFunction, k: usize) -> Result<TwistWord> {
    TwistWord::new(
        phi.surface(),
        vec![
            (phi.b(k)?, -1),
            (phi.a(k)?, -1),
            (phi.connector(k)?, 1),
            (phi.b(k)?, 1),
        ],
    )
}

pub fn obstruction_witness(d: u32) -> Result<ObstructionWitness> {
    let phi = model_winding_function(d)?;
    let n = phi.modulus() as i64;
    let z = phi.fiber_value();
    let surface = phi.surface();

    // a_1 -> a_1 + a_2 -> a_1 + a_2 + a_3, carrying framings by twist words.
    let mut curve = phi.a(1)?;
    for k in 1..=2 {
        curve = apply_word(&extension_word(&phi, k)?, &curve)?;
    }
    let mut searches = Vec::new();
    let mut zero_curves = Vec::new();
    for block in 1..=3 {
        let (word, c, record) = zero_winding_search(&phi, block, 2 * n as usize)?;
        // The block word only sees the a_block component of the running curve.
        curve = apply_word(&word, &curve)?;
        zero_curves.push(c);
        searches.push(record);
    }
    let b = curve;
    let sum = zero_curves
        .iter()
        .try_fold(crate::symplectic::HomologyClass::zero(surface), |acc, c| acc.add(c.h()))?;
    if &sum != b.h() {
        return Err(Error::Internal("carried curve is not c_1 + c_2 + c_3".into()));
    }

    // Boundary of the four-holed sphere, oriented with the subsurface on the left.
    let mut boundary: Vec<FramedCurveClass> = zero_curves.iter().map(|c| c.reversed()).collect();
    boundary.push(b.clone());
    let chi = -2;
    let predicted = (chi * z - boundary[..3].iter().map(|c| c.w()).sum::<i64>()).rem_euclid(n);
    let boundary_sum_holds = subsurface_sum(&boundary, chi, &phi)?;

    let twist_b = TwistWord::single(&b, 1)?;
    let stabilizes_full = stabilizes(&twist_b, &phi)?;
    let spin = if d % 2 == 1 {
        let multiplier = (d as i64 - 3) / 2;
        Some(SpinTest {
            multiplier,
            scaled_framing: (multiplier * b.w()).rem_euclid(n),
            stabilizes_spin: stabilizes(&twist_b, &phi.spin_reduction()?)?,
        })
    } else {
        None
    };
    let report = ObstructionReport {
        d,
        genus: surface.genus(),
        modulus: surface.modulus(),
        fiber_value: z,
        searches,
        b_class: b.h().coeffs().to_vec(),
        carried_framing: b.w(),
        chi_predicted_framing: predicted,
        framings_agree: predicted == b.w(),
        boundary_sum_holds,
        framing_nonzero: b.w() != 0,
        stabilizes_full,
        spin,
    };
    Ok(ObstructionWitness { b, report })
}
