//! Permutation groups on bit-packed F_2 vector spaces: stabilizer chains, orders,
//! orbits of quadratic forms, and the spin-stabilizer check for d = 5.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::lonne::LonneRealization;
use crate::winding::{arf, arf_by_count, pair_mod2, QuadraticForm};

/// Largest supported domain.
pub const MAX_DEGREE: usize = 1 << 16;

pub type Perm = Vec<u16>;

fn identity_perm(n: usize) -> Perm {
    (0..n as u32).map(|x| x as u16).collect()
}

fn is_identity(p: &[u16]) -> bool {
    p.iter().enumerate().all(|(i, &x)| x as usize == i)
}

/// `x -> b[a[x]]`: apply `a` first.
fn then(a: &[u16], b: &[u16]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn invert(a: &[u16]) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out
}

#[derive(Debug, Clone)]
struct Level {
    base_point: u16,
    orbit: Vec<u16>,
    /// Position of each point in `orbit`, or `u32::MAX`.
    position: Vec<u32>,
    /// `reps[i]` maps the base point to `orbit[i]`; `inv_reps[i]` is its inverse.
    reps: Vec<Perm>,
    inv_reps: Vec<Perm>,
    /// Indices into the strong generator list of generators fixing all earlier base points.
    gens: Vec<usize>,
    /// For each entry of `gens`, how many orbit points have been processed with it.
    processed: Vec<usize>,
}

impl Level {
    fn new(base_point: u16, degree: usize) -> Self {
        let mut position = vec![u32::MAX; degree];
        position[base_point as usize] = 0;
        Self {
            base_point,
            orbit: vec![base_point],
            position,
            reps: vec![identity_perm(degree)],
            inv_reps: vec![identity_perm(degree)],
            gens: Vec::new(),
            processed: Vec::new(),
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn base(&self) -> Vec<u16> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sift through the chain; returns the residue and the level where it stopped.
    fn sift(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h[level.base_point as usize];
            let pos = level.position[beta as usize];
            if pos == u32::MAX {
                return (h, i);
            }
            h = then(&h, &level.inv_reps[pos as usize]);
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, p: &[u16]) -> bool {
        if p.len() != self.degree {
            return false;
        }
        let (h, _) = self.sift(p.to_vec(), 0);
        is_identity(&h)
    }

    fn add_strong(&mut self, g: Perm, level: usize) {
        if level == self.levels.len() {
            let moved = g.iter().enumerate().find(|(i, &x)| x as usize != *i).map(|(i, _)| i as u16);
            let Some(b) = moved else { return };
            self.levels.push(Level::new(b, self.degree));
        }
        let idx = self.strong.len();
        self.strong.push(g);
        for l in self.levels.iter_mut().take(level + 1) {
            l.gens.push(idx);
            l.processed.push(0);
        }
    }

    /// Process one pending (orbit point, generator) pair at `level`.
    /// Returns `false` when the level has no pending work.
    fn step(&mut self, level: usize) -> bool {
        let l = &self.levels[level];
        let Some(gi) = (0..l.gens.len()).find(|&i| l.processed[i] < l.orbit.len()) else {
            return false;
        };
        let point_idx = l.processed[gi];
        self.levels[level].processed[gi] += 1;
        let s = &self.strong[self.levels[level].gens[gi]];
        let l = &self.levels[level];
        let beta = l.orbit[point_idx];
        let gamma = s[beta as usize];
        let pos = l.position[gamma as usize];
        if pos == u32::MAX {
            let rep = then(&l.reps[point_idx], s);
            let inv = invert(&rep);
            let l = &mut self.levels[level];
            l.position[gamma as usize] = l.orbit.len() as u32;
            l.orbit.push(gamma);
            l.reps.push(rep);
            l.inv_reps.push(inv);
            return true;
        }
        // Schreier generator u_beta · s · u_gamma^{-1} fixes the base point.
        let h = then(&then(&l.reps[point_idx], s), &l.inv_reps[pos as usize]);
        let (residue, stop) = self.sift(h, level + 1);
        if !is_identity(&residue) {
            self.add_strong(residue, stop);
        }
        true
    }
}

/// Stabilizer chain by the incremental Schreier–Sims method. Base points are the
/// smallest points moved by the residues that create new levels, so the chain is a
/// deterministic function of the generator list.
pub fn schreier_sims(generators: &[Perm], degree: usize) -> Result<PermutationGroup> {
    if degree == 0 {
        return invalid("empty domain");
    }
    if degree > MAX_DEGREE {
        return Err(Error::Resource(format!("degree {degree} exceeds the cap {MAX_DEGREE}")));
    }
    for (k, g) in generators.iter().enumerate() {
        if g.len() != degree {
            return invalid(format!("generator {k} has length {}, expected {degree}", g.len()));
        }
        let mut seen = vec![false; degree];
        for &x in g {
            if x as usize >= degree || std::mem::replace(&mut seen[x as usize], true) {
                return invalid(format!("generator {k} is not a bijection"));
            }
        }
    }
    let mut group = PermutationGroup { degree, generators: generators.to_vec(), strong: Vec::new(), levels: Vec::new() };
    for g in generators {
        if is_identity(g) {
            continue;
        }
        let (residue, stop) = group.sift(g.clone(), 0);
        if !is_identity(&residue) {
            group.add_strong(residue, stop);
        }
        complete(&mut group);
    }
    Ok(group)
}

fn complete(group: &mut PermutationGroup) {
    loop {
        // Always work at the deepest level with pending pairs.
        let Some(level) = (0..group.levels.len()).rev().find(|&i| {
            let l = &group.levels[i];
            l.processed.iter().any(|&p| p < l.orbit.len())
        }) else {
            return;
        };
        while group.step(level) {
            let deeper = (level + 1..group.levels.len()).any(|i| {
                let l = &group.levels[i];
                l.processed.iter().any(|&p| p < l.orbit.len())
            });
            if deeper {
                break;
            }
        }
    }
}

/// `|Sp_{2g}(F_2)| = 2^{g^2} ∏_{i=1}^{g} (4^i - 1)`.
pub fn sp_order(g: u32) -> BigUint {
    let mut n = BigUint::from(1u32) << (g * g) as usize;
    for i in 1..=g {
        n *= (BigUint::from(1u32) << (2 * i) as usize) - BigUint::from(1u32);
    }
    n
}

/// The transvection `x -> x + <x, v> v` on `F_2^{2g}` as a permutation of `0..2^{2g}`.
pub fn transvection_perm(g: usize, v: u64) -> Result<Perm> {
    if g == 0 || 2 * g > 16 {
        return Err(Error::Resource(format!("genus {g} gives a domain beyond 2^16")));
    }
    Ok((0u64..1 << (2 * g)).map(|x| (if pair_mod2(x, v) == 1 { x ^ v } else { x }) as u16).collect())
}

/// Transvections about `a_i`, `b_i` and `a_i + a_{i+1}`; they generate `Sp_{2g}(F_2)`.
pub fn symplectic_generators(g: usize) -> Result<Vec<Perm>> {
    let mut out = Vec::new();
    for i in 0..g {
        out.push(transvection_perm(g, 1 << (2 * i))?);
        out.push(transvection_perm(g, 1 << (2 * i + 1))?);
        if i + 1 < g {
            out.push(transvection_perm(g, (1 << (2 * i)) | (1 << (2 * i + 2)))?);
        }
    }
    Ok(out)
}

/// Orbit of `q` under the linear maps given by permutations of bit-packed vectors,
/// acting by `q -> q ∘ M^{-1}`.
pub fn form_orbit(q: &QuadraticForm, generators: &[Perm]) -> Result<BTreeSet<u64>> {
    let g = q.genus();
    let degree = 1usize << (2 * g);
    let inverses: Vec<Perm> = generators
        .iter()
        .map(|p| {
            if p.len() != degree {
                return invalid("generator does not act on F_2^{2g}");
            }
            Ok(invert(p))
        })
        .collect::<Result<_>>()?;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(q.bits());
    queue.push_back(q.clone());
    while let Some(f) = queue.pop_front() {
        for inv in &inverses {
            let images: Vec<u64> = (0..2 * g).map(|i| inv[1 << i] as u64).collect();
            let next = f.pullback(&images)?;
            if seen.insert(next.bits()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Generators of the stabilizer of `q` from Schreier's lemma over its orbit.
pub fn form_stabilizer_generators(q: &QuadraticForm, generators: &[Perm]) -> Result<Vec<Perm>> {
    let g = q.genus();
    let degree = 1usize << (2 * g);
    let act = |f: &QuadraticForm, p: &Perm| -> Result<QuadraticForm> {
        let inv = invert(p);
        f.pullback(&(0..2 * g).map(|i| inv[1 << i] as u64).collect::<Vec<_>>())
    };
    // Spanning tree of the orbit with transversal elements t_f mapping q to f.
    let mut reps: Vec<(u64, Perm)> = vec![(q.bits(), identity_perm(degree))];
    let mut index = std::collections::BTreeMap::new();
    index.insert(q.bits(), 0usize);
    let mut i = 0;
    while i < reps.len() {
        let (bits, t) = reps[i].clone();
        let f = QuadraticForm::from_bits(g, bits)?;
        for p in generators {
            let h = act(&f, p)?.bits();
            if let std::collections::btree_map::Entry::Vacant(e) = index.entry(h) {
                e.insert(reps.len());
                reps.push((h, then(&t, p)));
            }
        }
        i += 1;
    }
    let mut out = Vec::new();
    for (bits, t) in &reps {
        let f = QuadraticForm::from_bits(g, *bits)?;
        for p in generators {
            let h = act(&f, p)?.bits();
            let tp = &reps[index[&h]].1;
            let s = then(&then(t, p), &invert(tp));
            if !is_identity(&s) {
                out.push(s);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct BeauvilleReport {
    pub transvections: usize,
    pub fixes_q: Vec<bool>,
    pub arf: u8,
    pub arf_by_count: u8,
    /// Decimal strings.
    pub group_order: String,
    pub sp_order: String,
    pub odd_forms: String,
    pub expected_order: String,
    pub orbit_lengths: Vec<usize>,
    pub order_matches: bool,
    pub passed: bool,
}

/// Reduce the 16 vanishing-cycle transvections of a validated d = 5 realization mod 2 and
/// compare the group they generate with the stabilizer of the odd spin structure.
pub fn beauville_check(realization: &LonneRealization) -> Result<BeauvilleReport> {
    if realization.graph.d() != 5 {
        return invalid("the stabilizer check is for d = 5");
    }
    if !realization.validation.passed() {
        return invalid("realization has not passed validation");
    }
    let g = realization.surface.genus();
    let vectors: Vec<u64> = realization.assignment.iter().map(|c| c.h().mod2_bits()).collect();
    // q = w + 1 with w = 0 on vanishing cycles.
    let values: Vec<u8> = realization.assignment.iter().map(|c| ((c.w() + 1).rem_euclid(2)) as u8).collect();
    let q = QuadraticForm::solve_from_values(g, &vectors, &values)?;
    let perms = vectors.iter().map(|&v| transvection_perm(g, v)).collect::<Result<Vec<_>>>()?;
    let degree = 1usize << (2 * g);
    let fixes_q: Vec<bool> =
        perms.iter().map(|p| (0..degree).all(|x| q.eval(p[x] as u64) == q.eval(x as u64))).collect();
    let group = schreier_sims(&perms, degree)?;
    let order = group.order();
    let sp = sp_order(g as u32);
    let odd = (BigUint::from(1u32) << (g - 1)) * ((BigUint::from(1u32) << g) - BigUint::from(1u32));
    let expected = &sp / &odd;
    let exact = &expected * &odd == sp;
    let order_matches = exact && order == expected;
    let a = arf(&q);
    let a_count = arf_by_count(&q);
    let passed = fixes_q.iter().all(|&b| b) && a == 1 && a_count == 1 && order_matches;
    Ok(BeauvilleReport {
        transvections: perms.len(),
        fixes_q,
        arf: a,
        arf_by_count: a_count,
        group_order: order.to_string(),
        sp_order: sp.to_string(),
        odd_forms: odd.to_string(),
        expected_order: expected.to_string(),
        orbit_lengths: group.orbit_lengths(),
        order_matches,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_cycles(n: usize, cycles: &[&[u16]]) -> Perm {
        let mut p = identity_perm(n);
        for c in cycles {
            for k in 0..c.len() {
                p[c[k] as usize] = c[(k + 1) % c.len()];
            }
        }
        p
    }

    #[test]
    fn symmetric_group_on_three_points() {
        let gens = vec![from_cycles(3, &[&[0, 1]]), from_cycles(3, &[&[1, 2]])];
        assert_eq!(schreier_sims(&gens, 3).unwrap().order(), BigUint::from(6u32));
        assert_eq!(schreier_sims(&[], 3).unwrap().order(), BigUint::from(1u32));
        assert!(schreier_sims(&[vec![0, 0, 1]], 3).is_err());
    }

    #[test]
    fn sp2_on_nonzero_vectors() {
        // Drop the fixed zero vector: act on {1, 2, 3}.
        let gens: Vec<Perm> = [0b01u64, 0b10]
            .iter()
            .map(|&v| transvection_perm(1, v).unwrap()[1..].iter().map(|&x| x - 1).collect())
            .collect();
        assert_eq!(schreier_sims(&gens, 3).unwrap().order(), BigUint::from(6u32));
    }

    #[test]
    fn symplectic_orders() {
        assert_eq!(sp_order(1), BigUint::from(6u32));
        assert_eq!(sp_order(2), BigUint::from(720u32));
        for g in 1..=3 {
            let gens = symplectic_generators(g).unwrap();
            let grp = schreier_sims(&gens, 1 << (2 * g)).unwrap();
            assert_eq!(grp.order(), sp_order(g as u32));
            for p in &gens {
                assert!(grp.contains(p));
            }
        }
    }

    #[test]
    fn odd_form_orbit_genus_two() {
        let q = QuadraticForm::new(2, vec![1, 1, 0, 0]).unwrap();
        assert_eq!(arf(&q), 1);
        let gens = symplectic_generators(2).unwrap();
        assert_eq!(form_orbit(&q, &gens).unwrap().len(), 6);
    }
}

#[cfg(test)]
mod beauville_tests {
    use super::*;
    use crate::lonne::realize;

    #[test]
    fn d5_stabilizer_order() {
        let r = beauville_check(&realize(5).unwrap()).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
