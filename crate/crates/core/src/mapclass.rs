//! Twist words, their evaluation, and membership tests in the representation.
//!
//! Every test here is a necessary condition for the corresponding statement in the
//! mapping class group, never a sufficient one.

use crate::affine::AffineSymplecticMap;
use crate::error::{invalid, Result};
use crate::symplectic::{FramedCurveClass, Provenance, SurfaceModel};
use crate::winding::WindingFunction;

/// Product of twists, applied right to left: `factors[0]` acts last.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistWord {
    surface: SurfaceModel,
    factors: Vec<(FramedCurveClass, i64)>,
}

impl TwistWord {
    pub fn empty(surface: SurfaceModel) -> Self {
        Self { surface, factors: Vec::new() }
    }

    pub fn new(surface: SurfaceModel, factors: Vec<(FramedCurveClass, i64)>) -> Result<Self> {
        let mut w = Self::empty(surface);
        for (c, k) in factors {
            w.push(c, k)?;
        }
        Ok(w)
    }

    pub fn single(c: &FramedCurveClass, k: i64) -> Result<Self> {
        Self::new(c.surface(), vec![(c.clone(), k)])
    }

    /// Append a factor on the right (it acts before everything already present).
    pub fn push(&mut self, c: FramedCurveClass, k: i64) -> Result<()> {
        if c.surface() != self.surface {
            return invalid("twist word mixes surface models");
        }
        if k == 0 {
            return invalid("twist exponents must be nonzero");
        }
        self.factors.push((c, k));
        Ok(())
    }

    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    pub fn factors(&self) -> &[(FramedCurveClass, i64)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `self · other` as mapping classes (`other` acts first).
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if other.surface != self.surface {
            return invalid("twist word mixes surface models");
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(Self { surface: self.surface, factors })
    }

    pub fn inverse(&self) -> Self {
        let factors = self.factors.iter().rev().map(|(c, k)| (c.clone(), -k)).collect();
        Self { surface: self.surface, factors }
    }

    /// `self^k` for any integer `k`.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut factors = Vec::with_capacity(base.factors.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            factors.extend(base.factors.iter().cloned());
        }
        Self { surface: self.surface, factors }
    }
}

/// Evaluate a word to its affine-symplectic map.
pub fn evaluate(word: &TwistWord) -> Result<AffineSymplecticMap> {
    let mut map = AffineSymplecticMap::identity(word.surface);
    for (c, k) in word.factors.iter().rev() {
        if c.surface() != word.surface {
            return invalid("twist word mixes surface models");
        }
        map.twist_left(c, *k);
    }
    Ok(map)
}

/// Apply a word to a framed class.
pub fn apply_word(word: &TwistWord, c: &FramedCurveClass) -> Result<FramedCurveClass> {
    evaluate(word)?.apply(c)
}

/// Whether the word fixes every basis framing of `phi`.
///
/// `phi` may carry a divisor of the word's modulus (e.g. a spin reduction), in which
/// case all framings are reduced first. Factors must have trusted framings, and basis
/// factors must agree with `phi`.
pub fn stabilizes(word: &TwistWord, phi: &WindingFunction) -> Result<bool> {
    let s = word.surface;
    let ps = phi.surface();
    if s.genus() != ps.genus() || s.boundary_count() != 0 {
        return invalid("word and winding function live on different surfaces");
    }
    let n = s.modulus();
    let m = ps.modulus();
    if n == 0 || !n.is_multiple_of(m) {
        return invalid(format!("winding modulus {m} does not divide the word modulus {n}"));
    }
    for (c, _) in &word.factors {
        match c.provenance() {
            Provenance::Declared => {
                return invalid(format!(
                    "twist factor {} has a declared framing with no construction behind it",
                    c.h()
                ))
            }
            Provenance::Basis { index } => {
                if c.w().rem_euclid(m as i64) != phi.basis_values()[index] {
                    return invalid(format!(
                        "basis factor {index} has framing {} but the winding function says {}",
                        c.w(),
                        phi.basis_values()[index]
                    ));
                }
            }
            Provenance::Vanishing | Provenance::Derived => {}
        }
    }
    let map = evaluate(word)?;
    let v = if m == n { map } else { map.reduce_modulus(m)? };
    Ok(v.correction().iter().all(|&x| x == 0))
}

/// Matrix part is the identity.
pub fn is_torelli(word: &TwistWord) -> Result<bool> {
    Ok(evaluate(word)?.is_identity_matrix())
}

/// Both words evaluate to the same affine-symplectic map.
pub fn relation_holds(lhs: &TwistWord, rhs: &TwistWord) -> Result<bool> {
    if lhs.surface != rhs.surface {
        return invalid("relation sides live on different surface models");
    }
    Ok(evaluate(lhs)? == evaluate(rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::twist_map;
    use crate::symplectic::HomologyClass;

    fn torus(n: u32) -> SurfaceModel {
        SurfaceModel::new(1, 0, n).unwrap()
    }

    fn fc(s: SurfaceModel, h: &[i64], w: i64) -> FramedCurveClass {
        FramedCurveClass::declared(HomologyClass::new(s, h.to_vec()).unwrap(), w)
    }

    #[test]
    fn braid_moves_a_to_b() {
        let s = torus(0);
        let a = fc(s, &[1, 0], 0);
        let b = fc(s, &[0, 1], 0);
        let w = TwistWord::new(s, vec![(a.clone(), 1), (b.clone(), 1)]).unwrap();
        let out = apply_word(&w, &a).unwrap();
        assert_eq!(out.h().coeffs(), &[0, 1]);
    }

    #[test]
    fn single_factor_matches_twist_map() {
        let s = torus(4);
        let c = fc(s, &[2, 1], 3);
        assert_eq!(evaluate(&TwistWord::single(&c, -2).unwrap()).unwrap(), twist_map(&c, -2));
        assert!(evaluate(&TwistWord::empty(s)).unwrap().is_identity());
    }

    #[test]
    fn braid_and_commutation_relations() {
        let s = SurfaceModel::new(2, 0, 0).unwrap();
        let a = fc(s, &[1, 0, 0, 0], 0);
        let b = fc(s, &[0, 1, 0, 0], 0);
        let c = fc(s, &[0, 0, 1, 0], 0);
        let aba = TwistWord::new(s, vec![(a.clone(), 1), (b.clone(), 1), (a.clone(), 1)]).unwrap();
        let bab = TwistWord::new(s, vec![(b.clone(), 1), (a.clone(), 1), (b.clone(), 1)]).unwrap();
        assert!(relation_holds(&aba, &bab).unwrap());
        let ac = TwistWord::new(s, vec![(a.clone(), 1), (c.clone(), 1)]).unwrap();
        let ca = TwistWord::new(s, vec![(c.clone(), 1), (a.clone(), 1)]).unwrap();
        assert!(relation_holds(&ac, &ca).unwrap());
        let aca = TwistWord::new(s, vec![(a.clone(), 1), (c.clone(), 1), (a.clone(), 1)]).unwrap();
        let cac = TwistWord::new(s, vec![(c.clone(), 1), (a.clone(), 1), (c.clone(), 1)]).unwrap();
        assert!(!relation_holds(&aca, &cac).unwrap());
    }

    #[test]
    fn word_times_inverse_is_identity() {
        let s = torus(3);
        let a = fc(s, &[1, 0], 1);
        let b = fc(s, &[1, 1], 2);
        let w = TwistWord::new(s, vec![(a, 2), (b, -1)]).unwrap();
        assert!(evaluate(&w.concat(&w.inverse()).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn mixed_surfaces_rejected() {
        let a = fc(torus(0), &[1, 0], 0);
        let mut w = TwistWord::empty(torus(2));
        assert!(w.push(a, 1).is_err());
    }

    #[test]
    fn torelli_basics() {
        let s = torus(0);
        assert!(is_torelli(&TwistWord::empty(s)).unwrap());
        assert!(!is_torelli(&TwistWord::single(&fc(s, &[1, 0], 0), 1).unwrap()).unwrap());
    }
}
