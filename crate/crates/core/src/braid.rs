//! Free groups, the Artin action of braids on them, and exact braid identities.

use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Length guard on automorphism images.
pub const MAX_IMAGE_LETTERS: usize = 1_000_000;

/// Freely reduced word; letter `+i` is `x_i`, `-i` is `x_i^{-1}` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Self(vec![i as i32])
    }

    /// Reduce an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `w^{-1}`-free conjugate `a w a^{-1}`.
    pub fn conjugate_by(&self, a: &Self) -> Self {
        a.mul(self).mul(&a.inverse())
    }

    /// Exponent sums per generator (abelianization), length `rank`.
    pub fn abelianize(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for &l in &self.0 {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }
}

/// Automorphism of the free group of rank `r`, given by generator images, with
/// the images of the inverse kept alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroupAutomorphism {
    rank: usize,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

fn substitute(word: &FreeWord, images: &[FreeWord]) -> Result<FreeWord> {
    let mut letters = Vec::new();
    for &l in word.letters() {
        let img = &images[l.unsigned_abs() as usize - 1];
        if l > 0 {
            letters.extend_from_slice(img.letters());
        } else {
            letters.extend(img.letters().iter().rev().map(|x| -x));
        }
        if letters.len() > 4 * MAX_IMAGE_LETTERS {
            return Err(Error::Resource("free word grew past the letter cap".into()));
        }
    }
    let out = FreeWord::from_letters(letters);
    if out.len() > MAX_IMAGE_LETTERS {
        return Err(Error::Resource(format!("image of length {} exceeds the cap", out.len())));
    }
    Ok(out)
}

impl FreeGroupAutomorphism {
    pub fn identity(rank: usize) -> Self {
        let images: Vec<FreeWord> = (1..=rank).map(FreeWord::generator).collect();
        Self { rank, inverse_images: images.clone(), images }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[FreeWord] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        substitute(w, &self.images)
    }

    pub fn inverse(&self) -> Self {
        Self { rank: self.rank, images: self.inverse_images.clone(), inverse_images: self.images.clone() }
    }

    /// `self ∘ inner`: `x -> self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.rank != inner.rank {
            return invalid("automorphisms of free groups of different rank");
        }
        let images = inner.images.iter().map(|w| substitute(w, &self.images)).collect::<Result<_>>()?;
        let inverse_images =
            self.inverse_images.iter().map(|w| substitute(w, &inner.inverse_images)).collect::<Result<_>>()?;
        Ok(Self { rank: self.rank, images, inverse_images })
    }

    /// Compose a list right to left (`factors[0]` acts last).
    pub fn product(rank: usize, factors: &[Self]) -> Result<Self> {
        let mut acc = Self::identity(rank);
        for f in factors {
            acc = acc.compose(f)?;
        }
        Ok(acc)
    }

    pub fn power(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, w)| w.letters() == [(i + 1) as i32])
    }

    /// `x_1 x_2 ... x_r`.
    pub fn boundary_word(rank: usize) -> FreeWord {
        FreeWord((1..=rank as i32).collect())
    }

    pub fn preserves_boundary(&self) -> Result<bool> {
        let b = Self::boundary_word(self.rank);
        Ok(self.apply(&b)? == b)
    }

    /// The puncture permutation: `x_i` goes to a conjugate of `x_{π(i)}` (0-based).
    pub fn permutation(&self) -> Result<Vec<usize>> {
        self.images
            .iter()
            .map(|w| {
                let ab = w.abelianize(self.rank);
                let nonzero: Vec<usize> = (0..self.rank).filter(|&j| ab[j] != 0).collect();
                match nonzero.as_slice() {
                    [j] if ab[*j] == 1 => Ok(*j),
                    _ => Err(Error::InvalidInput("automorphism does not permute conjugacy classes of generators".into())),
                }
            })
            .collect()
    }

    /// Whether `compose(inverse)` is the identity.
    pub fn inverse_is_exact(&self) -> Result<bool> {
        Ok(self.compose(&self.inverse())?.is_identity() && self.inverse().compose(self)?.is_identity())
    }
}

/// Artin generator: `x_i -> x_i x_{i+1} x_i^{-1}`, `x_{i+1} -> x_i`.
pub fn artin_halftwist(i: usize, r: usize) -> Result<FreeGroupAutomorphism> {
    if i == 0 || i >= r {
        return invalid(format!("half-twist index {i} out of range for rank {r}"));
    }
    let mut a = FreeGroupAutomorphism::identity(r);
    let (xi, xj) = (i as i32, (i + 1) as i32);
    a.images[i - 1] = FreeWord::from_letters([xi, xj, -xi]);
    a.images[i] = FreeWord::from_letters([xi]);
    a.inverse_images[i - 1] = FreeWord::from_letters([xj]);
    a.inverse_images[i] = FreeWord::from_letters([-xj, xi, xj]);
    Ok(a)
}

/// A round curve in the punctured disk enclosing the consecutive punctures `first..=last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PuncturedDiskCurve {
    pub first: usize,
    pub last: usize,
}

impl PuncturedDiskCurve {
    pub fn new(first: usize, last: usize, r: usize) -> Result<Self> {
        if first == 0 || first > last || last > r {
            return invalid(format!("interval [{first}..{last}] invalid for {r} punctures"));
        }
        Ok(Self { first, last })
    }

    pub fn contains(&self, p: usize) -> bool {
        self.first <= p && p <= self.last
    }
}

/// Full twist about an interval curve: conjugate `x_first .. x_last` by their product.
pub fn subset_twist(curve: PuncturedDiskCurve, r: usize) -> Result<FreeGroupAutomorphism> {
    let curve = PuncturedDiskCurve::new(curve.first, curve.last, r)?;
    let a = FreeWord::from_letters((curve.first as i32)..=(curve.last as i32));
    let mut t = FreeGroupAutomorphism::identity(r);
    for k in curve.first..=curve.last {
        let x = FreeWord::generator(k);
        t.images[k - 1] = x.conjugate_by(&a);
        t.inverse_images[k - 1] = x.conjugate_by(&a.inverse());
    }
    Ok(t)
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaCandidate {
    pub interval: PuncturedDiskCurve,
    pub rotation: bool,
    pub capped_identity: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlapReport {
    pub g: usize,
    pub punctures: usize,
    /// Puncture 1 is the capped inner boundary (hole), 2..=2g+2 are `p_1 .. p_{2g+1}`.
    pub candidates: Vec<AlphaCandidate>,
    pub selected_alpha: Option<PuncturedDiskCurve>,
    pub alpha_unique: bool,
    /// `T_{δ2} = (T_α σ_1 ⋯ σ_{2g})^{2g+1}` with `T_{δ1}` capped away.
    pub capped_identity: bool,
    /// `f = T_α σ_1 ⋯ σ_{2g}` permutes `p_i -> p_{i+1}` and fixes the hole.
    pub f_is_rotation: bool,
    pub f_power_is_boundary_twist: bool,
    pub f_preserves_boundary: bool,
    /// Hole-linking exponents: `T_α`, `T_{δ1}`, `T_{δ2}` count 1, half-twists 0.
    pub ledger_lhs_without_delta1: i64,
    pub ledger_rhs: i64,
    /// Solved exponent of `T_{δ1}`; should be `2g`.
    pub delta1_exponent: i64,
    pub passed: bool,
}

/// Hole-linking count of a full twist about an interval curve: 1 when the curve
/// encloses the hole together with at least one other puncture, or is the hole's own
/// boundary; half-twists of two non-hole punctures count 0. The count is additive
/// over products of such twists.
fn hole_linking(curve: PuncturedDiskCurve) -> i64 {
    curve.contains(1) as i64
}

/// Exact check of the flap relation in the capped Artin action on `2g + 2` strands.
pub fn verify_flap(g: usize) -> Result<FlapReport> {
    if !(1..=4).contains(&g) {
        return invalid(format!("flap check supports 1 <= g <= 4, got {g}"));
    }
    let r = 2 * g + 2;
    let sigmas = (1..=2 * g).map(|i| artin_halftwist(i + 1, r)).collect::<Result<Vec<_>>>()?;
    let delta2 = subset_twist(PuncturedDiskCurve::new(1, r, r)?, r)?;
    let rotation: Vec<usize> = std::iter::once(0).chain((1..r).map(|p| if p + 1 < r { p + 1 } else { 1 })).collect();

    let mut candidates = Vec::new();
    let mut winners = Vec::new();
    for first in 1..=r {
        for last in first + 1..=r {
            let alpha = PuncturedDiskCurve::new(first, last, r)?;
            let mut factors = vec![subset_twist(alpha, r)?];
            factors.extend(sigmas.iter().cloned());
            let f = FreeGroupAutomorphism::product(r, &factors)?;
            let is_rotation = f.permutation()? == rotation;
            let capped = f.power(2 * g as i64 + 1)? == delta2;
            if is_rotation && capped {
                winners.push((alpha, f));
            }
            candidates.push(AlphaCandidate { interval: alpha, rotation: is_rotation, capped_identity: capped });
        }
    }
    let alpha_unique = winners.len() == 1;
    let Some((alpha, f)) = winners.into_iter().next() else {
        return Ok(FlapReport {
            g,
            punctures: r,
            candidates,
            selected_alpha: None,
            alpha_unique,
            capped_identity: false,
            f_is_rotation: false,
            f_power_is_boundary_twist: false,
            f_preserves_boundary: false,
            ledger_lhs_without_delta1: 0,
            ledger_rhs: 0,
            delta1_exponent: 0,
            passed: false,
        });
    };
    let f_power = f.power(2 * g as i64 + 1)?;
    let boundary = FreeGroupAutomorphism::boundary_word(r);
    let central = (1..=r).all(|i| {
        f_power.images()[i - 1] == FreeWord::generator(i).conjugate_by(&boundary)
    });
    let ledger_lhs = hole_linking(PuncturedDiskCurve::new(1, r, r)?);
    let ledger_rhs = (2 * g as i64 + 1) * hole_linking(alpha);
    let delta1_exponent = (ledger_rhs - ledger_lhs) / hole_linking(PuncturedDiskCurve::new(1, 1, r)?);
    let f_preserves_boundary = f.preserves_boundary()?;
    let passed = alpha_unique && central && f_preserves_boundary && delta1_exponent == 2 * g as i64;
    Ok(FlapReport {
        g,
        punctures: r,
        candidates,
        selected_alpha: Some(alpha),
        alpha_unique,
        capped_identity: true,
        f_is_rotation: true,
        f_power_is_boundary_twist: central,
        f_preserves_boundary,
        ledger_lhs_without_delta1: ledger_lhs,
        ledger_rhs,
        delta1_exponent,
        passed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainBraidShadow {
    pub k: usize,
    pub strands: usize,
    /// `(σ_1^2 σ_2 ⋯ σ_k)^k` equals the full twist about all `k + 1` strands.
    pub matches_boundary_twist: bool,
    pub max_image_length: usize,
}

/// Braid shadow of the chain relation on `k + 1` strands.
pub fn chain_braid_shadow(k: usize) -> Result<ChainBraidShadow> {
    let r = k + 1;
    let mut factors = vec![artin_halftwist(1, r)?, artin_halftwist(1, r)?];
    for i in 2..=k {
        factors.push(artin_halftwist(i, r)?);
    }
    let base = FreeGroupAutomorphism::product(r, &factors)?;
    let lhs = base.power(k as i64)?;
    let rhs = subset_twist(PuncturedDiskCurve::new(1, r, r)?, r)?;
    Ok(ChainBraidShadow {
        k,
        strands: r,
        matches_boundary_twist: lhs == rhs,
        max_image_length: lhs.images().iter().map(|w| w.len()).max().unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halftwist_definition_and_braid_relation() {
        let s = artin_halftwist(1, 2).unwrap();
        assert_eq!(s.images()[0].letters(), &[1, 2, -1]);
        assert_eq!(s.images()[1].letters(), &[1]);
        let s1 = artin_halftwist(1, 3).unwrap();
        let s2 = artin_halftwist(2, 3).unwrap();
        let lhs = FreeGroupAutomorphism::product(3, &[s1.clone(), s2.clone(), s1.clone()]).unwrap();
        let rhs = FreeGroupAutomorphism::product(3, &[s2.clone(), s1.clone(), s2]).unwrap();
        assert_eq!(lhs, rhs);
        assert!(s1.preserves_boundary().unwrap());
        assert!(s1.inverse_is_exact().unwrap());
    }

    #[test]
    fn subset_twist_examples() {
        let sq = artin_halftwist(1, 2).unwrap().power(2).unwrap();
        assert_eq!(subset_twist(PuncturedDiskCurve { first: 1, last: 2 }, 2).unwrap(), sq);
        assert!(subset_twist(PuncturedDiskCurve { first: 2, last: 2 }, 3).unwrap().is_identity());
        assert!(subset_twist(PuncturedDiskCurve { first: 0, last: 2 }, 3).is_err());
        let full = subset_twist(PuncturedDiskCurve { first: 1, last: 4 }, 4).unwrap();
        assert!(full.preserves_boundary().unwrap());
        assert!(full.inverse_is_exact().unwrap());
    }

    #[test]
    fn flap_small_genus() {
        let r = verify_flap(1).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.selected_alpha, Some(PuncturedDiskCurve { first: 1, last: 2 }));
        assert_eq!(r.delta1_exponent, 2);
        assert!(verify_flap(2).unwrap().passed);
    }

    #[test]
    fn chain_shadow_small() {
        assert!(chain_braid_shadow(3).unwrap().matches_boundary_twist);
        assert!(chain_braid_shadow(5).unwrap().matches_boundary_twist);
    }
}
