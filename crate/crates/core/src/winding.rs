//! Winding-number functions (twist-linear framings), quadratic forms over F_2 and Arf.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::lattice::solve_f2;
use crate::symplectic::{FramedCurveClass, HomologyClass, Provenance, SurfaceModel};

/// Values of an n-spin structure on the coordinate curves `a_1, b_1, ..., a_g, b_g`
/// of a closed surface, plus the value `z` on a fiber (a small loop around a point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingFunction {
    surface: SurfaceModel,
    basis_values: Vec<i64>,
    fiber: i64,
}

fn gcd_u(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

impl WindingFunction {
    pub fn new(surface: SurfaceModel, basis_values: Vec<i64>, fiber: i64) -> Result<Self> {
        let n = surface.modulus() as i64;
        if surface.boundary_count() != 0 || n < 2 {
            return invalid("winding functions live on closed surfaces with modulus at least 2");
        }
        if basis_values.len() != 2 * surface.genus() {
            return invalid(format!(
                "expected {} basis values, got {}",
                2 * surface.genus(),
                basis_values.len()
            ));
        }
        let fiber = fiber.rem_euclid(n);
        if gcd_u(fiber, n) != 1 {
            return invalid(format!("fiber value {fiber} is not a unit mod {n}"));
        }
        if ((2 * surface.genus() as i64 - 2) * fiber).rem_euclid(n) != 0 {
            return invalid("(2g-2) z is not zero mod n");
        }
        let basis_values = basis_values.into_iter().map(|s| s.rem_euclid(n)).collect();
        Ok(Self { surface, basis_values, fiber })
    }

    /// Build from the values on a standard chain `c_1, ..., c_{2g}` where
    /// `c_1 = a_1`, `c_{2k} = b_k`, `c_{2k+1} = a_{k+1} - a_k`.
    ///
    /// A connector `a_{k+1} - a_k` is a band sum of two disjoint curves, so its value is
    /// `s(a_{k+1}) - s(a_k) - z`; solving that for `s(a_{k+1})` gives the recursion here.
    pub fn from_standard_chain(surface: SurfaceModel, chain_values: &[i64], fiber: i64) -> Result<Self> {
        let g = surface.genus();
        if chain_values.len() != 2 * g {
            return invalid(format!("a standard chain on genus {g} has {} curves", 2 * g));
        }
        let mut s = vec![0; 2 * g];
        s[0] = chain_values[0];
        for k in 0..g {
            s[2 * k + 1] = chain_values[2 * k + 1];
            if k + 1 < g {
                s[2 * k + 2] = s[2 * k] + chain_values[2 * k + 2] + fiber;
            }
        }
        Self::new(surface, s, fiber)
    }

    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    pub fn modulus(&self) -> u32 {
        self.surface.modulus()
    }

    pub fn basis_values(&self) -> &[i64] {
        &self.basis_values
    }

    pub fn fiber_value(&self) -> i64 {
        self.fiber
    }

    /// The coordinate curve `index` framed by this function.
    pub fn basis_curve(&self, index: usize) -> Result<FramedCurveClass> {
        if index >= self.basis_values.len() {
            return invalid(format!("basis index {index} out of range"));
        }
        FramedCurveClass::basis(self.surface, index, self.basis_values[index])
    }

    /// `a_k` for `k` in `1..=g`.
    pub fn a(&self, k: usize) -> Result<FramedCurveClass> {
        self.basis_curve(2 * (k - 1))
    }

    /// `b_k` for `k` in `1..=g`.
    pub fn b(&self, k: usize) -> Result<FramedCurveClass> {
        self.basis_curve(2 * (k - 1) + 1)
    }

    /// The connector `a_{k+1} - a_k` (a band sum of `a_{k+1}` and `-a_k`), `1 <= k < g`.
    pub fn connector(&self, k: usize) -> Result<FramedCurveClass> {
        let g = self.surface.genus();
        if k == 0 || k >= g {
            return invalid(format!("connector index {k} out of range for genus {g}"));
        }
        let h = self.a(k + 1)?.h().sub(self.a(k)?.h())?;
        let w = self.basis_values[2 * k] - self.basis_values[2 * k - 2] - self.fiber;
        Ok(FramedCurveClass::with_provenance(h, w, Provenance::Derived))
    }

    /// Reduce all values mod a divisor `m` of `n`.
    pub fn reduce_modulus(&self, m: u32) -> Result<Self> {
        let n = self.modulus();
        if m < 2 || !n.is_multiple_of(m) {
            return invalid(format!("{m} is not a divisor of {n} that is at least 2"));
        }
        Self::new(self.surface.with_modulus(m), self.basis_values.clone(), self.fiber)
    }

    /// Multiply all values by `k` without changing the modulus (e.g. `(d-3)/2 · φ`).
    ///
    /// The result is generally not a winding function (the fiber value need not stay a
    /// unit), so only the raw values are returned.
    pub fn scaled_values(&self, k: i64) -> (Vec<i64>, i64) {
        let n = self.modulus() as i64;
        (
            self.basis_values.iter().map(|s| (s * k).rem_euclid(n)).collect(),
            (self.fiber * k).rem_euclid(n),
        )
    }

    /// For even `n`, the classical spin structure `(n/2)·φ`, written with values mod 2.
    pub fn spin_reduction(&self) -> Result<Self> {
        if !self.modulus().is_multiple_of(2) {
            return invalid("spin reduction needs an even modulus");
        }
        self.reduce_modulus(2)
    }

    /// The mod-2 quadratic form with `q = w + 1` on curves.
    pub fn quadratic_form(&self) -> Result<QuadraticForm> {
        if !self.modulus().is_multiple_of(2) {
            return invalid("a quadratic form needs an even modulus");
        }
        let diag = self.basis_values.iter().map(|s| ((s + 1).rem_euclid(2)) as u8).collect();
        QuadraticForm::new(self.surface.genus(), diag)
    }
}

/// Whether the framed boundary curves of a subsurface satisfy `Σ w(b_i) = chi · z (mod n)`.
pub fn subsurface_sum(boundary: &[FramedCurveClass], chi: i64, phi: &WindingFunction) -> Result<bool> {
    if boundary.is_empty() {
        return invalid("a subsurface needs at least one boundary curve");
    }
    let n = phi.modulus() as i64;
    let total: i64 = boundary.iter().map(|c| c.w()).sum();
    Ok((total - chi * phi.fiber_value()).rem_euclid(n) == 0)
}

/// Quadratic refinement of the mod-2 intersection form on `F_2^{2g}`.
///
/// Vectors are bit-packed with `a_i` at bit `2i` and `b_i` at bit `2i+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticForm {
    g: usize,
    diag: Vec<u8>,
}

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// Mod-2 intersection of bit-packed vectors.
pub fn pair_mod2(x: u64, y: u64) -> u8 {
    ((((x & (y >> 1)) ^ ((x >> 1) & y)) & EVEN_BITS).count_ones() & 1) as u8
}

impl QuadraticForm {
    pub fn new(g: usize, diag: Vec<u8>) -> Result<Self> {
        if g == 0 || g > 16 {
            return invalid(format!("genus {g} outside 1..=16"));
        }
        if diag.len() != 2 * g || diag.iter().any(|&q| q > 1) {
            return invalid("diagonal must hold 2g bits");
        }
        Ok(Self { g, diag })
    }

    pub fn from_bits(g: usize, bits: u64) -> Result<Self> {
        Self::new(g, (0..2 * g).map(|i| ((bits >> i) & 1) as u8).collect())
    }

    /// The unique form taking the given values on vectors spanning `F_2^{2g}`.
    pub fn solve_from_values(g: usize, vectors: &[u64], values: &[u8]) -> Result<Self> {
        if vectors.len() != values.len() {
            return invalid("one value per vector expected");
        }
        // q(x) = Σ q_i x_i + Σ_k x_{a_k} x_{b_k}: linear in the unknowns q_i.
        let cross = |x: u64| ((x & (x >> 1) & EVEN_BITS).count_ones() & 1) as u8;
        let rhs: Vec<u8> = vectors.iter().zip(values).map(|(&x, &v)| (v ^ cross(x)) & 1).collect();
        let bits = solve_f2(vectors, &rhs, 2 * g)
            .ok_or_else(|| Error::InvalidInput("values do not determine a unique quadratic form".into()))?;
        Self::from_bits(g, bits)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn diag(&self) -> &[u8] {
        &self.diag
    }

    pub fn bits(&self) -> u64 {
        self.diag.iter().enumerate().fold(0, |acc, (i, &q)| acc | ((q as u64) << i))
    }

    pub fn eval(&self, x: u64) -> u8 {
        let lin = (self.bits() & x).count_ones();
        let cross = (x & (x >> 1) & EVEN_BITS).count_ones();
        ((lin + cross) & 1) as u8
    }

    pub fn eval_class(&self, h: &HomologyClass) -> u8 {
        self.eval(h.mod2_bits())
    }

    /// `q ∘ M` where `images[i]` is `M e_i`.
    pub fn pullback(&self, images: &[u64]) -> Result<Self> {
        if images.len() != 2 * self.g {
            return invalid("need one image per basis vector");
        }
        Self::new(self.g, images.iter().map(|&x| self.eval(x)).collect())
    }
}

/// `Σ q(a_i) q(b_i) mod 2`.
pub fn arf(q: &QuadraticForm) -> u8 {
    let d = q.diag();
    (0..q.genus()).fold(0, |acc, i| acc ^ (d[2 * i] & d[2 * i + 1]))
}

/// Arf by majority vote: `q` is even iff it has `2^{g-1}(2^g + 1)` zeros.
pub fn arf_by_count(q: &QuadraticForm) -> u8 {
    let g = q.genus();
    let bits = q.bits();
    let zeros = (0u64..1 << (2 * g))
        .filter(|&x| (((bits & x).count_ones() + (x & (x >> 1) & EVEN_BITS).count_ones()) & 1) == 0)
        .count() as u64;
    let half = 1u64 << (2 * g - 1);
    (zeros < half) as u8
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpinCensus {
    pub even: u64,
    pub odd: u64,
}

/// Enumerate all `2^{2g}` quadratic refinements and count them by Arf value
/// (computed by counting zeros, independent of the basis formula).
pub fn spin_census(g: usize) -> Result<SpinCensus> {
    if g == 0 {
        return invalid("genus must be at least 1");
    }
    if g > 8 {
        return Err(Error::Resource(format!("genus {g} is too large to enumerate")));
    }
    let mut census = SpinCensus { even: 0, odd: 0 };
    for bits in 0u64..1 << (2 * g) {
        match arf_by_count(&QuadraticForm::from_bits(g, bits)?) {
            0 => census.even += 1,
            _ => census.odd += 1,
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arf_examples() {
        assert_eq!(arf(&QuadraticForm::new(1, vec![1, 1]).unwrap()), 1);
        assert_eq!(arf(&QuadraticForm::new(1, vec![0, 0]).unwrap()), 0);
    }

    #[test]
    fn census_small() {
        assert_eq!(spin_census(1).unwrap(), SpinCensus { even: 3, odd: 1 });
        assert_eq!(spin_census(2).unwrap(), SpinCensus { even: 10, odd: 6 });
        assert!(spin_census(9).is_err());
    }

    #[test]
    fn reduce_modulus_examples() {
        let s = SurfaceModel::closed(3, 4).unwrap();
        let phi = WindingFunction::new(s, vec![1, 3, 0, 2, 0, 0], 1).unwrap();
        let r = phi.reduce_modulus(2).unwrap();
        assert_eq!(r.basis_values(), &[1, 1, 0, 0, 0, 0]);
        assert_eq!(phi.reduce_modulus(4).unwrap(), phi);
        assert!(phi.reduce_modulus(3).is_err());
        // (n/2)·φ only sees the parity of each value.
        let (twice, z2) = phi.scaled_values(2);
        assert_eq!(twice, vec![2, 2, 0, 0, 0, 0]);
        assert_eq!(z2, 2);
        assert_eq!(phi.spin_reduction().unwrap(), r);
    }

    #[test]
    fn fiber_must_be_a_unit() {
        let s = SurfaceModel::closed(4, 6).unwrap();
        assert!(WindingFunction::new(s, vec![0; 8], 2).is_err());
        assert!(WindingFunction::new(s, vec![0; 8], 5).is_ok());
    }

    #[test]
    fn subsurface_examples() {
        let s = SurfaceModel::closed(4, 3).unwrap();
        let phi = WindingFunction::new(s, vec![0; 8], 1).unwrap();
        let curve = |w| FramedCurveClass::declared(HomologyClass::zero(s), w);
        assert!(subsurface_sum(&[curve(1), curve(0), curve(1)], -1, &phi).unwrap());
        assert!(subsurface_sum(&[curve(1)], 1, &phi).unwrap());
        assert!(subsurface_sum(&[curve(-1)], -1, &phi).unwrap());
        assert!(!subsurface_sum(&[curve(0)], -1, &phi).unwrap());
        assert!(subsurface_sum(&[], 1, &phi).is_err());
    }

    #[test]
    fn solve_quadratic_form_from_values() {
        let q = QuadraticForm::new(2, vec![1, 0, 1, 1]).unwrap();
        let vectors: Vec<u64> = vec![0b0001, 0b0010, 0b0100, 0b1000, 0b0101];
        let values: Vec<u8> = vectors.iter().map(|&x| q.eval(x)).collect();
        assert_eq!(QuadraticForm::solve_from_values(2, &vectors, &values).unwrap(), q);
    }
}
