//! Surfaces as symplectic lattices, homology classes and framed curve classes.
//!
//! Coordinates are ordered `(a_1, b_1, ..., a_g, b_g, boundary_1, ...)` with
//! `<a_i, b_i> = +1`. Boundary coordinates pair to zero with everything.

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceModel {
    genus: usize,
    boundary_count: usize,
    modulus: u32,
}

impl SurfaceModel {
    /// `modulus == 0` disables framings: every framed class then carries `w = 0`.
    pub fn new(genus: usize, boundary_count: usize, modulus: u32) -> Result<Self> {
        if genus == 0 {
            return invalid("genus must be at least 1");
        }
        if boundary_count == 0 && modulus > 0 && !(2 * genus as u64 - 2).is_multiple_of(modulus as u64) {
            return invalid(format!(
                "modulus {modulus} does not divide 2g-2 = {} on a closed surface",
                2 * genus - 2
            ));
        }
        Ok(Self { genus, boundary_count, modulus })
    }

    pub fn closed(genus: usize, modulus: u32) -> Result<Self> {
        Self::new(genus, 0, modulus)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_count
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus + self.boundary_count
    }

    /// Entry `J[i][j]` of the intersection form.
    pub fn form_entry(&self, i: usize, j: usize) -> i64 {
        if i >= 2 * self.genus || j >= 2 * self.genus || i / 2 != j / 2 {
            return 0;
        }
        match (i % 2, j % 2) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        }
    }

    /// Reduce a framing value into `[0, n)`; always 0 when framings are disabled.
    pub fn reduce(&self, w: i64) -> i64 {
        if self.modulus == 0 {
            0
        } else {
            w.rem_euclid(self.modulus as i64)
        }
    }

    /// Same surface with a different modulus (no closed-surface check, used for reductions).
    pub(crate) fn with_modulus(&self, modulus: u32) -> Self {
        Self { modulus, ..*self }
    }

    pub fn basis_class(&self, index: usize) -> Result<HomologyClass> {
        if index >= self.rank() {
            return invalid(format!("basis index {index} out of range for rank {}", self.rank()));
        }
        let mut coeffs = vec![0; self.rank()];
        coeffs[index] = 1;
        Ok(HomologyClass { surface: *self, coeffs })
    }
}

/// `x^T J y` on raw coefficient slices of a surface of genus `g`.
pub(crate) fn pair_raw(x: &[i64], y: &[i64], genus: usize) -> i64 {
    let mut s = 0;
    for k in 0..genus {
        s += x[2 * k] * y[2 * k + 1] - x[2 * k + 1] * y[2 * k];
    }
    s
}

/// The row vector `J y`, so that `<x, y> = x . (J y)`.
pub(crate) fn form_times(y: &[i64], genus: usize) -> Vec<i64> {
    let mut r = vec![0; y.len()];
    for k in 0..genus {
        r[2 * k] = y[2 * k + 1];
        r[2 * k + 1] = -y[2 * k];
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    surface: SurfaceModel,
    coeffs: Vec<i64>,
}

impl HomologyClass {
    pub fn new(surface: SurfaceModel, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != surface.rank() {
            return invalid(format!(
                "class has {} coefficients, surface rank is {}",
                coeffs.len(),
                surface.rank()
            ));
        }
        Ok(Self { surface, coeffs })
    }

    pub fn zero(surface: SurfaceModel) -> Self {
        Self { surface, coeffs: vec![0; surface.rank()] }
    }

    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero with coprime coefficients.
    pub fn is_primitive(&self) -> bool {
        self.coeffs.iter().fold(0i64, |g, &c| gcd(g, c.abs())) == 1
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { surface: self.surface, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { surface: self.surface, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Coefficients on the first `2g` coordinates (boundary classes forgotten).
    pub fn capped(&self) -> &[i64] {
        &self.coeffs[..2 * self.surface.genus]
    }

    /// Pack the first `2g` coordinates mod 2 into bits (`a_i` at bit `2i`, `b_i` at bit `2i+1`).
    pub fn mod2_bits(&self) -> u64 {
        self.capped()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, c)| acc | ((c.rem_euclid(2) as u64) << i))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.surface.rank() != other.surface.rank() || self.surface.genus != other.surface.genus {
            return invalid("classes live on different surface models");
        }
        Ok(())
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Algebraic intersection pairing `x^T J y`.
pub fn intersection(x: &HomologyClass, y: &HomologyClass) -> Result<i64> {
    x.check_same(y)?;
    Ok(pair_raw(&x.coeffs, &y.coeffs, x.surface.genus))
}

/// Genus of a smooth plane curve of degree `d`.
pub fn genus_of_degree(d: u32) -> Result<usize> {
    if d < 3 {
        return invalid(format!("degree must be at least 3, got {d}"));
    }
    let d = d as usize;
    Ok((d - 1) * (d - 2) / 2)
}

/// Where a framing value came from. Only the first three are trusted by
/// [`crate::mapclass::stabilizes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// The `index`-th coordinate class with a declared winding value.
    Basis { index: usize },
    /// A vanishing cycle, framing 0.
    Vanishing,
    /// Obtained from trusted classes by twist words or by the winding-function rules.
    Derived,
    /// Supplied from outside with no construction behind it.
    Declared,
}

/// Homology class plus a winding value mod `n`.
///
/// Equality compares `h` and `w` only.
#[derive(Debug, Clone)]
pub struct FramedCurveClass {
    h: HomologyClass,
    w: i64,
    provenance: Provenance,
}

impl PartialEq for FramedCurveClass {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h && self.w == other.w
    }
}

impl Eq for FramedCurveClass {}

impl FramedCurveClass {
    pub fn basis(surface: SurfaceModel, index: usize, w: i64) -> Result<Self> {
        let h = surface.basis_class(index)?;
        Ok(Self { w: surface.reduce(w), h, provenance: Provenance::Basis { index } })
    }

    pub fn vanishing(h: HomologyClass) -> Self {
        Self { h, w: 0, provenance: Provenance::Vanishing }
    }

    pub fn declared(h: HomologyClass, w: i64) -> Self {
        let w = h.surface().reduce(w);
        Self { h, w, provenance: Provenance::Declared }
    }

    pub(crate) fn with_provenance(h: HomologyClass, w: i64, provenance: Provenance) -> Self {
        let w = h.surface().reduce(w);
        Self { h, w, provenance }
    }

    pub fn h(&self) -> &HomologyClass {
        &self.h
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn surface(&self) -> SurfaceModel {
        self.h.surface()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn is_trusted(&self) -> bool {
        self.provenance != Provenance::Declared
    }

    /// The same curve with opposite orientation; winding values change sign.
    pub fn reversed(&self) -> Self {
        Self::with_provenance(self.h.neg(), -self.w, self.provenance_after_transform())
    }

    pub(crate) fn provenance_after_transform(&self) -> Provenance {
        if self.is_trusted() {
            Provenance::Derived
        } else {
            Provenance::Declared
        }
    }
}
