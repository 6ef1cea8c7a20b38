//! Affine-symplectic maps `(x, u) -> (M x, u + v . x)` and twist transvections.

use crate::error::{invalid, Error, Result};
use crate::lattice::unimodular_inverse;
use crate::symplectic::{form_times, FramedCurveClass, HomologyClass, Provenance, SurfaceModel};

/// Integer matrix `M` (rank x rank, row-major) with a framing correction `v` mod `n`.
///
/// Equality is structural on `(surface, M, v)`.
#[derive(Debug, Clone)]
pub struct AffineSymplecticMap {
    surface: SurfaceModel,
    m: Vec<i64>,
    v: Vec<i64>,
    trusted: bool,
}

impl PartialEq for AffineSymplecticMap {
    fn eq(&self, other: &Self) -> bool {
        self.surface == other.surface && self.m == other.m && self.v == other.v
    }
}

impl Eq for AffineSymplecticMap {}

impl AffineSymplecticMap {
    pub fn identity(surface: SurfaceModel) -> Self {
        let r = surface.rank();
        let mut m = vec![0; r * r];
        for i in 0..r {
            m[i * r + i] = 1;
        }
        Self { surface, m, v: vec![0; r], trusted: true }
    }

    pub fn from_parts(surface: SurfaceModel, m: Vec<i64>, v: Vec<i64>) -> Result<Self> {
        let r = surface.rank();
        if m.len() != r * r || v.len() != r {
            return invalid("matrix or correction has the wrong size for the surface");
        }
        let v = v.into_iter().map(|x| surface.reduce(x)).collect();
        Ok(Self { surface, m, v, trusted: false })
    }

    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    pub fn rank(&self) -> usize {
        self.surface.rank()
    }

    /// Row-major matrix part.
    pub fn matrix(&self) -> &[i64] {
        &self.m
    }

    pub fn correction(&self) -> &[i64] {
        &self.v
    }

    /// Whether every twist that went into this map had a trusted framing.
    pub fn is_trusted(&self) -> bool {
        self.trusted
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.m[i * self.rank() + j]
    }

    pub fn is_identity_matrix(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.m[i * r + j] == (i == j) as i64))
    }

    pub fn is_identity(&self) -> bool {
        self.is_identity_matrix() && self.v.iter().all(|&x| x == 0)
    }

    /// `M^T J M == J`.
    pub fn is_symplectic(&self) -> bool {
        let r = self.rank();
        let s = self.surface;
        for i in 0..r {
            for j in 0..r {
                let mut acc = 0;
                for k in 0..r {
                    let mki = self.m[k * r + i];
                    if mki == 0 {
                        continue;
                    }
                    for l in 0..r {
                        acc += mki * s.form_entry(k, l) * self.m[l * r + j];
                    }
                }
                if acc != s.form_entry(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// The top-left `2g x 2g` block: the action on homology with boundary classes capped off.
    ///
    /// Twists never move boundary coordinates into the interior, so this is the induced
    /// action on the quotient by the boundary span.
    pub fn capped_matrix(&self) -> Vec<i64> {
        let r = self.rank();
        let g2 = 2 * self.surface.genus();
        let mut out = Vec::with_capacity(g2 * g2);
        for i in 0..g2 {
            out.extend_from_slice(&self.m[i * r..i * r + g2]);
        }
        out
    }

    pub fn apply_class(&self, x: &HomologyClass) -> Result<HomologyClass> {
        self.check_surface(x.surface())?;
        let r = self.rank();
        let c = x.coeffs();
        let out = (0..r).map(|i| (0..r).map(|j| self.m[i * r + j] * c[j]).sum()).collect();
        HomologyClass::new(self.surface, out)
    }

    pub fn apply(&self, c: &FramedCurveClass) -> Result<FramedCurveClass> {
        let h = self.apply_class(c.h())?;
        let shift: i64 = self.v.iter().zip(c.h().coeffs()).map(|(a, b)| a * b).sum();
        let provenance = if self.trusted && c.is_trusted() {
            Provenance::Derived
        } else {
            Provenance::Declared
        };
        Ok(FramedCurveClass::with_provenance(h, c.w() + shift, provenance))
    }

    /// `self ∘ inner`: `(M2, v2) ∘ (M1, v1) = (M2 M1, v1 + v2 M1)`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_surface(inner.surface)?;
        let r = self.rank();
        let mut m = vec![0; r * r];
        for i in 0..r {
            for k in 0..r {
                let a = self.m[i * r + k];
                if a == 0 {
                    continue;
                }
                for j in 0..r {
                    m[i * r + j] += a * inner.m[k * r + j];
                }
            }
        }
        let v = (0..r)
            .map(|j| {
                let t: i64 = (0..r).map(|k| self.v[k] * inner.m[k * r + j]).sum();
                self.surface.reduce(inner.v[j] + t)
            })
            .collect();
        Ok(Self { surface: self.surface, m, v, trusted: self.trusted && inner.trusted })
    }

    /// Left-multiply in place by the twist about `c` with exponent `k`.
    pub(crate) fn twist_left(&mut self, c: &FramedCurveClass, k: i64) {
        let r = self.rank();
        let g = self.surface.genus();
        let gamma = c.h().coeffs();
        let row = form_times(gamma, g);
        // row^T M: the linear functional x -> <M x, gamma>.
        let mut rm = vec![0i64; r];
        for (i, &ri) in row.iter().enumerate() {
            if ri == 0 {
                continue;
            }
            for j in 0..r {
                rm[j] += ri * self.m[i * r + j];
            }
        }
        for (i, &gi) in gamma.iter().enumerate() {
            if gi == 0 {
                continue;
            }
            for j in 0..r {
                self.m[i * r + j] += k * gi * rm[j];
            }
        }
        let kw = k * c.w();
        for j in 0..r {
            self.v[j] = self.surface.reduce(self.v[j] + kw * rm[j]);
        }
        self.trusted &= c.is_trusted();
    }

    /// Two-sided inverse `(M^{-1}, -v M^{-1})`.
    pub fn inverse(&self) -> Result<Self> {
        let r = self.rank();
        let inv = unimodular_inverse(&self.m, r)
            .ok_or_else(|| Error::InvalidInput("matrix part is not unimodular".into()))?;
        let v = (0..r)
            .map(|j| {
                let t: i64 = (0..r).map(|k| self.v[k] * inv[k * r + j]).sum();
                self.surface.reduce(-t)
            })
            .collect();
        Ok(Self { surface: self.surface, m: inv, v, trusted: self.trusted })
    }

    /// Reduce the framing correction to a divisor `m` of the modulus.
    pub fn reduce_modulus(&self, m: u32) -> Result<Self> {
        let n = self.surface.modulus();
        if m == 0 || n == 0 || !n.is_multiple_of(m) {
            return invalid(format!("{m} does not divide the modulus {n}"));
        }
        let surface = self.surface.with_modulus(m);
        let v = self.v.iter().map(|&x| surface.reduce(x)).collect();
        Ok(Self { surface, m: self.m.clone(), v, trusted: self.trusted })
    }

    fn check_surface(&self, other: SurfaceModel) -> Result<()> {
        if other.rank() != self.rank() || other.genus() != self.surface.genus() {
            return invalid("map and argument live on different surface models");
        }
        Ok(())
    }
}

/// `(x, u) -> (x + k<x,γ>γ, u + k<x,γ> w)` for the framed class `c = (γ, w)`.
///
/// Positive exponents are left-handed twists; monodromy generators are exponent −1.
pub fn twist_map(c: &FramedCurveClass, exponent: i64) -> AffineSymplecticMap {
    let mut map = AffineSymplecticMap::identity(c.surface());
    if exponent != 0 {
        map.twist_left(c, exponent);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_formula_instance() {
        let s = SurfaceModel::new(1, 0, 5).unwrap();
        let c = FramedCurveClass::declared(HomologyClass::new(s, vec![0, 1]).unwrap(), 3);
        let t = twist_map(&c, 1);
        assert_eq!(t.matrix(), &[1, 0, 1, 1]);
        assert_eq!(t.correction(), &[3, 0]);
        assert!(twist_map(&c, 0).is_identity());
        assert!(t.compose(&twist_map(&c, -1)).unwrap().is_identity());
        assert_eq!(t.inverse().unwrap(), twist_map(&c, -1));
    }

    #[test]
    fn composition_acts_like_function_composition() {
        let s = SurfaceModel::new(1, 0, 7).unwrap();
        let a = FramedCurveClass::declared(HomologyClass::new(s, vec![1, 0]).unwrap(), 2);
        let b = FramedCurveClass::declared(HomologyClass::new(s, vec![0, 1]).unwrap(), 5);
        let ta = twist_map(&a, 1);
        let tb = twist_map(&b, 1);
        let x = FramedCurveClass::declared(HomologyClass::new(s, vec![3, -2]).unwrap(), 4);
        let lhs = ta.compose(&tb).unwrap().apply(&x).unwrap();
        let rhs = ta.apply(&tb.apply(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn capped_block_ignores_boundary_coordinates() {
        let s = SurfaceModel::new(1, 2, 0).unwrap();
        let c = FramedCurveClass::vanishing(HomologyClass::new(s, vec![1, 0, 1, 0]).unwrap());
        let t = twist_map(&c, 1);
        assert_eq!(t.capped_matrix(), vec![1, -1, 0, 1]);
        assert!(t.is_symplectic());
    }
}
