use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::linalg::Matrix;
use crate::projective::ProjectivePoint;
use crate::scalar::{self, Scalar};

/// A quadric surface zᵀ S z = 0 in P^3, stored by its symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSurface {
    sym: Matrix,
}

impl QuadricSurface {
    pub fn from_form(f: &Form) -> Result<Self> {
        if !f.is_zero() && (f.degree() != Some(2) || !f.is_homogeneous()) {
            return Err(Error::InvalidInput("quadric surface needs a quadratic form".into()));
        }
        let mut sym = Matrix::zeros(4, 4);
        let half = scalar::frac(1, 2);
        for (e, c) in f.terms() {
            let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat(i).take(e[i] as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                sym[(i, i)] = c.clone();
            } else {
                sym[(i, j)] = c * &half;
                sym[(j, i)] = c * &half;
            }
        }
        Ok(QuadricSurface { sym })
    }

    pub fn sym(&self) -> &Matrix {
        &self.sym
    }

    pub fn to_form(&self) -> Form {
        let mut f = Form::zero();
        for i in 0..4 {
            for j in i..4 {
                let c = if i == j { self.sym[(i, i)].clone() } else { &self.sym[(i, j)] * scalar::int(2) };
                f = f + Form::var(i) * Form::var(j) * Form::constant(c);
            }
        }
        f
    }

    /// The 10 coefficients in graded lexicographic order, canonically scaled.
    pub fn coefficients(&self) -> Vec<Scalar> {
        self.to_form().canonical().coefficient_vector(2)
    }

    pub fn eval(&self, z: &[Scalar]) -> Scalar {
        let sz = self.sym.mul_vec(z);
        z.iter().zip(&sz).map(|(a, b)| a * b).sum()
    }

    /// The symmetric bilinear form B(u, w), with B(z, z) = q(z).
    pub fn bilinear(&self, u: &[Scalar], w: &[Scalar]) -> Scalar {
        let sw = self.sym.mul_vec(w);
        u.iter().zip(&sw).map(|(a, b)| a * b).sum()
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.eval(&p.to_scalars()).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.sym.is_zero()
    }

    pub fn proportional(&self, other: &QuadricSurface) -> bool {
        self.to_form().proportional(&other.to_form())
    }

    /// |q(z)| with unit-norm coefficients and unit-norm z.
    pub fn residual_c64(&self, z: &[Complex64]) -> f64 {
        let f = self.to_form();
        let norm = f.terms().map(|(_, c)| scalar::to_f64(c).powi(2)).sum::<f64>().sqrt();
        let zn = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let zu: Vec<Complex64> = z.iter().map(|v| v / zn).collect();
        f.eval_c64(&zu).norm() / norm
    }

    /// The second intersection of the line through `p` (on the surface) in
    /// direction `w`; `None` when the line is tangent or lies on the surface.
    pub fn second_point(&self, p: &ProjectivePoint, w: &[Scalar]) -> Option<ProjectivePoint> {
        let ps = p.to_scalars();
        let qw = self.eval(w);
        let b = self.bilinear(&ps, w) * scalar::int(2);
        let coords: Vec<Scalar> = ps.iter().zip(w).map(|(pi, wi)| &qw * pi - &b * wi).collect();
        let pt = ProjectivePoint::from_scalars(&coords).ok()?;
        (pt != *p).then_some(pt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_round_trip() {
        let f = Form::from_terms(&[(3, [2, 0, 0, 0]), (-4, [0, 1, 1, 0]), (7, [1, 0, 0, 1]), (1, [0, 0, 0, 2])]);
        let q = QuadricSurface::from_form(&f).unwrap();
        assert_eq!(q.to_form(), f);
        let z = [scalar::int(1), scalar::int(2), scalar::int(-1), scalar::int(3)];
        assert_eq!(q.eval(&z), f.eval(&z));
        assert!(QuadricSurface::from_form(&Form::var(0)).is_err());
    }

    #[test]
    fn second_point_lies_on_surface() {
        // z0 z1 - z2 z3
        let f = Form::from_terms(&[(1, [1, 1, 0, 0]), (-1, [0, 0, 1, 1])]);
        let q = QuadricSurface::from_form(&f).unwrap();
        let p = ProjectivePoint::from_ints(&[1, 1, 1, 1]).unwrap();
        let w = [scalar::int(2), scalar::int(-1), scalar::int(5), scalar::int(3)];
        let r = q.second_point(&p, &w).unwrap();
        assert!(q.contains(&r));
        assert_ne!(r, p);
    }
}
