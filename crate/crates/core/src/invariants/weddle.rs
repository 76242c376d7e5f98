use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::linalg::{det_laplace, Matrix};
use crate::projective::{Configuration, ProjectivePoint};
use crate::scalar::Scalar;

/// The quartic surface of vertices of quadric cones through six points of
/// P^3, defined up to scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeddleQuartic {
    form: Form,
}

impl WeddleQuartic {
    pub fn form(&self) -> &Form {
        &self.form
    }

    /// The 35 coefficients in graded lexicographic order.
    pub fn coefficients(&self) -> Vec<Scalar> {
        self.form.coefficient_vector(4)
    }

    pub fn eval(&self, z: &[Scalar]) -> Scalar {
        self.form.eval(z)
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.form.eval(&p.to_scalars()).is_zero()
    }

    /// |W(z)| with unit-normalized coefficients and point.
    pub fn residual_c64(&self, z: &[Complex64]) -> f64 {
        let c = self.form.canonical();
        let norm = c
            .terms()
            .map(|(_, v)| crate::scalar::to_f64(v).powi(2))
            .sum::<f64>()
            .sqrt();
        let zn = super::normalize_c64(z);
        c.eval_c64(&zn).norm() / norm
    }
}

/// Weddle quartic of six points of P^3. The first four points are moved to
/// the coordinate simplex, the determinant with rows
/// (r_i s_i, x_i², r_i x_i, s_i x_i) is expanded, and the result is pulled
/// back.
pub fn weddle_quartic(z: &Configuration) -> Result<WeddleQuartic> {
    if z.ambient_dim() != 3 || z.len() != 6 {
        return Err(Error::InvalidInput("weddle_quartic needs six points of P^3".into()));
    }
    let simplex = Matrix::from_cols(z.points()[..4].iter().map(|p| p.to_scalars()).collect());
    let u = simplex
        .inverse()
        .ok_or_else(|| Error::DegenerateInput("first four points are not independent".into()))?;
    let r = u.mul_vec(&z.point(4).to_scalars());
    let s = u.mul_vec(&z.point(5).to_scalars());
    let rows: Vec<Vec<Form>> = (0..4)
        .map(|i| {
            let x = Form::var(i);
            vec![
                Form::constant(&r[i] * &s[i]),
                x.pow(2),
                x.scale(&r[i]),
                x.scale(&s[i]),
            ]
        })
        .collect();
    let normalized = det_laplace(&rows);
    if normalized.is_zero() {
        return Err(Error::DegenerateInput("Weddle determinant vanishes identically".into()));
    }
    Ok(WeddleQuartic { form: normalized.pullback(&u).canonical() })
}
