//! Generating invariants of five, six and seven plane points, their lifts
//! to P^3 with a center, the Morley invariant and the Weddle quartic.

pub mod brackets;
mod vector;
mod weddle;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::linalg::det_laplace;
use crate::projective::{bracket_int, Configuration, ProjectivePoint};
use crate::scalar::{self, Scalar};

use brackets::{even_fano_values, fano_value, g_values, igusa, parse_permutation, t_values, Brackets};
pub use brackets::{permutation_sign, EVEN_FANO};
pub use vector::{InvariantKind, InvariantVector};
pub use weddle::{weddle_quartic, WeddleQuartic};

fn check_plane(p: &Configuration, n: usize) -> Result<()> {
    if p.ambient_dim() != 2 || p.len() != n {
        return Err(Error::InvalidInput(format!(
            "expected {n} points of P^2, got {} points of P^{}",
            p.len(),
            p.ambient_dim()
        )));
    }
    Ok(())
}

fn check_space(x: &Configuration, n: usize, center: &ProjectivePoint) -> Result<()> {
    if x.ambient_dim() != 3 || x.len() != n || center.ambient_dim() != 3 {
        return Err(Error::InvalidInput(format!(
            "expected {n} points and a center in P^3, got {} points of P^{}",
            x.len(),
            x.ambient_dim()
        )));
    }
    Ok(())
}

/// Exact brackets of a plane configuration.
fn plane_brackets(p: &Configuration) -> Brackets<Scalar, impl Fn([usize; 3]) -> Scalar + '_> {
    Brackets::new(move |[i, j, k]: [usize; 3]| {
        Scalar::from_integer(bracket_int(&[p.point(i - 1), p.point(j - 1), p.point(k - 1)]))
    })
}

/// Exact lifted brackets [x_i x_j x_k a].
fn lifted_brackets<'a>(
    x: &'a Configuration,
    a: &'a ProjectivePoint,
) -> Brackets<Scalar, impl Fn([usize; 3]) -> Scalar + 'a> {
    Brackets::new(move |[i, j, k]: [usize; 3]| {
        Scalar::from_integer(bracket_int(&[x.point(i - 1), x.point(j - 1), x.point(k - 1), a]))
    })
}

/// Lifted brackets with a formal center z, as linear forms in z.
fn symbolic_brackets(x: &Configuration) -> Brackets<Form, impl Fn([usize; 3]) -> Form + '_> {
    Brackets::new(move |[i, j, k]: [usize; 3]| {
        let mut rows: Vec<Vec<Form>> = [i, j, k]
            .iter()
            .map(|&l| x.point(l - 1).to_scalars().into_iter().map(Form::constant).collect())
            .collect();
        rows.push((0..4).map(Form::var).collect());
        det_laplace(&rows)
    })
}

/// Lifted brackets at a complex center, computed from unit-normalized
/// coordinates.
fn numeric_brackets<'a>(
    x: &'a Configuration,
    a: &'a [Complex64],
) -> Brackets<Complex64, impl Fn([usize; 3]) -> Complex64 + 'a> {
    let pts: Vec<Vec<Complex64>> = x.points().iter().map(|p| unit_c64(&p.to_f64())).collect();
    let an = normalize_c64(a);
    Brackets::new(move |[i, j, k]: [usize; 3]| {
        let rows = vec![pts[i - 1].clone(), pts[j - 1].clone(), pts[k - 1].clone(), an.clone()];
        det_laplace(&rows)
    })
}

fn unit_c64(v: &[f64]) -> Vec<Complex64> {
    let c: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    normalize_c64(&c)
}

pub(crate) fn normalize_c64(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|z| z / n).collect()
}

/// (g0, ..., g5) of five plane points.
pub fn g5(p: &Configuration) -> Result<InvariantVector> {
    check_plane(p, 5)?;
    InvariantVector::new(InvariantKind::N5, g_values(&plane_brackets(p)))
}

/// g0..g5 with every [ijk] replaced by [x_i x_j x_k a]; projectively equal
/// to g5 of the projection of `x` from `a`.
pub fn g5_lifted(x: &Configuration, a: &ProjectivePoint) -> Result<InvariantVector> {
    check_space(x, 5, a)?;
    InvariantVector::new(InvariantKind::N5, g_values(&lifted_brackets(x, a)))
}

/// (t0, ..., t5) of six plane points.
pub fn t6(p: &Configuration) -> Result<InvariantVector> {
    check_plane(p, 6)?;
    InvariantVector::new(InvariantKind::N6, t_values(&plane_brackets(p)))
}

/// The Igusa quartic F(t0, ..., t4).
pub fn igusa_f(t: &[Scalar]) -> Result<Scalar> {
    if t.len() < 5 {
        return Err(Error::InvalidInput("igusa_f needs t0..t4".into()));
    }
    Ok(igusa(&t[..5]))
}

/// The lifted invariants q0..q5 of six points of P^3 as forms in the
/// center: five quadrics through the points and one quartic.
pub fn t6_lifted_forms(x: &Configuration) -> Result<Vec<Form>> {
    if x.ambient_dim() != 3 || x.len() != 6 {
        return Err(Error::InvalidInput("t6_lifted needs six points of P^3".into()));
    }
    Ok(t_values(&symbolic_brackets(x)))
}

/// The lifted invariants q0..q5 evaluated at a concrete center.
pub fn t6_lifted(x: &Configuration, z: &ProjectivePoint) -> Result<InvariantVector> {
    check_space(x, 6, z)?;
    InvariantVector::new(InvariantKind::N6, t_values(&lifted_brackets(x, z)))
}

/// q0..q5 at a complex center, from unit-normalized data.
pub fn t6_lifted_c64(x: &Configuration, z: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.ambient_dim() != 3 || x.len() != 6 || z.len() != 4 {
        return Err(Error::InvalidInput("t6_lifted needs six points and a center of P^3".into()));
    }
    Ok(t_values(&numeric_brackets(x, z)))
}

/// The Fano polynomial f_π for a permutation in one-line notation,
/// e.g. "1234567".
pub fn fano(p: &Configuration, perm: &str) -> Result<Scalar> {
    check_plane(p, 7)?;
    let perm = parse_permutation(perm)?;
    Ok(fano_value(&plane_brackets(p), &perm))
}

/// The Fano map: the 15 even Fano values.
pub fn fano15(p: &Configuration) -> Result<InvariantVector> {
    check_plane(p, 7)?;
    InvariantVector::new(InvariantKind::N7, even_fano_values(&plane_brackets(p)))
}

/// The Fano map of the projection of `x` from `a`, through lifted brackets.
pub fn fano15_lifted(x: &Configuration, a: &ProjectivePoint) -> Result<InvariantVector> {
    check_space(x, 7, a)?;
    InvariantVector::new(InvariantKind::N7, even_fano_values(&lifted_brackets(x, a)))
}

/// The Fano map at a complex center, from unit-normalized data.
pub fn fano15_lifted_c64(x: &Configuration, a: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.ambient_dim() != 3 || x.len() != 7 || a.len() != 4 {
        return Err(Error::InvalidInput("fano15_lifted needs seven points and a center of P^3".into()));
    }
    Ok(even_fano_values(&numeric_brackets(x, a)))
}

/// The Morley invariant 2 Σ f_i⁺.
pub fn morley(p: &Configuration) -> Result<Scalar> {
    let v = fano15(p)?;
    Ok(v.values().iter().sum::<Scalar>() * scalar::int(2))
}
