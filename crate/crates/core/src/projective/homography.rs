use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::point::{Configuration, ProjectivePoint};

/// The matrix sending e_i to λ_i p_i (i = 1..=d+1) and (1,…,1) to p_{d+2}.
/// `None` when the d+2 points are not in general position.
fn frame_basis(points: &[&ProjectivePoint]) -> Option<Matrix> {
    let n = points.len();
    let d1 = n - 1;
    let basis = Matrix::from_cols(points[..d1].iter().map(|p| p.to_scalars()).collect());
    let lambda = basis.solve(&points[d1].to_scalars())?;
    if lambda.iter().any(Zero::is_zero) {
        return None;
    }
    let mut m = basis;
    for c in 0..d1 {
        for r in 0..d1 {
            let v = &m[(r, c)] * &lambda[c];
            m[(r, c)] = v;
        }
    }
    Some(m)
}

/// Projective transform taking the first d+2 points of `x` to the standard
/// frame e_1, …, e_{d+1}, (1:…:1).
pub fn frame_transform(x: &Configuration) -> Result<Matrix> {
    let d = x.ambient_dim();
    if x.len() < d + 2 {
        return Err(Error::InvalidInput(format!("need {} points to fix a frame of P^{d}", d + 2)));
    }
    let pts: Vec<&ProjectivePoint> = x.points()[..d + 2].iter().collect();
    frame_basis(&pts)
        .and_then(|m| m.inverse())
        .ok_or_else(|| Error::DegenerateInput("leading points are not in general position".into()))
}

fn in_general_position(p: &[&ProjectivePoint]) -> bool {
    frame_basis(p).is_some()
}

/// Exact homography `H` with `H p_i ∝ q_i` for every i, fitted on the first
/// four correspondences and verified on the rest. `Ok(None)` means no such
/// `H` exists.
pub fn homography_fit(p: &Configuration, q: &Configuration) -> Result<Option<Matrix>> {
    if p.ambient_dim() != 2 || q.ambient_dim() != 2 {
        return Err(Error::InvalidInput("homography_fit works on configurations in P^2".into()));
    }
    if p.len() != q.len() {
        return Err(Error::InvalidInput("configurations differ in size".into()));
    }
    if p.len() < 4 {
        return Err(Error::InvalidInput("homography_fit needs at least four points".into()));
    }
    let head_p: Vec<&ProjectivePoint> = p.points()[..4].iter().collect();
    let head_q: Vec<&ProjectivePoint> = q.points()[..4].iter().collect();
    let Some(tp) = frame_basis(&head_p) else {
        return Err(Error::DegenerateInput("first four points are not in general position".into()));
    };
    // general position is projectively invariant, so a degenerate target
    // quadruple rules out any invertible H
    let Some(tq) = frame_basis(&head_q) else {
        return Ok(None);
    };
    let h = &tq * &tp.inverse().expect("frame basis is invertible");
    let ok = p.points().iter().zip(q.points()).all(|(pi, qi)| maps_onto(&h, pi, qi));
    Ok(ok.then_some(h))
}

/// Every 2x2 minor of [H p | q] vanishes.
pub fn maps_onto(h: &Matrix, p: &ProjectivePoint, q: &ProjectivePoint) -> bool {
    let hp = h.mul_vec(&p.to_scalars());
    let qv = q.to_scalars();
    if hp.iter().all(Zero::is_zero) {
        return false;
    }
    for i in 0..hp.len() {
        for j in i + 1..hp.len() {
            if &hp[i] * &qv[j] != &hp[j] * &qv[i] {
                return false;
            }
        }
    }
    true
}

/// Indices of the first quadruple of `p` in general position, if any.
pub fn general_quadruple(p: &Configuration) -> Option<[usize; 4]> {
    let n = p.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let quad = [a, b, c, d];
                    let pts: Vec<&ProjectivePoint> = quad.iter().map(|&i| p.point(i)).collect();
                    if in_general_position(&pts) {
                        return Some(quad);
                    }
                }
            }
        }
    }
    None
}

/// Applies `h` to a configuration of P^2.
pub fn apply_homography(h: &Matrix, p: &Configuration) -> Result<Configuration> {
    p.transform(h)
}

/// Projective proportionality of two exact 3x3 matrices.
pub fn matrices_proportional(a: &Matrix, b: &Matrix) -> bool {
    let av: Vec<Scalar> = (0..a.nrows()).flat_map(|r| a.row(r).to_vec()).collect();
    let bv: Vec<Scalar> = (0..b.nrows()).flat_map(|r| b.row(r).to_vec()).collect();
    crate::projective::proportional(&av, &bv)
}
