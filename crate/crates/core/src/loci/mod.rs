//! The centers-variety, case by case in the number of points.

mod cubic;
mod quadric;
mod seven;
mod six;
mod solve;

pub use cubic::{
    classify_degeneration_n5, cubic_locus_n5, cubic_param_n5, planes_through, CubicParam, Degeneration, TwistedCubic,
};
pub use quadric::QuadricSurface;
pub use seven::{
    candidates_n7, centers_n7, centers_n_ge8, leave_one_out_quadrics, omega_distance, pair_candidates_n7,
    weddle_curve_point, CenterPair, EightCertificate, WeddlePoint, AGREEMENT_DISTANCE, OMEGA_DISTANCE,
};
pub use six::{map_a_to_b_n6, map_b_to_a_n6, quadric_pair_n6, sample_pairs_n6};
pub use solve::{certify_rational, normalize, projective_distance, solve_quadric_system, NumericPoint};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::projective::{homography_fit, project_config, span_rank, Configuration, ProjectivePoint};
use crate::scalar::Scalar;

/// Completes up to three independent plane points to a projective frame.
pub fn complete_frame(p: &Configuration) -> Result<Configuration> {
    let n = p.len();
    let refs: Vec<&ProjectivePoint> = p.points().iter().collect();
    if span_rank(&refs) != n.min(3) || (n == 4 && crate::projective::general_quadruple(p) != Some([0, 1, 2, 3])) {
        return Err(Error::DegenerateInput("image points are not in general position".into()));
    }
    if n == 4 {
        return Ok(p.clone());
    }
    let mut pts = p.points().to_vec();
    for i in 0..3 {
        if pts.len() == 3 {
            break;
        }
        let e = ProjectivePoint::basis(2, i);
        let mut trial: Vec<&ProjectivePoint> = pts.iter().collect();
        trial.push(&e);
        if span_rank(&trial) == trial.len() {
            pts.push(e);
        }
    }
    let sum: Vec<Scalar> = (0..3).map(|c| pts.iter().map(|q| q.to_scalars()[c].clone()).sum()).collect();
    pts.push(ProjectivePoint::from_scalars(&sum)?);
    Configuration::new(pts)
}

/// A homography H with H·(Y seen from b) = X seen from a, which exists for
/// any n ≤ 4 points in general position.
pub fn centers_n_le4(
    x: &Configuration,
    y: &Configuration,
    a: &ProjectivePoint,
    b: &ProjectivePoint,
) -> Result<Matrix> {
    if x.len() != y.len() || x.len() > 4 || x.ambient_dim() != 3 || y.ambient_dim() != 3 {
        return Err(Error::InvalidInput("expected two configurations of at most 4 points in P^3".into()));
    }
    let p = complete_frame(&project_config(y, b)?)?;
    let q = complete_frame(&project_config(x, a)?)?;
    homography_fit(&p, &q)?.ok_or_else(|| Error::Inconsistent("frames admit no homography".into()))
}

/// The centers-variety of a pair of configurations, by number of points.
#[derive(Clone, Debug, PartialEq)]
pub enum CentersVariety {
    /// Every pair of centers works; a witness is attached when both centers
    /// were supplied.
    EverythingN4 { n: usize, witness: Option<Matrix> },
    CubicFibrationN5 { given_center: ProjectivePoint, degeneration: Degeneration, cubic: Option<TwistedCubic> },
    SurfacePairN6 { s_beta: QuadricSurface, s_alpha: QuadricSurface, sampled_pairs: Vec<(ProjectivePoint, ProjectivePoint)> },
    ThreePairsN7 { pairs: Vec<CenterPair> },
    EmptyN8 { certificate: EightCertificate },
    SurvivingN8 { certificate: EightCertificate },
}

/// Optional centers given with a centers query.
#[derive(Clone, Debug, Default)]
pub struct Centers {
    pub a: Option<ProjectivePoint>,
    pub b: Option<ProjectivePoint>,
}

pub fn centers(x: &Configuration, y: &Configuration, given: &Centers, tol: f64, seed: u64) -> Result<CentersVariety> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput("configurations differ in size".into()));
    }
    if x.ambient_dim() != 3 || y.ambient_dim() != 3 {
        return Err(Error::InvalidInput("configurations must lie in P^3".into()));
    }
    match x.len() {
        0..=4 => {
            let witness = match (&given.a, &given.b) {
                (Some(a), Some(b)) => Some(centers_n_le4(x, y, a, b)?),
                _ => None,
            };
            Ok(CentersVariety::EverythingN4 { n: x.len(), witness })
        }
        5 => {
            let a = given
                .a
                .clone()
                .ok_or_else(|| Error::InvalidInput("five points need a center a".into()))?;
            let degeneration = classify_degeneration_n5(x, &a)?;
            let cubic = match degeneration {
                Degeneration::LinePlusPlane | Degeneration::AllOfP3 => None,
                _ => Some(cubic_locus_n5(x, y, &a)?),
            };
            Ok(CentersVariety::CubicFibrationN5 { given_center: a, degeneration, cubic })
        }
        6 => {
            let (s_beta, s_alpha) = quadric_pair_n6(x, y)?;
            let sampled_pairs = match (&given.a, &given.b) {
                (Some(a), _) => vec![(a.clone(), map_a_to_b_n6(x, y, a)?)],
                (None, Some(b)) => vec![(map_b_to_a_n6(x, y, b)?, b.clone())],
                (None, None) => sample_pairs_n6(x, y, 3, seed)?,
            };
            Ok(CentersVariety::SurfacePairN6 { s_beta, s_alpha, sampled_pairs })
        }
        7 => Ok(CentersVariety::ThreePairsN7 { pairs: centers_n7(x, y, tol, seed)? }),
        _ => {
            let certificate = centers_n_ge8(x, y, tol, seed)?;
            Ok(if certificate.surviving.is_empty() {
                CentersVariety::EmptyN8 { certificate }
            } else {
                CentersVariety::SurvivingN8 { certificate }
            })
        }
    }
}

#[cfg(test)]
mod tests;
