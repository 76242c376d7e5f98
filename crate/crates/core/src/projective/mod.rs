//! Exact projective arithmetic: points, brackets, cameras, homographies,
//! stability and admissibility predicates, association.

mod camera;
mod gale;
mod homography;
mod point;
mod stability;

pub use camera::{bracket, on_line, on_plane, project, project_config, span_rank, CameraMatrix};
pub(crate) use camera::bracket_int;
pub use gale::gale_transform;
pub use homography::{
    apply_homography, frame_transform, general_quadruple, homography_fit, maps_onto, matrices_proportional,
};
pub use point::{Configuration, ProjectivePoint};
pub use stability::{center_admissible, max_coincident, max_collinear, stability_class, AdmissibilityMode, StabilityClass};

use num_traits::Zero;

use crate::scalar::Scalar;

/// Ordinary projective proportionality of two exact vectors; two zero
/// vectors are proportional, a zero and a nonzero vector are not.
pub fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let za = a.iter().all(Zero::is_zero);
    let zb = b.iter().all(Zero::is_zero);
    if za || zb {
        return za && zb;
    }
    let i = a.iter().position(|v| !v.is_zero()).expect("nonzero");
    if b[i].is_zero() {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| x * &b[i] == y * &a[i])
}
