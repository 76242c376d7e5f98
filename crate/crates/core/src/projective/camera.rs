use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{det_int, Matrix};
use crate::scalar::Scalar;

use super::point::{Configuration, ProjectivePoint};

/// Determinant of the matrix whose rows are the canonical coordinates of
/// `points`, in the given order. Needs `k` points of P^{k-1}.
pub fn bracket(points: &[&ProjectivePoint]) -> Result<Scalar> {
    let k = points.len();
    if k == 0 || points.iter().any(|p| p.ambient_dim() + 1 != k) {
        return Err(Error::InvalidInput(format!("bracket needs {k} points of P^{}", k.saturating_sub(1))));
    }
    Ok(Scalar::from_integer(bracket_int(points)))
}

pub(crate) fn bracket_int(points: &[&ProjectivePoint]) -> BigInt {
    let rows: Vec<&[BigInt]> = points.iter().map(|p| p.coords()).collect();
    det_int(&rows)
}

/// Rank of the matrix whose rows are the given points.
pub fn span_rank(points: &[&ProjectivePoint]) -> usize {
    Matrix::from_rows(points.iter().map(|p| p.to_scalars()).collect()).rank()
}

/// Whether `p` lies on the line through `x` and `y` (always true when
/// `x == y`, since the pair then spans no line).
pub fn on_line(p: &ProjectivePoint, x: &ProjectivePoint, y: &ProjectivePoint) -> bool {
    span_rank(&[x, y, p]) <= 2
}

/// Whether `p` lies in the span of `x, y, z` (a plane when they are independent).
pub fn on_plane(p: &ProjectivePoint, x: &ProjectivePoint, y: &ProjectivePoint, z: &ProjectivePoint) -> bool {
    span_rank(&[x, y, z, p]) <= 3
}

/// A rank-`d` linear projection P^d ⇢ P^{d-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CameraMatrix {
    entries: Matrix,
}

impl CameraMatrix {
    pub fn new(entries: Matrix) -> Result<Self> {
        if entries.ncols() != entries.nrows() + 1 || entries.rank() != entries.nrows() {
            return Err(Error::InvalidInput("camera must be a full-rank d x (d+1) matrix".into()));
        }
        Ok(CameraMatrix { entries })
    }

    /// The camera that intersects the line ⟨a, x⟩ with the chart x_k = 0 and
    /// drops coordinate k, where k is the last coordinate when a_3 ≠ 0 and
    /// otherwise the first index with a_k ≠ 0.
    pub fn canonical(center: &ProjectivePoint) -> Self {
        let a = center.to_scalars();
        let d = a.len() - 1;
        let k = if !a[d].is_zero() { d } else { a.iter().position(|v| !v.is_zero()).expect("nonzero point") };
        // row i (i ≠ k) maps x to a_k x_i - a_i x_k
        let mut m = Matrix::zeros(d, d + 1);
        for (row, i) in (0..=d).filter(|&i| i != k).enumerate() {
            m[(row, i)] = a[k].clone();
            m[(row, k)] = -a[i].clone();
        }
        CameraMatrix { entries: m }
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn center(&self) -> ProjectivePoint {
        let k = self.entries.kernel();
        debug_assert_eq!(k.len(), 1);
        ProjectivePoint::from_scalars(&k[0]).expect("kernel vector is nonzero")
    }

    pub fn apply(&self, x: &ProjectivePoint) -> Result<ProjectivePoint> {
        if x.ambient_dim() + 1 != self.entries.ncols() {
            return Err(Error::InvalidInput("camera and point dimensions differ".into()));
        }
        ProjectivePoint::from_scalars(&self.entries.mul_vec(&x.to_scalars())).map_err(|_| Error::CenterHit)
    }

    pub fn apply_all(&self, x: &Configuration) -> Result<Configuration> {
        Configuration::new(x.points().iter().map(|p| self.apply(p)).collect::<Result<_>>()?)
    }
}

/// Image of `x` under the canonical camera centered at `a`.
pub fn project(x: &ProjectivePoint, a: &ProjectivePoint) -> Result<ProjectivePoint> {
    if x.ambient_dim() != a.ambient_dim() {
        return Err(Error::InvalidInput("point and center dimensions differ".into()));
    }
    if x == a {
        return Err(Error::CenterHit);
    }
    CameraMatrix::canonical(a).apply(x)
}

pub fn project_config(x: &Configuration, a: &ProjectivePoint) -> Result<Configuration> {
    Configuration::new(x.points().iter().map(|p| project(p, a)).collect::<Result<_>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_ints(c).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let (e1, e2, e3) = (pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1]));
        assert_eq!(bracket(&[&e1, &e2, &e3]).unwrap(), int(1));
        assert_eq!(bracket(&[&e1, &e1, &e3]).unwrap(), int(0));
        let p = [pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0]), pt(&[43, -50, 6, -5])];
        assert_eq!(bracket(&[&p[0], &p[1], &p[2], &p[3]]).unwrap(), int(-5));
        assert!(bracket(&[&e1, &e2]).is_err());
    }

    #[test]
    fn projection_of_unit_point() {
        let a = pt(&[43, -50, 6, -5]);
        let img = project(&pt(&[1, 1, 1, 1]), &a).unwrap();
        // (a0 - a3 : a1 - a3 : a2 - a3)
        assert_eq!(img, pt(&[48, -45, 11]));
        assert_eq!(project(&pt(&[1, 0, 0, 0]), &a).unwrap(), pt(&[1, 0, 0]));
    }

    #[test]
    fn projection_general_column() {
        let a = pt(&[2, -3, 7, 5]);
        let r = [4i64, 1, -6, 3];
        let img = project(&pt(&r), &a).unwrap();
        let expect: Vec<i64> = (0..3).map(|i| r[3] * [2, -3, 7][i] - r[i] * 5).collect();
        assert_eq!(img, pt(&expect));
    }

    #[test]
    fn chart_fallback_when_last_coordinate_vanishes() {
        let a = pt(&[0, 2, 1, 0]);
        let cam = CameraMatrix::canonical(&a);
        assert_eq!(cam.center(), a);
        assert!(project(&pt(&[1, 0, 0, 1]), &a).is_ok());
        assert_eq!(project(&pt(&[0, 4, 2, 0]), &a), Err(Error::CenterHit));
    }

    #[test]
    fn camera_center_is_the_kernel() {
        let a = pt(&[3, 1, -2, 7]);
        assert_eq!(CameraMatrix::canonical(&a).center(), a);
    }
}
