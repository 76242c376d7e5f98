use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// A point of P^d, stored as a primitive integer vector whose first nonzero
/// entry is positive. Two representatives of the same point therefore
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl ProjectivePoint {
    pub fn from_scalars(coords: &[Scalar]) -> Result<Self> {
        if !(2..=5).contains(&coords.len()) {
            return Err(Error::InvalidInput(format!(
                "projective points need 2..=5 coordinates, got {}",
                coords.len()
            )));
        }
        scalar::primitive_integer(coords)
            .map(|coords| ProjectivePoint { coords })
            .ok_or_else(|| Error::InvalidInput("all coordinates are zero".into()))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        let v: Vec<Scalar> = coords.iter().map(|&c| scalar::int(c)).collect();
        Self::from_scalars(&v)
    }

    pub fn from_bigints(coords: Vec<BigInt>) -> Result<Self> {
        let v: Vec<Scalar> = coords.into_iter().map(Scalar::from_integer).collect();
        Self::from_scalars(&v)
    }

    /// Standard basis vector e_i of P^d.
    pub fn basis(d: usize, i: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[i] = BigInt::from(1);
        ProjectivePoint { coords: c }
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.coords.iter().cloned().map(Scalar::from_integer).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.to_scalars().iter().map(scalar::to_f64).collect()
    }
}

/// An ordered, labeled tuple of points sharing one ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    ambient_dim: usize,
    points: Vec<ProjectivePoint>,
}

impl Configuration {
    pub fn new(points: Vec<ProjectivePoint>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidInput("empty configuration".into()));
        };
        let d = first.ambient_dim();
        if points.iter().any(|p| p.ambient_dim() != d) {
            return Err(Error::InvalidInput("points of mixed ambient dimension".into()));
        }
        Ok(Configuration { ambient_dim: d, points })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| ProjectivePoint::from_ints(r)).collect::<Result<_>>()?)
    }

    /// The five standard points e_1..e_4, (1:1:1:1) of P^3.
    pub fn standard_frame() -> Self {
        Self::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 1, 1]])
            .expect("static data")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// 0-based access.
    pub fn point(&self, i: usize) -> &ProjectivePoint {
        &self.points[i]
    }

    pub fn select(&self, indices: &[usize]) -> Configuration {
        Configuration {
            ambient_dim: self.ambient_dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// The configuration with the 0-based index `k` removed.
    pub fn without(&self, k: usize) -> Configuration {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| i != k).collect();
        self.select(&idx)
    }

    /// `(d+1) x n` matrix whose columns are the canonical coordinates.
    pub fn coordinate_matrix(&self) -> Matrix {
        Matrix::from_cols(self.points.iter().map(ProjectivePoint::to_scalars).collect())
    }

    /// Applies a `(d'+1) x (d+1)` linear map to every point.
    pub fn transform(&self, m: &Matrix) -> Result<Configuration> {
        let pts = self
            .points
            .iter()
            .map(|p| ProjectivePoint::from_scalars(&m.mul_vec(&p.to_scalars())))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::DegenerateInput("transform sends a point to zero".into()))?;
        Configuration::new(pts)
    }

    /// Relabels: point `i` of the result is point `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Configuration {
        self.select(perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_identifies_scalings() {
        let p = ProjectivePoint::from_ints(&[-2, 4, 0]).unwrap();
        let q = ProjectivePoint::from_scalars(&[scalar::frac(1, 3), scalar::frac(-2, 3), scalar::int(0)]).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.coords(), &[BigInt::from(1), BigInt::from(-2), BigInt::from(0)]);
    }

    #[test]
    fn zero_vector_rejected() {
        assert!(ProjectivePoint::from_ints(&[0, 0, 0]).is_err());
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let a = ProjectivePoint::from_ints(&[1, 0, 0]).unwrap();
        let b = ProjectivePoint::from_ints(&[1, 0, 0, 0]).unwrap();
        assert!(Configuration::new(vec![a, b]).is_err());
    }
}
