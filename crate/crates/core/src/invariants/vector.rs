use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projective::proportional;
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvariantKind {
    /// g0..g5 of five plane points.
    N5,
    /// t0..t5 of six plane points, weights (1,1,1,1,1,2).
    N6,
    /// The 15 even Fano values of seven plane points.
    N7,
}

impl InvariantKind {
    pub fn len(self) -> usize {
        match self {
            InvariantKind::N5 | InvariantKind::N6 => 6,
            InvariantKind::N7 => 15,
        }
    }

    pub fn points(self) -> usize {
        match self {
            InvariantKind::N5 => 5,
            InvariantKind::N6 => 6,
            InvariantKind::N7 => 7,
        }
    }

    pub fn for_points(n: usize) -> Result<Self> {
        match n {
            5 => Ok(InvariantKind::N5),
            6 => Ok(InvariantKind::N6),
            7 => Ok(InvariantKind::N7),
            _ => Err(Error::InvalidInput(format!("no invariant vector for {n} points"))),
        }
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for InvariantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "N5" => Ok(InvariantKind::N5),
            "N6" => Ok(InvariantKind::N6),
            "N7" => Ok(InvariantKind::N7),
            _ => Err(Error::InvalidInput(format!("unknown invariant kind {s:?}"))),
        }
    }
}

/// Invariant coordinates of a plane configuration, a point of a (weighted)
/// projective space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantVector {
    kind: InvariantKind,
    values: Vec<Scalar>,
}

impl InvariantVector {
    pub fn new(kind: InvariantKind, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != kind.len() {
            return Err(Error::InvalidInput(format!(
                "{kind} vectors have {} entries, got {}",
                kind.len(),
                values.len()
            )));
        }
        Ok(InvariantVector { kind, values })
    }

    pub fn kind(&self) -> InvariantKind {
        self.kind
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// The zero vector is not a point of the moduli space: the
    /// configuration is not semistable (for N7, with respect to the Fano map).
    pub fn is_non_semistable(&self) -> bool {
        self.is_zero()
    }

    /// Equality as points of P^5, P(1,1,1,1,1,2) or P^14.
    pub fn projectively_equal(&self, other: &InvariantVector) -> bool {
        if self.kind != other.kind {
            return false;
        }
        match self.kind {
            InvariantKind::N5 | InvariantKind::N7 => proportional(&self.values, &other.values),
            InvariantKind::N6 => weighted_equal(&self.values, &other.values),
        }
    }

    /// Representative scaled to primitive integers (for N6, the linear
    /// coordinates are made primitive and t5 follows with the squared factor).
    pub fn canonical(&self) -> InvariantVector {
        let values = match self.kind {
            InvariantKind::N5 | InvariantKind::N7 => match scalar::primitive_integer(&self.values) {
                Some(v) => v.into_iter().map(scalar::from_bigint).collect(),
                None => self.values.clone(),
            },
            InvariantKind::N6 => canonical_weighted(&self.values),
        };
        InvariantVector { kind: self.kind, values }
    }

    /// The same vector with t5 negated (N6 only).
    pub fn with_t5_negated(&self) -> InvariantVector {
        let mut out = self.clone();
        if self.kind == InvariantKind::N6 {
            out.values[5] = -out.values[5].clone();
        }
        out
    }
}

fn weighted_equal(a: &[Scalar], b: &[Scalar]) -> bool {
    if !proportional(&a[..5], &b[..5]) {
        return false;
    }
    match a[..5].iter().position(|v| !v.is_zero()) {
        Some(i) => &b[5] * &a[i] * &a[i] == &a[5] * &b[i] * &b[i],
        None => a[5].is_zero() == b[5].is_zero(),
    }
}

fn canonical_weighted(v: &[Scalar]) -> Vec<Scalar> {
    match scalar::primitive_integer(&v[..5]) {
        Some(ints) => {
            let i = v[..5].iter().position(|x| !x.is_zero()).expect("nonzero");
            let lambda = scalar::from_bigint(ints[i].clone()) / &v[i];
            let mut out: Vec<Scalar> = ints.into_iter().map(scalar::from_bigint).collect();
            out.push(&v[5] * &lambda * &lambda);
            out
        }
        None => {
            let mut out = vec![Scalar::zero(); 5];
            out.push(if v[5].is_zero() {
                Scalar::zero()
            } else {
                scalar::int(if v[5].is_negative() { -1 } else { 1 })
            });
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn n6(v: &[i64]) -> InvariantVector {
        InvariantVector::new(InvariantKind::N6, v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn weighted_scaling() {
        let a = n6(&[1, 2, -3, 4, 5, 7]);
        let b = n6(&[2, 4, -6, 8, 10, 28]);
        let c = n6(&[2, 4, -6, 8, 10, 14]);
        assert!(a.projectively_equal(&b));
        assert!(!a.projectively_equal(&c));
        assert!(a.projectively_equal(&n6(&[-1, -2, 3, -4, -5, 7])));
        assert!(!a.projectively_equal(&a.with_t5_negated()));
    }

    #[test]
    fn canonical_forms() {
        let v = InvariantVector::new(
            InvariantKind::N6,
            vec![frac(1, 2), int(1), int(0), int(0), int(0), int(3)],
        )
        .unwrap();
        let c = v.canonical();
        assert_eq!(c.values(), &[int(1), int(2), int(0), int(0), int(0), int(12)]);
        assert!(c.projectively_equal(&v));
    }

    #[test]
    fn length_is_checked() {
        assert!(InvariantVector::new(InvariantKind::N7, vec![int(1); 6]).is_err());
        assert_eq!("n7".parse::<InvariantKind>().unwrap(), InvariantKind::N7);
    }
}
