//! The exact ground field.
//!
//! Every exact path in the crate computes over arbitrary-precision rationals.
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator, so it is used directly rather than wrapped.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn from_bigint(v: BigInt) -> Scalar {
    Scalar::from_integer(v)
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_fraction(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a fraction string: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(n))
        }
    }
}

/// Always emits `"num/den"`, including integers (`"3/1"`).
pub fn format_fraction(v: &Scalar) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn to_f64(v: &Scalar) -> f64 {
    // Large numerators and denominators overflow f64 separately; scale first.
    match (v.numer().to_f64(), v.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let bits = v.numer().bits().max(v.denom().bits()) as i64;
            let shift = (bits - 900).max(0) as usize;
            let n = (v.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (v.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                if v.is_positive() {
                    f64::INFINITY
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// by continued fractions.
pub fn rational_approx(x: f64, max_den: &BigInt) -> Option<Scalar> {
    if !x.is_finite() {
        return None;
    }
    let mut h0 = BigInt::zero();
    let mut h1 = BigInt::one();
    let mut k0 = BigInt::one();
    let mut k1 = BigInt::zero();
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = BigInt::from(a as i128);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if &k2 > max_den {
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
        if !r.is_finite() {
            break;
        }
    }
    if k1.is_zero() {
        return None;
    }
    Some(Scalar::new(h1, k1))
}

pub(crate) fn lcm_of_denominators<'a>(vals: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    use num_integer::Integer;
    vals.into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub(crate) fn gcd_of<'a>(vals: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    use num_integer::Integer;
    vals.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Scales a rational vector to a primitive integer vector whose first nonzero
/// entry is positive. Returns `None` for the zero vector.
pub fn primitive_integer(vals: &[Scalar]) -> Option<Vec<BigInt>> {
    if vals.iter().all(Zero::is_zero) {
        return None;
    }
    let l = lcm_of_denominators(vals);
    let ints: Vec<BigInt> = vals
        .iter()
        .map(|v| (v * Scalar::from_integer(l.clone())).to_integer())
        .collect();
    let g = gcd_of(ints.iter());
    let first_negative = ints.iter().find(|v| !v.is_zero()).map_or(false, |v| v.is_negative());
    Some(
        ints.into_iter()
            .map(|v| {
                let q = v / &g;
                if first_negative {
                    -q
                } else {
                    q
                }
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_strings_round_trip() {
        let v = frac(-6, 4);
        assert_eq!(format_fraction(&v), "-3/2");
        assert_eq!(parse_fraction("-3/2").unwrap(), v);
        assert_eq!(parse_fraction("7").unwrap(), int(7));
        assert_eq!(format_fraction(&int(7)), "7/1");
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("x").is_err());
    }

    #[test]
    fn primitive_form() {
        let v = primitive_integer(&[frac(-1, 2), int(0), frac(3, 4)]).unwrap();
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(0), BigInt::from(-3)]);
        assert!(primitive_integer(&[int(0), int(0)]).is_none());
    }

    #[test]
    fn continued_fraction_recovers_small_rationals() {
        let max = BigInt::from(1_000_000);
        assert_eq!(rational_approx(-355.0 / 113.0, &max).unwrap(), frac(-355, 113));
        assert_eq!(rational_approx(0.25, &max).unwrap(), frac(1, 4));
    }

    #[test]
    fn huge_rationals_convert() {
        let big = Scalar::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400));
        assert!((to_f64(&big) - 3.0).abs() < 1e-12);
    }
}
