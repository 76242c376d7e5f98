//! JSON documents: point sets, invariant vectors, generated instances and
//! centers reports. Exact numbers are always fraction strings "n/d".

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::datagen::Reconstruction;
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::invariants::InvariantVector;
use crate::linalg::Matrix;
use crate::loci::{CenterPair, CentersVariety, EightCertificate, NumericPoint, QuadricSurface, TwistedCubic};
use crate::projective::{Configuration, ProjectivePoint};
use crate::scalar::{format_fraction, parse_fraction, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSetDoc {
    pub ambient_dim: usize,
    pub points: Vec<Vec<String>>,
}

impl PointSetDoc {
    pub fn from_config(c: &Configuration) -> Self {
        PointSetDoc { ambient_dim: c.ambient_dim(), points: c.points().iter().map(point_strings).collect() }
    }

    pub fn to_config(&self) -> Result<Configuration> {
        let pts = self.points.iter().map(|p| point_from_strings(p)).collect::<Result<Vec<_>>>()?;
        if pts.iter().any(|p| p.ambient_dim() != self.ambient_dim) {
            return Err(Error::Parse(format!("points do not live in P^{}", self.ambient_dim)));
        }
        Configuration::new(pts)
    }
}

fn point_strings(p: &ProjectivePoint) -> Vec<String> {
    p.coords().iter().map(|c| c.to_string()).collect()
}

fn point_from_strings(s: &[String]) -> Result<ProjectivePoint> {
    let v = s.iter().map(|c| parse_fraction(c)).collect::<Result<Vec<Scalar>>>()?;
    ProjectivePoint::from_scalars(&v)
}

pub fn config_to_json(c: &Configuration) -> Value {
    serde_json::to_value(PointSetDoc::from_config(c)).expect("serializable")
}

pub fn config_from_json(v: &Value) -> Result<Configuration> {
    let doc: PointSetDoc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_config()
}

pub fn config_from_str(s: &str) -> Result<Configuration> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    config_from_json(&v)
}

pub fn point_to_json(p: &ProjectivePoint) -> Value {
    json!(point_strings(p))
}

/// A point given inline as comma-separated fractions ("43,-50,6,-5"), as a
/// JSON array of strings or numbers, or as a one-point point-set document.
pub fn parse_point(s: &str) -> Result<ProjectivePoint> {
    let t = s.trim();
    if t.starts_with('[') || t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        return point_from_json(&v);
    }
    let v = t.split(',').map(|c| parse_fraction(c.trim())).collect::<Result<Vec<Scalar>>>()?;
    ProjectivePoint::from_scalars(&v)
}

pub fn point_from_json(v: &Value) -> Result<ProjectivePoint> {
    match v {
        Value::Array(items) => {
            let coords = items
                .iter()
                .map(|c| match c {
                    Value::String(s) => parse_fraction(s),
                    Value::Number(n) => parse_fraction(&n.to_string()),
                    _ => Err(Error::Parse("coordinates must be strings or integers".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            ProjectivePoint::from_scalars(&coords)
        }
        Value::Object(_) => {
            let c = config_from_json(v)?;
            if c.len() != 1 {
                return Err(Error::Parse("expected a single point".into()));
            }
            Ok(c.point(0).clone())
        }
        _ => Err(Error::Parse("expected a point".into())),
    }
}

pub fn scalars_to_json(v: &[Scalar]) -> Value {
    json!(v.iter().map(format_fraction).collect::<Vec<_>>())
}

pub fn invariant_to_json(v: &InvariantVector) -> Value {
    let c = v.canonical();
    json!({
        "kind": c.kind().to_string(),
        "values": scalars_to_json(c.values()),
        "non_semistable": v.is_non_semistable(),
    })
}

pub fn invariant_from_json(v: &Value) -> Result<InvariantVector> {
    let kind = v["kind"].as_str().ok_or_else(|| Error::Parse("missing kind".into()))?.parse()?;
    let values = v["values"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing values".into()))?
        .iter()
        .map(|s| s.as_str().ok_or_else(|| Error::Parse("values must be strings".into())).and_then(parse_fraction))
        .collect::<Result<Vec<_>>>()?;
    InvariantVector::new(kind, values)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    json!((0..m.nrows()).map(|r| m.row(r).iter().map(format_fraction).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn form_to_json(f: &Form, degree: u32) -> Value {
    scalars_to_json(&f.canonical().coefficient_vector(degree))
}

fn c64_to_json(z: &Complex64) -> Value {
    json!([format!("{:.17e}", z.re), format!("{:.17e}", z.im)])
}

pub fn numeric_point_to_json(p: &NumericPoint) -> Value {
    json!({
        "coords": p.coords.iter().map(c64_to_json).collect::<Vec<_>>(),
        "residual": format!("{:.3e}", p.residual),
        "is_real": p.is_real,
        "exact": p.exact.as_ref().map(point_to_json),
    })
}

fn pair_to_json(p: &CenterPair) -> Value {
    json!({
        "a": numeric_point_to_json(&p.a),
        "b": numeric_point_to_json(&p.b),
        "match_residual": format!("{:.3e}", p.residual),
    })
}

fn quadric_to_json(q: &QuadricSurface) -> Value {
    scalars_to_json(&q.coefficients())
}

fn cubic_to_json(c: &TwistedCubic) -> Value {
    json!({
        "quadrics": c.quadrics().iter().map(|q| form_to_json(q, 2)).collect::<Vec<_>>(),
        "base_points": config_to_json(c.base_points()),
    })
}

fn certificate_to_json(c: &EightCertificate) -> Value {
    json!({
        "first_seven": c.first.iter().map(pair_to_json).collect::<Vec<_>>(),
        "last_seven": c.second.iter().map(pair_to_json).collect::<Vec<_>>(),
        "surviving": c.surviving.iter().map(pair_to_json).collect::<Vec<_>>(),
    })
}

pub fn variety_to_json(v: &CentersVariety) -> Value {
    match v {
        CentersVariety::EverythingN4 { n, witness } => json!({
            "variant": "EverythingN4",
            "n": n,
            "witness": witness.as_ref().map(matrix_to_json),
        }),
        CentersVariety::CubicFibrationN5 { given_center, degeneration, cubic } => json!({
            "variant": "CubicFibrationN5",
            "given_center": point_to_json(given_center),
            "degeneration": degeneration.to_string(),
            "cubic": cubic.as_ref().map(cubic_to_json),
        }),
        CentersVariety::SurfacePairN6 { s_beta, s_alpha, sampled_pairs } => json!({
            "variant": "SurfacePairN6",
            "monomials": "z0^2 z0z1 z0z2 z0z3 z1^2 z1z2 z1z3 z2^2 z2z3 z3^2",
            "S_beta": quadric_to_json(s_beta),
            "S_alpha": quadric_to_json(s_alpha),
            "sampled_pairs": sampled_pairs
                .iter()
                .map(|(a, b)| json!({"a": point_to_json(a), "b": point_to_json(b)}))
                .collect::<Vec<_>>(),
        }),
        CentersVariety::ThreePairsN7 { pairs } => json!({
            "variant": "ThreePairsN7",
            "pairs": pairs.iter().map(pair_to_json).collect::<Vec<_>>(),
        }),
        CentersVariety::EmptyN8 { certificate } => json!({
            "variant": "EmptyN8",
            "certificate": certificate_to_json(certificate),
        }),
        CentersVariety::SurvivingN8 { certificate } => json!({
            "variant": "SurvivingN8",
            "certificate": certificate_to_json(certificate),
        }),
    }
}

/// The instance document of a generated reconstruction.
pub fn reconstruction_to_json(r: &Reconstruction, seed: u64, bound: i64) -> Value {
    json!({
        "n": r.x.len(),
        "seed": seed,
        "bound": bound,
        "X": config_to_json(&r.x),
        "Y": config_to_json(&r.y),
        "ground_truth": {
            "a": point_to_json(&r.a_true),
            "b": point_to_json(&r.b_true),
            "Aprime": matrix_to_json(&r.a_prime_matrix),
            "Bprime": matrix_to_json(&r.b_prime_matrix),
            "Z": config_to_json(&r.z),
        },
    })
}
