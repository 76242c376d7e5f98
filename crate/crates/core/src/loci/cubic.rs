use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{span_dim, Form};
use crate::linalg::{det_laplace, Matrix};
use crate::poly::UniPoly;
use crate::projective::{
    center_admissible, frame_transform, on_line, on_plane, proportional, AdmissibilityMode, Configuration,
    ProjectivePoint,
};
use crate::scalar::Scalar;

/// A twisted cubic given by three quadrics, together with the points it
/// was built through and the frame that normalizes those points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCubic {
    quadrics: Vec<Form>,
    normalized: Vec<Form>,
    frame: Matrix,
    base_points: Configuration,
}

impl TwistedCubic {
    pub fn quadrics(&self) -> &[Form] {
        &self.quadrics
    }

    /// The quadrics in coordinates where the base points are the standard frame.
    pub fn normalized_quadrics(&self) -> &[Form] {
        &self.normalized
    }

    /// The transform sending the base points to the standard frame.
    pub fn frame(&self) -> &Matrix {
        &self.frame
    }

    pub fn base_points(&self) -> &Configuration {
        &self.base_points
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        let z = p.to_scalars();
        self.quadrics.iter().all(|q| q.eval(&z).is_zero())
    }
}

/// Degree-3 parametrization t ↦ (p0(t) : p1(t) : p2(t) : p3(t)) of a twisted
/// cubic; t = ∞ maps to the vector of t³ coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicParam {
    coords: Vec<UniPoly>,
}

impl CubicParam {
    pub fn coords(&self) -> &[UniPoly] {
        &self.coords
    }

    pub fn eval(&self, t: &Scalar) -> Vec<Scalar> {
        self.coords.iter().map(|p| p.eval(t)).collect()
    }

    pub fn eval_c64(&self, t: Complex64) -> Vec<Complex64> {
        self.coords.iter().map(|p| p.eval_c64(t)).collect()
    }

    pub fn point(&self, t: &Scalar) -> Option<ProjectivePoint> {
        ProjectivePoint::from_scalars(&self.eval(t)).ok()
    }

    pub fn at_infinity(&self) -> Vec<Scalar> {
        self.coords.iter().map(|p| p.coeff(3)).collect()
    }

    pub fn point_at_infinity(&self) -> Option<ProjectivePoint> {
        ProjectivePoint::from_scalars(&self.at_infinity()).ok()
    }

    /// Parameters at which the curve passes through `p`: the monic gcd of
    /// the minors p_i c_j(t) - p_j c_i(t), and whether t = ∞ is one of them.
    pub fn incidence(&self, p: &[Scalar]) -> (UniPoly, bool) {
        let mut g = UniPoly::zero();
        for i in 0..4 {
            for j in i + 1..4 {
                let m = self.coords[j].scale(&p[i]) - self.coords[i].scale(&p[j]);
                g = g.gcd(&m);
            }
        }
        (g, proportional(&self.at_infinity(), p))
    }
}

/// The closure of the set of centers b for which five points Y seen from b
/// look like five points X seen from `a`: a twisted cubic through Y.
pub fn cubic_locus_n5(x: &Configuration, y: &Configuration, a: &ProjectivePoint) -> Result<TwistedCubic> {
    if x.ambient_dim() != 3 || y.ambient_dim() != 3 || x.len() != 5 || y.len() != 5 || a.ambient_dim() != 3 {
        return Err(Error::InvalidInput("cubic_locus_n5 needs two 5-point configurations and a center in P^3".into()));
    }
    if !center_admissible(x, a, AdmissibilityMode::Moduli) {
        return Err(Error::InadmissibleCenter("center lies on a line through two points".into()));
    }
    let u = frame_transform(x)?;
    let v = frame_transform(y)?;
    let ap = u.mul_vec(&a.to_scalars());
    let r = ap.iter().position(|c| !c.is_zero()).expect("nonzero center");
    let b: Vec<Form> = (0..4).map(Form::var).collect();
    // rank of [a' | b' | a'∘b'] drops: eliminate with row r
    let rows: Vec<(Form, Form)> = (0..4)
        .filter(|&i| i != r)
        .map(|i| {
            let ratio = &ap[i] / &ap[r];
            let l = &b[i] - &b[r].scale(&ratio);
            let q = (&b[i] - &b[r]).scale(&ap[i]);
            (l, q)
        })
        .collect();
    let mut normalized = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let m = &(&rows[i].0 * &rows[j].1) - &(&rows[j].0 * &rows[i].1);
            normalized.push(m.canonical());
        }
    }
    if span_dim(&normalized, 2) != 3 {
        return Err(Error::DegenerateCurve("minor quadrics are dependent".into()));
    }
    let quadrics = normalized.iter().map(|q| q.pullback(&v).canonical()).collect();
    Ok(TwistedCubic { quadrics, normalized, frame: v, base_points: y.clone() })
}

/// Parametrizes the cubic by the pencil of planes z2 = t z3 through the
/// first two normalized base points. The third base point sits at t = ∞,
/// the fourth at t = 0 and the fifth at t = 1.
pub fn cubic_param_n5(c: &TwistedCubic) -> Result<CubicParam> {
    let k = |q: &Form, e: [u32; 4]| q.coeff(&e);
    let mut rows: Vec<Vec<UniPoly>> = Vec::new();
    for q in &c.normalized {
        if !k(q, [2, 0, 0, 0]).is_zero() || !k(q, [0, 2, 0, 0]).is_zero() {
            return Err(Error::DegenerateCurve("quadric does not pass through the frame".into()));
        }
        rows.push(vec![
            UniPoly::constant(k(q, [1, 1, 0, 0])),
            UniPoly::new(vec![k(q, [1, 0, 0, 1]), k(q, [1, 0, 1, 0])]),
            UniPoly::new(vec![k(q, [0, 1, 0, 1]), k(q, [0, 1, 1, 0])]),
            UniPoly::new(vec![k(q, [0, 0, 0, 2]), k(q, [0, 0, 1, 1]), k(q, [0, 0, 2, 0])]),
        ]);
    }
    // kernel of the 3x4 system in (z0z1, z0z3, z1z3, z3²) by signed cofactors
    let m: Vec<UniPoly> = (0..4)
        .map(|j| {
            let minor: Vec<Vec<UniPoly>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect()).collect();
            let d = det_laplace(&minor);
            if j % 2 == 1 {
                -d
            } else {
                d
            }
        })
        .collect();
    let mut p = vec![m[1].clone(), m[2].clone(), &UniPoly::t() * &m[3], m[3].clone()];
    let g = p.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return Err(Error::DegenerateCurve("plane sections do not determine a point".into()));
    }
    for c in p.iter_mut() {
        *c = c.exact_div(&g).expect("gcd divides");
    }
    let inv = c.frame.inverse().expect("frame is invertible");
    let coords: Vec<UniPoly> = (0..4)
        .map(|i| (0..4).fold(UniPoly::zero(), |acc, j| &acc + &p[j].scale(&inv[(i, j)])))
        .collect();
    if coords.iter().filter_map(UniPoly::degree).max() != Some(3) {
        return Err(Error::DegenerateCurve("parametrization is not of degree three".into()));
    }
    Ok(CubicParam { coords })
}

/// How the fiber of centers over a fixed `a` degenerates for five points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Degeneration {
    SmoothCubic,
    LinePlusConic,
    ThreeLines,
    LinePlusPlane,
    AllOfP3,
}

impl fmt::Display for Degeneration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Degeneration::SmoothCubic => "SmoothCubic",
            Degeneration::LinePlusConic => "LinePlusConic",
            Degeneration::ThreeLines => "ThreeLines",
            Degeneration::LinePlusPlane => "LinePlusPlane",
            Degeneration::AllOfP3 => "AllOfP3",
        };
        f.write_str(s)
    }
}

impl FromStr for Degeneration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "SmoothCubic" => Degeneration::SmoothCubic,
            "LinePlusConic" => Degeneration::LinePlusConic,
            "ThreeLines" => Degeneration::ThreeLines,
            "LinePlusPlane" => Degeneration::LinePlusPlane,
            "AllOfP3" => Degeneration::AllOfP3,
            other => return Err(Error::Parse(format!("unknown degeneration {other}"))),
        })
    }
}

/// Planes ⟨x_i, x_j, x_k⟩ (0-based triples) containing `a`.
pub fn planes_through(x: &Configuration, a: &ProjectivePoint) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            for k in j + 1..x.len() {
                if on_plane(a, x.point(i), x.point(j), x.point(k)) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

pub fn classify_degeneration_n5(x: &Configuration, a: &ProjectivePoint) -> Result<Degeneration> {
    if x.ambient_dim() != 3 || x.len() != 5 || a.ambient_dim() != 3 {
        return Err(Error::InvalidInput("classification needs five points and a center in P^3".into()));
    }
    if x.points().contains(a) {
        return Ok(Degeneration::AllOfP3);
    }
    for i in 0..5 {
        for j in i + 1..5 {
            if on_line(a, x.point(i), x.point(j)) {
                return Ok(Degeneration::LinePlusPlane);
            }
        }
    }
    Ok(match planes_through(x, a).len() {
        0 => Degeneration::SmoothCubic,
        1 => Degeneration::LinePlusConic,
        _ => Degeneration::ThreeLines,
    })
}
