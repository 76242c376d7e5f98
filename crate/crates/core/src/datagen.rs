//! Ground-truth instances from a scene in P^4 seen by two projections, and
//! configurations with prescribed degenerations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::invariants::{fano15_lifted, g5_lifted, t6_lifted};
use crate::linalg::Matrix;
use crate::loci::{classify_degeneration_n5, quadric_pair_n6, Degeneration};
use crate::projective::{
    center_admissible, frame_transform, max_coincident, project_config, span_rank, stability_class,
    AdmissibilityMode, Configuration, ProjectivePoint, StabilityClass,
};
use crate::scalar::{self, Scalar};

const BUDGET: usize = 500;

/// Points z_i of P^4 and two projections A', B' with centers a', b'.
/// Then X = A'Z and Y = B'Z admit the ambiguous centers a = A'b', b = B'a'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub z: Configuration,
    pub a_prime_matrix: Matrix,
    pub b_prime_matrix: Matrix,
    pub a_prime: ProjectivePoint,
    pub b_prime: ProjectivePoint,
    pub x: Configuration,
    pub y: Configuration,
    pub a_true: ProjectivePoint,
    pub b_true: ProjectivePoint,
}

fn random_point(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> ProjectivePoint {
    loop {
        let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(p) = ProjectivePoint::from_ints(&c) {
            return p;
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| scalar::int(rng.gen_range(-bound..=bound))).collect()).collect())
}

fn kernel_point(m: &Matrix) -> Option<ProjectivePoint> {
    let k = m.kernel();
    (k.len() == 1).then(|| ProjectivePoint::from_scalars(&k[0]).ok()).flatten()
}

fn apply(m: &Matrix, p: &ProjectivePoint) -> Option<ProjectivePoint> {
    ProjectivePoint::from_scalars(&m.mul_vec(&p.to_scalars())).ok()
}

fn stable_image(x: &Configuration, a: &ProjectivePoint) -> bool {
    project_config(x, a)
        .ok()
        .and_then(|p| stability_class(&p).ok())
        .is_some_and(|c| c == StabilityClass::Stable)
}

/// Genericity demanded by the pipelines for `n` points.
fn generic_for(n: usize, x: &Configuration, y: &Configuration, a: &ProjectivePoint, b: &ProjectivePoint) -> bool {
    if max_coincident(x) > 1 || max_coincident(y) > 1 {
        return false;
    }
    match n {
        0..=4 => {
            let rank = |c: &Configuration, p: &ProjectivePoint| {
                project_config(c, p).is_ok_and(|img| {
                    let refs: Vec<&ProjectivePoint> = img.points().iter().collect();
                    span_rank(&refs) == n.min(3) && (n < 4 || crate::projective::general_quadruple(&img).is_some())
                })
            };
            !x.points().contains(a) && !y.points().contains(b) && rank(x, a) && rank(y, b)
        }
        5 => {
            center_admissible(x, a, AdmissibilityMode::Moduli)
                && center_admissible(y, b, AdmissibilityMode::Moduli)
                && stable_image(x, a)
                && stable_image(y, b)
                && frame_transform(x).is_ok()
                && frame_transform(y).is_ok()
                && classify_degeneration_n5(x, a).ok() == Some(Degeneration::SmoothCubic)
                && classify_degeneration_n5(y, b).ok() == Some(Degeneration::SmoothCubic)
        }
        6 => {
            stable_image(x, a)
                && stable_image(y, b)
                && quadric_pair_n6(x, y).is_ok()
                && (0..6).all(|k| generic_for(5, &x.without(k), &y.without(k), a, b))
        }
        7 => {
            center_admissible(x, a, AdmissibilityMode::Goepel)
                && center_admissible(y, b, AdmissibilityMode::Goepel)
                && stable_image(x, a)
                && stable_image(y, b)
                && (0..7).all(|k| quadric_pair_n6(&x.without(k), &y.without(k)).is_ok())
        }
        _ => {
            let head: Vec<usize> = (0..7).collect();
            let tail: Vec<usize> = (1..8).collect();
            generic_for(7, &x.select(&head), &y.select(&head), a, b)
                && generic_for(7, &x.select(&tail), &y.select(&tail), a, b)
        }
    }
}

/// Whether the lifted invariants of (X, a) and (Y, b) agree, for the
/// invariants that apply to `n` points.
pub fn invariants_agree(x: &Configuration, y: &Configuration, a: &ProjectivePoint, b: &ProjectivePoint) -> Result<bool> {
    Ok(match x.len() {
        0..=4 => true,
        5 => {
            let (u, v) = (g5_lifted(x, a)?, g5_lifted(y, b)?);
            !u.is_zero() && u.projectively_equal(&v)
        }
        6 => {
            let (u, v) = (t6_lifted(x, a)?, t6_lifted(y, b)?);
            !u.is_zero() && u.projectively_equal(&v)
        }
        7 => {
            let (u, v) = (fano15_lifted(x, a)?, fano15_lifted(y, b)?);
            !u.is_zero() && u.projectively_equal(&v)
        }
        n => {
            let head: Vec<usize> = (0..7).collect();
            let tail: Vec<usize> = (n - 7..n).collect();
            invariants_agree(&x.select(&head), &y.select(&head), a, b)?
                && invariants_agree(&x.select(&tail), &y.select(&tail), a, b)?
        }
    })
}

/// A seeded random reconstruction for `n` points with integer entries in
/// [-bound, bound], satisfying the genericity needed downstream.
pub fn generate_reconstruction(n: usize, seed: u64, bound: i64) -> Result<Reconstruction> {
    if n < 3 {
        return Err(Error::InvalidInput("need at least three points".into()));
    }
    if bound < 10 {
        return Err(Error::InvalidInput("coordinate bound must be at least 10".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..BUDGET {
        let z = Configuration::new((0..n).map(|_| random_point(&mut rng, 4, bound)).collect())?;
        let am = random_matrix(&mut rng, 4, 5, bound);
        let bm = random_matrix(&mut rng, 4, 5, bound);
        let (Some(ap), Some(bp)) = (kernel_point(&am), kernel_point(&bm)) else { continue };
        if ap == bp || z.points().iter().any(|p| span_rank(&[&ap, &bp, p]) < 3) {
            continue;
        }
        let (Ok(x), Ok(y)) = (z.transform(&am), z.transform(&bm)) else { continue };
        let (Some(a_true), Some(b_true)) = (apply(&am, &bp), apply(&bm, &ap)) else { continue };
        if !generic_for(n, &x, &y, &a_true, &b_true) {
            continue;
        }
        if !invariants_agree(&x, &y, &a_true, &b_true)? {
            return Err(Error::Inconsistent(format!("seed {seed}: ground truth fails the invariant check")));
        }
        return Ok(Reconstruction { z, a_prime_matrix: am, b_prime_matrix: bm, a_prime: ap, b_prime: bp, x, y, a_true, b_true });
    }
    Err(Error::GenerationFailed(format!("no admissible sample for n = {n} within {BUDGET} draws")))
}

/// Named degenerations. The plane kinds carry the number of points; the
/// center kinds are five points of P^3 with a center in the position named.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegenerateKind {
    CoincidentPair(usize),
    FourCollinear(usize),
    FiveCollinear(usize),
    OnConic(usize),
    /// A center in no plane of three points.
    GenericCenter,
    /// A center in the plane of points 1, 2, 3.
    CoplanarCenter,
    /// A center on the line where the planes ⟨x1,x2,x3⟩ and ⟨x1,x4,x5⟩ meet.
    DoublyCoplanarCenter,
    /// A center on the line through points 1 and 2.
    CollinearCenter,
    /// The center is point 2.
    CenterAtPoint,
}

impl DegenerateKind {
    /// The classification the center kinds are built to realize.
    pub fn expected_degeneration(self) -> Option<Degeneration> {
        Some(match self {
            DegenerateKind::GenericCenter => Degeneration::SmoothCubic,
            DegenerateKind::CoplanarCenter => Degeneration::LinePlusConic,
            DegenerateKind::DoublyCoplanarCenter => Degeneration::ThreeLines,
            DegenerateKind::CollinearCenter => Degeneration::LinePlusPlane,
            DegenerateKind::CenterAtPoint => Degeneration::AllOfP3,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degenerate {
    pub points: Configuration,
    pub center: Option<ProjectivePoint>,
}

fn combo(rng: &mut ChaCha8Rng, pts: &[&ProjectivePoint]) -> ProjectivePoint {
    loop {
        let c: Vec<i64> = pts.iter().map(|_| rng.gen_range(-7..=7)).collect();
        if c.iter().any(|&v| v == 0) {
            continue;
        }
        let d = pts[0].ambient_dim();
        let v: Vec<Scalar> =
            (0..=d).map(|i| pts.iter().zip(&c).map(|(p, &ci)| &p.to_scalars()[i] * scalar::int(ci)).sum()).collect();
        if let Ok(p) = ProjectivePoint::from_scalars(&v) {
            return p;
        }
    }
}

fn plane_kind(rng: &mut ChaCha8Rng, kind: DegenerateKind) -> Option<Configuration> {
    let (n, special) = match kind {
        DegenerateKind::CoincidentPair(n) => (n, 2),
        DegenerateKind::FourCollinear(n) => (n, 4),
        DegenerateKind::FiveCollinear(n) => (n, 5),
        _ => unreachable!(),
    };
    if n < special {
        return None;
    }
    let mut pts = Vec::new();
    if special == 2 {
        let p = random_point(rng, 2, 9);
        pts.push(p.clone());
        pts.push(p);
    } else {
        let (u, v) = (random_point(rng, 2, 9), random_point(rng, 2, 9));
        if u == v {
            return None;
        }
        for _ in 0..special {
            pts.push(combo(rng, &[&u, &v]));
        }
    }
    for _ in special..n {
        pts.push(random_point(rng, 2, 9));
    }
    let c = Configuration::new(pts).ok()?;
    let (coincident, collinear) = if special == 2 { (2, n.min(3)) } else { (1, special) };
    let ok = max_coincident(&c) == coincident && crate::projective::max_collinear(&c) == collinear;
    ok.then_some(c)
}

/// A configuration realizing `kind` exactly, with rational coordinates.
pub fn generate_degenerate(kind: DegenerateKind, seed: u64) -> Result<Degenerate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..BUDGET {
        match kind {
            DegenerateKind::OnConic(n) => {
                let mut ts: Vec<i64> = Vec::new();
                while ts.len() < n {
                    let t = rng.gen_range(-12..=12);
                    if !ts.contains(&t) {
                        ts.push(t);
                    }
                }
                let pts = ts.iter().map(|&t| ProjectivePoint::from_ints(&[1, t, t * t])).collect::<Result<Vec<_>>>()?;
                return Ok(Degenerate { points: Configuration::new(pts)?, center: None });
            }
            DegenerateKind::CoincidentPair(_) | DegenerateKind::FourCollinear(_) | DegenerateKind::FiveCollinear(_) => {
                if let Some(points) = plane_kind(&mut rng, kind) {
                    return Ok(Degenerate { points, center: None });
                }
            }
            _ => {
                let x = Configuration::new((0..5).map(|_| random_point(&mut rng, 3, 9)).collect())?;
                if frame_transform(&x).is_err() {
                    continue;
                }
                let p = |i: usize| x.point(i - 1);
                let a = match kind {
                    DegenerateKind::GenericCenter => random_point(&mut rng, 3, 9),
                    DegenerateKind::CoplanarCenter => combo(&mut rng, &[p(1), p(2), p(3)]),
                    DegenerateKind::DoublyCoplanarCenter => {
                        // where the line ⟨x2,x3⟩ meets the plane ⟨x1,x4,x5⟩
                        let m = Matrix::from_cols(vec![
                            p(2).to_scalars(),
                            p(3).to_scalars(),
                            p(1).to_scalars(),
                            p(4).to_scalars(),
                            p(5).to_scalars().into_iter().map(|v| -v).collect(),
                        ]);
                        let k = m.kernel();
                        if k.len() != 1 {
                            continue;
                        }
                        let w: Vec<Scalar> =
                            (0..4).map(|i| &k[0][0] * &p(2).to_scalars()[i] + &k[0][1] * &p(3).to_scalars()[i]).collect();
                        let Ok(w) = ProjectivePoint::from_scalars(&w) else { continue };
                        combo(&mut rng, &[p(1), &w])
                    }
                    DegenerateKind::CollinearCenter => combo(&mut rng, &[p(1), p(2)]),
                    DegenerateKind::CenterAtPoint => p(2).clone(),
                    _ => unreachable!(),
                };
                if classify_degeneration_n5(&x, &a).ok() == kind.expected_degeneration() {
                    return Ok(Degenerate { points: x, center: Some(a) });
                }
            }
        }
    }
    Err(Error::GenerationFailed(format!("could not realize {kind:?}")))
}
