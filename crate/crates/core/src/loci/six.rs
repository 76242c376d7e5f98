use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::invariants::{t6_lifted, t6_lifted_forms};
use crate::linalg::Matrix;
use crate::poly::UniPoly;
use crate::projective::{Configuration, ProjectivePoint};
use crate::scalar::{self, Scalar};

use super::cubic::{cubic_locus_n5, cubic_param_n5, TwistedCubic};
use super::quadric::QuadricSurface;

fn check_six(x: &Configuration, y: &Configuration) -> Result<()> {
    if x.ambient_dim() != 3 || y.ambient_dim() != 3 || x.len() != 6 || y.len() != 6 {
        return Err(Error::InvalidInput("expected two 6-point configurations in P^3".into()));
    }
    Ok(())
}

/// The one linear relation among the five lifted quadrics of `x`.
fn relation(x: &Configuration) -> Result<(Vec<Form>, Vec<Scalar>)> {
    let q: Vec<Form> = t6_lifted_forms(x)?.into_iter().take(5).collect();
    let m = Matrix::from_cols(q.iter().map(|f| f.coefficient_vector(2)).collect());
    let mut k = m.kernel();
    if k.len() != 1 {
        return Err(Error::DegenerateInput(format!("lifted quadrics satisfy {} relations, expected one", k.len())));
    }
    Ok((q, k.remove(0)))
}

fn combine(q: &[Form], c: &[Scalar]) -> Form {
    q.iter().zip(c).fold(Form::zero(), |acc, (f, ci)| acc + f.scale(ci)).canonical()
}

/// The quadrics S_β ⊃ X and S_α ⊃ Y: β is the relation among the lifted
/// quadrics of Y, applied to those of X, and α the other way round.
pub fn quadric_pair_n6(x: &Configuration, y: &Configuration) -> Result<(QuadricSurface, QuadricSurface)> {
    check_six(x, y)?;
    let (qx, alpha) = relation(x)?;
    let (qy, beta) = relation(y)?;
    let s_beta = combine(&qx, &beta);
    let s_alpha = combine(&qy, &alpha);
    if s_beta.is_zero() || s_alpha.is_zero() {
        return Err(Error::DegenerateInput("quadric pair vanishes identically".into()));
    }
    Ok((QuadricSurface::from_form(&s_beta)?, QuadricSurface::from_form(&s_alpha)?))
}

/// Crude genericity score of a 5-subset: the smallest normalized 4x4
/// bracket among its points.
fn subset_score(c: &Configuration) -> f64 {
    let pts: Vec<Vec<f64>> = c
        .points()
        .iter()
        .map(|p| {
            let v = p.to_f64();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter().map(|x| x / n).collect()
        })
        .collect();
    let mut best = f64::INFINITY;
    for skip in 0..pts.len() {
        let rows: Vec<Vec<f64>> = pts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, r)| r.clone()).collect();
        let m = nalgebra::Matrix4::from_fn(|r, c| rows[r][c]);
        best = best.min(m.determinant().abs());
    }
    best
}

fn pair_order(x: &Configuration, y: &Configuration) -> Vec<(usize, usize)> {
    let score: Vec<f64> = (0..6).map(|k| subset_score(&x.without(k)) * subset_score(&y.without(k))).collect();
    let mut pairs: Vec<(usize, usize)> = (0..6).flat_map(|k| (k + 1..6).map(move |l| (k, l))).collect();
    pairs.sort_by(|p, q| {
        let sp = score[p.0].min(score[p.1]);
        let sq = score[q.0].min(score[q.1]);
        sq.total_cmp(&sp).then(p.cmp(q))
    });
    pairs
}

/// Intersects cubics T_k and T_l away from their four shared base points.
fn meet_cubics(tk: &TwistedCubic, tl: &TwistedCubic, shared: &[&ProjectivePoint]) -> Result<ProjectivePoint> {
    let param = cubic_param_n5(tk)?;
    let h: Vec<UniPoly> = tl.quadrics().iter().map(|q| q.eval_with(param.coords(), |c| UniPoly::constant(c.clone()))).collect();
    let nonzero: Vec<&UniPoly> = h.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::DegenerateCurve("the two cubics coincide".into()));
    }
    let mut m_inf = nonzero.iter().map(|p| 6 - p.degree().unwrap()).min().unwrap();
    let mut g = nonzero.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p));
    for p in shared {
        let (gp, at_inf) = param.incidence(&p.to_scalars());
        if gp.degree() == Some(1) {
            g = g
                .exact_div(&gp)
                .ok_or_else(|| Error::NoRationalImage("shared point is not a common root".into()))?;
        } else if at_inf && gp.degree() == Some(0) {
            if m_inf == 0 {
                return Err(Error::NoRationalImage("shared point at infinity is not common".into()));
            }
            m_inf -= 1;
        } else {
            return Err(Error::DegenerateCurve("shared point has no simple parameter".into()));
        }
    }
    let coords = match (g.degree(), m_inf) {
        (Some(1), 0) => {
            let root = -g.coeff(0) / g.coeff(1);
            param.eval(&root)
        }
        (Some(0), 1) => param.at_infinity(),
        _ => return Err(Error::NoRationalImage("cubics do not meet in a single further point".into())),
    };
    ProjectivePoint::from_scalars(&coords)
}

/// The unique b ∈ S_α whose view of Y matches the view of X from `a`.
pub fn map_a_to_b_n6(x: &Configuration, y: &Configuration, a: &ProjectivePoint) -> Result<ProjectivePoint> {
    check_six(x, y)?;
    if a.ambient_dim() != 3 {
        return Err(Error::InvalidInput("center must lie in P^3".into()));
    }
    if x.points().contains(a) {
        return Err(Error::InadmissibleCenter("center coincides with a point of X".into()));
    }
    let (s_beta, s_alpha) = quadric_pair_n6(x, y)?;
    if !s_beta.contains(a) {
        return Err(Error::NoRationalImage("center is not on S_beta".into()));
    }
    let cubics: Vec<Option<TwistedCubic>> = (0..6).map(|k| cubic_locus_n5(&x.without(k), &y.without(k), a).ok()).collect();
    let mut found = None;
    for (k, l) in pair_order(x, y) {
        let (Some(tk), Some(tl)) = (&cubics[k], &cubics[l]) else { continue };
        let shared: Vec<&ProjectivePoint> = (0..6).filter(|&i| i != k && i != l).map(|i| y.point(i)).collect();
        let attempt = meet_cubics(tk, tl, &shared).or_else(|_| meet_cubics(tl, tk, &shared));
        if let Ok(b) = attempt {
            found = Some(b);
            break;
        }
    }
    let b = found.ok_or_else(|| Error::NoRationalImage("no pair of cubics meets in a rational point".into()))?;
    if !s_alpha.contains(&b) {
        return Err(Error::Inconsistent("image point is not on S_alpha".into()));
    }
    if cubics.iter().flatten().any(|t| !t.contains(&b)) {
        return Err(Error::Inconsistent("image point misses one of the six cubics".into()));
    }
    if !y.points().contains(&b) && !t6_lifted(x, a)?.projectively_equal(&t6_lifted(y, &b)?) {
        return Err(Error::Inconsistent("lifted invariants are not proportional".into()));
    }
    Ok(b)
}

/// The inverse map, S_α → S_β.
pub fn map_b_to_a_n6(x: &Configuration, y: &Configuration, b: &ProjectivePoint) -> Result<ProjectivePoint> {
    map_a_to_b_n6(y, x, b)
}

/// Rational points of S_β obtained as second intersections of lines
/// through x_1, with their images under the point map.
pub fn sample_pairs_n6(
    x: &Configuration,
    y: &Configuration,
    count: usize,
    seed: u64,
) -> Result<Vec<(ProjectivePoint, ProjectivePoint)>> {
    use rand::{Rng, SeedableRng};
    let (s_beta, _) = quadric_pair_n6(x, y)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count * 10 {
        if out.len() == count {
            break;
        }
        let w: Vec<Scalar> = (0..4).map(|_| scalar::int(rng.gen_range(-20..=20))).collect();
        let Some(a) = s_beta.second_point(x.point(0), &w) else { continue };
        if x.points().contains(&a) {
            continue;
        }
        if let Ok(b) = map_a_to_b_n6(x, y, &a) {
            out.push((a, b));
        }
    }
    Ok(out)
}
