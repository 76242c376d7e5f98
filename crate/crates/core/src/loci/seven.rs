use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::{monomials, Form};
use crate::invariants::{fano15_lifted_c64, weddle_quartic};
use crate::linalg::{det_laplace, Matrix};
use crate::poly::UniPoly;
use crate::projective::Configuration;
use crate::scalar::{self, Scalar};

use super::six::quadric_pair_n6;
use super::solve::{normalize, projective_distance, solve_quadric_system, NumericPoint};

/// Below this projective distance to the all-ones direction an invariant
/// vector counts as ω.
pub const OMEGA_DISTANCE: f64 = 1e-6;

/// Two numeric centers closer than this are treated as the same point.
pub const AGREEMENT_DISTANCE: f64 = 1e-7;

/// A matched pair of centers with the projective distance between their
/// Fano vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterPair {
    pub a: NumericPoint,
    pub b: NumericPoint,
    pub residual: f64,
}

fn check_seven(x: &Configuration, y: &Configuration) -> Result<()> {
    if x.ambient_dim() != 3 || y.ambient_dim() != 3 || x.len() != 7 || y.len() != 7 {
        return Err(Error::InvalidInput("expected two 7-point configurations in P^3".into()));
    }
    Ok(())
}

/// The seven leave-one-out quadric pairs (S_β^(k), S_α^(k)) as forms.
pub fn leave_one_out_quadrics(x: &Configuration, y: &Configuration) -> Result<(Vec<Form>, Vec<Form>)> {
    check_seven(x, y)?;
    let pairs: Vec<Result<(Form, Form)>> = (0..7)
        .into_par_iter()
        .map(|k| {
            let (sb, sa) = quadric_pair_n6(&x.without(k), &y.without(k))?;
            Ok((sb.to_form(), sa.to_form()))
        })
        .collect();
    let pairs = pairs.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(pairs.into_iter().unzip())
}

/// Centers a (resp. b) common to the seven S_β (resp. S_α) quadrics.
pub fn candidates_n7(
    x: &Configuration,
    y: &Configuration,
    tol: f64,
    seed: u64,
) -> Result<(Vec<NumericPoint>, Vec<NumericPoint>)> {
    let (beta, alpha) = leave_one_out_quadrics(x, y)?;
    let (a, b) = rayon::join(
        || solve_quadric_system(&beta, Some(3), tol, seed),
        || solve_quadric_system(&alpha, Some(3), tol, seed),
    );
    Ok((a?, b?))
}

fn unit_fano(x: &Configuration, p: &NumericPoint) -> Result<Vec<Complex64>> {
    Ok(normalize(&fano15_lifted_c64(x, &p.coords)?))
}

/// Projective distance of a Fano vector to ω = (1, …, 1).
pub fn omega_distance(v: &[Complex64]) -> f64 {
    projective_distance(v, &vec![Complex64::new(1.0, 0.0); v.len()])
}

fn assignments(n: usize, m: usize) -> Vec<Vec<usize>> {
    // injective maps from the smaller side into the larger one
    fn rec(i: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for j in 0..m {
            if !cur.contains(&j) {
                cur.push(j);
                rec(i + 1, n, m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// Matches candidate centers by their Fano vectors, after discarding those
/// that map to ω.
pub fn pair_candidates_n7(
    x: &Configuration,
    y: &Configuration,
    a_cands: &[NumericPoint],
    b_cands: &[NumericPoint],
    tol: f64,
) -> Result<Vec<CenterPair>> {
    check_seven(x, y)?;
    let keep = |cfg: &Configuration, cands: &[NumericPoint]| -> Result<Vec<(NumericPoint, Vec<Complex64>)>> {
        let mut out = Vec::new();
        for c in cands {
            let v = unit_fano(cfg, c)?;
            if v.iter().all(|z| z.norm() < 1e-300) || omega_distance(&v) < OMEGA_DISTANCE.max(tol) {
                continue;
            }
            out.push((c.clone(), v));
        }
        Ok(out)
    };
    let av = keep(x, a_cands)?;
    let bv = keep(y, b_cands)?;
    if av.len() != bv.len() {
        return Err(Error::AmbiguousMatch(format!("{} a-candidates against {} b-candidates", av.len(), bv.len())));
    }
    if av.len() > 7 {
        return Err(Error::InvalidInput("too many candidates to match".into()));
    }
    let dist: Vec<Vec<f64>> = av.iter().map(|(_, u)| bv.iter().map(|(_, v)| projective_distance(u, v)).collect()).collect();
    let mut totals: Vec<(f64, Vec<usize>)> = assignments(av.len(), bv.len())
        .into_iter()
        .map(|p| (p.iter().enumerate().map(|(i, &j)| dist[i][j]).sum(), p))
        .collect();
    totals.sort_by(|p, q| p.0.total_cmp(&q.0));
    if totals.len() > 1 && (totals[1].0 - totals[0].0).abs() <= tol {
        return Err(Error::AmbiguousMatch(format!(
            "best matchings have totals {:.3e} and {:.3e}",
            totals[0].0, totals[1].0
        )));
    }
    let Some((_, best)) = totals.into_iter().next() else { return Ok(Vec::new()) };
    Ok(best
        .iter()
        .enumerate()
        .map(|(i, &j)| CenterPair { a: av[i].0.clone(), b: bv[j].0.clone(), residual: dist[i][j] })
        .collect())
}

/// The three center pairs of two 7-point configurations.
pub fn centers_n7(x: &Configuration, y: &Configuration, tol: f64, seed: u64) -> Result<Vec<CenterPair>> {
    let (a, b) = candidates_n7(x, y, tol, seed)?;
    pair_candidates_n7(x, y, &a, &b, tol)
}

/// Pairs from the first seven points, from points two to eight, and those
/// present in both.
#[derive(Clone, Debug, PartialEq)]
pub struct EightCertificate {
    pub first: Vec<CenterPair>,
    pub second: Vec<CenterPair>,
    pub surviving: Vec<CenterPair>,
}

fn same_pair(p: &CenterPair, q: &CenterPair, tol: f64) -> bool {
    let close = |u: &NumericPoint, v: &NumericPoint| match (&u.exact, &v.exact) {
        (Some(e), Some(f)) => e == f,
        _ => u.distance(v) < tol,
    };
    close(&p.a, &q.a) && close(&p.b, &q.b)
}

pub fn centers_n_ge8(x: &Configuration, y: &Configuration, tol: f64, seed: u64) -> Result<EightCertificate> {
    if x.len() != y.len() || x.len() < 8 || x.ambient_dim() != 3 || y.ambient_dim() != 3 {
        return Err(Error::InvalidInput("expected two configurations of at least 8 points in P^3".into()));
    }
    let head: Vec<usize> = (0..7).collect();
    let tail: Vec<usize> = (1..8).collect();
    let first = centers_n7(&x.select(&head), &y.select(&head), tol, seed)?;
    let second = centers_n7(&x.select(&tail), &y.select(&tail), tol, seed)?;
    let agree = AGREEMENT_DISTANCE.max(tol);
    let surviving = first.iter().filter(|p| second.iter().any(|q| same_pair(p, q, agree))).cloned().collect();
    Ok(EightCertificate { first, second, surviving })
}

/// A point on the Weddle curve with its residuals on the seven
/// leave-one-out Weddle quartics.
#[derive(Clone, Debug, PartialEq)]
pub struct WeddlePoint {
    pub point: NumericPoint,
    pub weddle_residuals: Vec<f64>,
}

fn sym_matrix(coeffs: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![Scalar::zero(); 4]; 4];
    let half = scalar::frac(1, 2);
    for (e, c) in monomials(2).iter().zip(coeffs) {
        let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat(i).take(e[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = c.clone();
        } else {
            m[i][j] = c * &half;
            m[j][i] = c * &half;
        }
    }
    m
}

fn quartic_roots(p: &UniPoly) -> Vec<Complex64> {
    let Some(deg) = p.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let monic: Vec<f64> = p.monic().coeffs().iter().map(scalar::to_f64).collect();
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -monic[i];
    }
    let d = p.derivative();
    comp.complex_eigenvalues()
        .iter()
        .map(|&r| {
            let mut r = r;
            for _ in 0..8 {
                let dv = d.eval_c64(r);
                if dv.norm() == 0.0 {
                    break;
                }
                r -= p.eval_c64(r) / dv;
            }
            r
        })
        .collect()
}

/// Vertex of a singular quadric through the seven points of `x`.
pub fn weddle_curve_point(x: &Configuration, tol: f64, seed: u64) -> Result<WeddlePoint> {
    if x.ambient_dim() != 3 || x.len() != 7 {
        return Err(Error::InvalidInput("expected seven points of P^3".into()));
    }
    let monos = monomials(2);
    let incidence = Matrix::from_rows(
        x.points()
            .iter()
            .map(|p| {
                let z = p.to_scalars();
                monos.iter().map(|e| Form::monomial(*e, Scalar::from_integer(1.into())).eval(&z)).collect()
            })
            .collect(),
    );
    let net = incidence.kernel();
    if net.len() != 3 {
        return Err(Error::DegenerateInput(format!("quadrics through the points form a {}-dimensional space", net.len())));
    }
    let quartics = (0..7).map(|k| weddle_quartic(&x.without(k))).collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fallback: Option<(Vec<Vec<Complex64>>, Complex64)> = None;
    let mut chosen = None;
    for _ in 0..24 {
        let combo = |rng: &mut ChaCha8Rng| -> Vec<Scalar> {
            let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-9..=9)).collect();
            (0..10).map(|m| (0..3).map(|i| &net[i][m] * scalar::int(c[i])).sum()).collect()
        };
        let qa = sym_matrix(&combo(&mut rng));
        let qb = sym_matrix(&combo(&mut rng));
        let pencil: Vec<Vec<UniPoly>> = (0..4)
            .map(|i| (0..4).map(|j| UniPoly::new(vec![qa[i][j].clone(), qb[i][j].clone()])).collect())
            .collect();
        let det = det_laplace(&pencil);
        if det.degree() != Some(4) {
            continue;
        }
        let roots = quartic_roots(&det);
        let cm = |s: Complex64| -> Vec<Vec<Complex64>> {
            (0..4)
                .map(|i| (0..4).map(|j| scalar::to_f64(&qa[i][j]) + s * scalar::to_f64(&qb[i][j])).collect())
                .collect()
        };
        if let Some(r) = roots.iter().find(|r| r.im.abs() < 1e-9 * r.norm().max(1.0)) {
            chosen = Some((cm(Complex64::new(r.re, 0.0)), *r));
            break;
        }
        if fallback.is_none() {
            if let Some(r) = roots.first() {
                fallback = Some((cm(*r), *r));
            }
        }
    }
    let (m, _) = chosen.or(fallback).ok_or_else(|| Error::DegenerateInput("no singular quadric found in the net".into()))?;
    let mat = DMatrix::from_fn(4, 4, |i, j| m[i][j]);
    let svd = mat.svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::PathFailure("svd failed".into()))?;
    let k = (0..4).min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j])).unwrap();
    let v: Vec<Complex64> = vt.row(k).iter().map(|z| z.conj()).collect();
    let weddle_residuals: Vec<f64> = quartics.iter().map(|w| w.residual_c64(&v)).collect();
    let residual = weddle_residuals.iter().cloned().fold(0.0, f64::max);
    Ok(WeddlePoint { point: NumericPoint::from_coords(&v, residual, tol.max(1e-12)), weddle_residuals })
}
