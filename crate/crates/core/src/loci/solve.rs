use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::forms::{monomials, Exponent, Form};
use crate::linalg::Matrix;
use crate::projective::ProjectivePoint;
use crate::scalar::{self, Scalar};

const MAX_DEGREE: u32 = 6;
const DEDUP_DISTANCE: f64 = 1e-8;

/// A complex point of P^3 found numerically.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPoint {
    /// Unit norm, with the largest-modulus coordinate real and positive.
    pub coords: Vec<Complex64>,
    /// Largest |f(z)| over the defining forms, both unit-normalized.
    pub residual: f64,
    pub is_real: bool,
    /// The exact rational point, when one was recognized and verified.
    pub exact: Option<ProjectivePoint>,
}

impl NumericPoint {
    pub fn from_exact(p: &ProjectivePoint) -> Self {
        let coords: Vec<Complex64> = p.to_f64().into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        NumericPoint { coords: normalize(&coords), residual: 0.0, is_real: true, exact: Some(p.clone()) }
    }

    pub fn from_coords(coords: &[Complex64], residual: f64, real_tol: f64) -> Self {
        let coords = normalize(coords);
        let is_real = coords.iter().all(|z| z.im.abs() < real_tol);
        NumericPoint { coords, residual, is_real, exact: None }
    }

    pub fn distance(&self, other: &NumericPoint) -> f64 {
        projective_distance(&self.coords, &other.coords)
    }

    pub fn distance_to_exact(&self, p: &ProjectivePoint) -> f64 {
        let c: Vec<Complex64> = p.to_f64().into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        projective_distance(&self.coords, &c)
    }
}

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn norm(u: &[Complex64]) -> f64 {
    u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Unit norm, largest-modulus coordinate made real and positive.
pub fn normalize(v: &[Complex64]) -> Vec<Complex64> {
    let k = (0..v.len()).max_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm())).unwrap_or(0);
    let phase = if v[k].norm() > 0.0 { v[k].conj() / v[k].norm() } else { Complex64::one() };
    let n = norm(v);
    v.iter().map(|z| z * phase / n).collect()
}

/// Sine of the angle between the complex lines spanned by `u` and `v`.
pub fn projective_distance(u: &[Complex64], v: &[Complex64]) -> f64 {
    let nu = norm(u);
    let nv = norm(v);
    if nu == 0.0 || nv == 0.0 {
        return 1.0;
    }
    let un: Vec<Complex64> = u.iter().map(|z| z / nu).collect();
    let vn: Vec<Complex64> = v.iter().map(|z| z / nv).collect();
    let c = dot(&un, &vn);
    let r: Vec<Complex64> = vn.iter().zip(&un).map(|(b, a)| b - a * c).collect();
    norm(&r).min(1.0)
}

/// A form with unit-norm floating coefficients.
struct NumForm {
    terms: Vec<(Exponent, f64)>,
}

impl NumForm {
    fn new(f: &Form) -> Self {
        let terms: Vec<(Exponent, f64)> = f.terms().map(|(e, c)| (*e, scalar::to_f64(c))).collect();
        let n = terms.iter().map(|(_, c)| c * c).sum::<f64>().sqrt();
        NumForm { terms: terms.into_iter().map(|(e, c)| (e, c / n)).collect() }
    }

    fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|(e, c)| mono(e, z) * c).sum()
    }

    fn gradient(&self, z: &[Complex64]) -> [Complex64; 4] {
        let mut g = [Complex64::zero(); 4];
        for (e, c) in &self.terms {
            for i in 0..4 {
                if e[i] == 0 {
                    continue;
                }
                let mut f = *e;
                f[i] -= 1;
                g[i] += mono(&f, z) * (c * e[i] as f64);
            }
        }
        g
    }
}

fn mono(e: &Exponent, z: &[Complex64]) -> Complex64 {
    e.iter().zip(z).fold(Complex64::one(), |acc, (&k, v)| acc * v.powu(k))
}

fn residual(forms: &[NumForm], z: &[Complex64]) -> f64 {
    let zn = normalize(z);
    forms.iter().map(|f| f.eval(&zn).norm()).fold(0.0, f64::max)
}

/// Gauss-Newton in the affine chart of the largest coordinate.
fn polish(forms: &[NumForm], z: &[Complex64]) -> Vec<Complex64> {
    let mut z = normalize(z);
    for _ in 0..12 {
        let k = (0..4).max_by(|&i, &j| z[i].norm().total_cmp(&z[j].norm())).unwrap();
        let s = z[k];
        z = z.iter().map(|v| v / s).collect();
        let free: Vec<usize> = (0..4).filter(|&i| i != k).collect();
        let f = DMatrix::from_iterator(forms.len(), 1, forms.iter().map(|q| -q.eval(&z)));
        let mut jac = DMatrix::<Complex64>::zeros(forms.len(), 3);
        for (r, q) in forms.iter().enumerate() {
            let g = q.gradient(&z);
            for (c, &i) in free.iter().enumerate() {
                jac[(r, c)] = g[i];
            }
        }
        let Ok(step) = jac.svd(true, true).solve(&f, 1e-14) else { break };
        let size = step.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (c, &i) in free.iter().enumerate() {
            z[i] += step[(c, 0)];
        }
        if !size.is_finite() {
            break;
        }
        if size < 1e-15 {
            break;
        }
    }
    normalize(&z)
}

/// Exact data of one Macaulay degree: the reduced row echelon form of the
/// degree-d part of the ideal and its normal set.
struct Graded {
    monos: Vec<Exponent>,
    rref: Matrix,
    pivots: Vec<usize>,
    normal: Vec<usize>,
}

impl Graded {
    fn new(forms: &[Form], d: u32) -> Self {
        let monos = monomials(d);
        let mut rows = Vec::new();
        for f in forms {
            let fd = f.degree().unwrap_or(0);
            if fd > d {
                continue;
            }
            for m in monomials(d - fd) {
                rows.push((&Form::monomial(m, Scalar::one()) * f).coefficient_vector(d));
            }
        }
        let (rref, pivots) = if rows.is_empty() {
            (Matrix::zeros(0, monos.len()), Vec::new())
        } else {
            Matrix::from_rows(rows).rref()
        };
        let normal = (0..monos.len()).filter(|c| !pivots.contains(c)).collect();
        Graded { monos, rref, pivots, normal }
    }

    fn hilbert(&self) -> usize {
        self.normal.len()
    }

    /// Coordinates of the class of `v` in the normal set.
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.normal
            .iter()
            .map(|&c| {
                let mut x = v[c].clone();
                for (r, &p) in self.pivots.iter().enumerate() {
                    if !v[p].is_zero() {
                        x -= &v[p] * &self.rref[(r, c)];
                    }
                }
                x
            })
            .collect()
    }

    fn index(&self, e: &Exponent) -> usize {
        self.monos.iter().position(|m| m == e).expect("monomial of this degree")
    }
}

/// Row-reduced, primitive generators spanning the same forms. Equal-degree
/// inputs only; mixed degrees are returned as given.
fn reduced_basis(forms: &[Form]) -> Vec<Form> {
    let d = forms[0].degree().unwrap();
    if forms.iter().any(|f| f.degree() != Some(d)) {
        return forms.to_vec();
    }
    let (rref, pivots) = Matrix::from_rows(forms.iter().map(|f| f.coefficient_vector(d)).collect()).rref();
    (0..pivots.len())
        .map(|r| Form::from_coefficient_vector(d, rref.row(r)).canonical())
        .collect()
}

/// Matrix of multiplication by a linear form from degree d to degree d+1,
/// in normal-set coordinates.
fn mult_matrix(lo: &Graded, hi: &Graded, h: &[Scalar]) -> Matrix {
    let mut m = Matrix::zeros(hi.hilbert(), lo.hilbert());
    for (col, &b) in lo.normal.iter().enumerate() {
        let mut v = vec![Scalar::zero(); hi.monos.len()];
        for (i, hi_coef) in h.iter().enumerate() {
            if hi_coef.is_zero() {
                continue;
            }
            let mut e = lo.monos[b];
            e[i] += 1;
            v[hi.index(&e)] += hi_coef;
        }
        for (r, x) in hi.reduce(&v).into_iter().enumerate() {
            m[(r, col)] = x;
        }
    }
    m
}

fn to_f64_matrix(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| scalar::to_f64(&m[(r, c)]))
}

fn random_linear(rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..4).map(|_| scalar::int(rng.gen_range(-9..=9))).collect()
}

/// Recognizes a real numeric point as a small-height rational point that
/// satisfies every form exactly.
pub fn certify_rational(coords: &[Complex64], forms: &[Form]) -> Option<ProjectivePoint> {
    let k = (0..coords.len()).max_by(|&i, &j| coords[i].norm().total_cmp(&coords[j].norm()))?;
    let ratios: Vec<f64> = coords.iter().map(|z| (z / coords[k]).re).collect();
    for digits in 1..=12u32 {
        let max_den = BigInt::from(10u64.pow(digits));
        let Some(exact) = ratios.iter().map(|&r| scalar::rational_approx(r, &max_den)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        if forms.iter().all(|f| f.eval(&exact).is_zero()) {
            if let Ok(p) = ProjectivePoint::from_scalars(&exact) {
                return Some(p);
            }
        }
    }
    None
}

/// All isolated common zeros of homogeneous forms on P^3, real and complex.
///
/// The degree-d quotient of a Macaulay matrix with stable Hilbert function
/// carries commuting multiplication operators; their joint left
/// eigenvectors are evaluations at the zeros.
pub fn solve_quadric_system(forms: &[Form], expected: Option<usize>, tol: f64, seed: u64) -> Result<Vec<NumericPoint>> {
    if forms.len() < 3 {
        return Err(Error::InvalidInput("need at least three forms".into()));
    }
    if forms.iter().any(|f| f.is_zero() || !f.is_homogeneous() || f.degree() == Some(0)) {
        return Err(Error::InvalidInput("forms must be nonzero and homogeneous of positive degree".into()));
    }
    let start = forms.iter().filter_map(Form::degree).max().unwrap();
    let reduced = reduced_basis(forms);
    let mut lo = Graded::new(&reduced, start);
    let mut found = None;
    for d in start..=MAX_DEGREE {
        let hi = Graded::new(&reduced, d + 1);
        if lo.hilbert() == hi.hilbert() {
            found = Some((lo, hi));
            break;
        }
        lo = hi;
    }
    let (lo, hi) = found.ok_or_else(|| Error::NotFinite("Hilbert function does not stabilize".into()))?;
    let n = lo.hilbert();
    if n == 0 {
        return Ok(Vec::new());
    }
    let numeric: Vec<NumForm> = forms.iter().map(NumForm::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Vec<NumericPoint>> = None;
    for _attempt in 0..6 {
        let h0 = random_linear(&mut rng);
        let n0 = mult_matrix(&lo, &hi, &h0);
        let Some(inv) = n0.inverse() else { continue };
        let ops: Vec<DMatrix<f64>> = (0..4)
            .map(|j| {
                let e: Vec<Scalar> = (0..4).map(|i| if i == j { Scalar::one() } else { Scalar::zero() }).collect();
                to_f64_matrix(&(&inv * &mult_matrix(&lo, &hi, &e)))
            })
            .collect();
        let weights: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let combo = ops.iter().zip(&weights).fold(DMatrix::<f64>::zeros(n, n), |acc, (m, w)| acc + m * *w);
        let pts = eigen_points(&combo, &ops, &numeric, tol);
        let good = expected.map_or(true, |e| pts.len() == e);
        let better = best.as_ref().map_or(true, |b| {
            let target = expected.unwrap_or(n);
            pts.len().abs_diff(target) < b.len().abs_diff(target)
        });
        if better {
            best = Some(pts);
        }
        if good {
            break;
        }
    }
    let mut pts = best.ok_or_else(|| Error::PathFailure("no invertible normalizing multiplication".into()))?;
    for p in pts.iter_mut() {
        if p.is_real {
            p.exact = certify_rational(&p.coords, forms);
        }
    }
    Ok(pts)
}

fn eigen_points(combo: &DMatrix<f64>, ops: &[DMatrix<f64>], forms: &[NumForm], tol: f64) -> Vec<NumericPoint> {
    let n = combo.nrows();
    let mt = combo.transpose().map(|v| Complex64::new(v, 0.0));
    let opsc: Vec<DMatrix<Complex64>> = ops.iter().map(|m| m.map(|v| Complex64::new(v, 0.0))).collect();
    let mut out: Vec<NumericPoint> = Vec::new();
    for lambda in combo.complex_eigenvalues().iter() {
        let shifted = &mt - DMatrix::<Complex64>::identity(n, n) * *lambda;
        let svd = shifted.svd(false, true);
        let Some(vt) = svd.v_t else { continue };
        let k = (0..n).min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j])).unwrap();
        // w is a left eigenvector: w M = λ w
        let w: Vec<Complex64> = vt.row(k).iter().map(|z| z.conj()).collect();
        let wn = w.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let coords: Vec<Complex64> = opsc
            .iter()
            .map(|m| {
                let wm: Vec<Complex64> = (0..n).map(|c| (0..n).map(|r| w[r] * m[(r, c)]).sum()).collect();
                wm.iter().zip(&w).map(|(a, b)| a * b.conj()).sum::<Complex64>() / wn
            })
            .collect();
        if coords.iter().any(|z| !z.is_finite()) || norm(&coords) == 0.0 {
            continue;
        }
        let z = polish(forms, &coords);
        let r = residual(forms, &z);
        if r >= tol {
            continue;
        }
        let p = NumericPoint::from_coords(&z, r, tol.max(1e-12));
        match out.iter_mut().find(|q| q.distance(&p) < DEDUP_DISTANCE) {
            Some(q) if q.residual > p.residual => *q = p,
            Some(_) => {}
            None => out.push(p),
        }
    }
    out.sort_by(|a, b| {
        b.is_real.cmp(&a.is_real).then_with(|| {
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag() -> Vec<Form> {
        vec![
            Form::from_terms(&[(1, [2, 0, 0, 0]), (-1, [0, 0, 0, 2])]),
            Form::from_terms(&[(1, [0, 2, 0, 0]), (-1, [0, 0, 0, 2])]),
            Form::from_terms(&[(1, [0, 0, 2, 0]), (-1, [0, 0, 0, 2])]),
        ]
    }

    #[test]
    fn diagonal_system_has_eight_sign_points() {
        let pts = solve_quadric_system(&diag(), Some(8), 1e-9, 0).unwrap();
        assert_eq!(pts.len(), 8);
        let mut seen = std::collections::BTreeSet::new();
        for p in &pts {
            let e = p.exact.clone().expect("rational points certify");
            assert!(e.coords().iter().all(|c| c.magnitude() == &num_bigint::BigUint::one()));
            seen.insert(e);
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn permuting_forms_gives_same_set() {
        let mut f = diag();
        let a = solve_quadric_system(&f, None, 1e-9, 3).unwrap();
        f.reverse();
        let b = solve_quadric_system(&f, None, 1e-9, 3).unwrap();
        assert_eq!(a.len(), b.len());
        for p in &a {
            assert!(b.iter().any(|q| q.distance(p) < 1e-9));
        }
    }

    #[test]
    fn complex_solutions_are_found() {
        // z0² + z3², z1² - z3², z2² - 4 z3²
        let f = vec![
            Form::from_terms(&[(1, [2, 0, 0, 0]), (1, [0, 0, 0, 2])]),
            Form::from_terms(&[(1, [0, 2, 0, 0]), (-1, [0, 0, 0, 2])]),
            Form::from_terms(&[(1, [0, 0, 2, 0]), (-4, [0, 0, 0, 2])]),
        ];
        let pts = solve_quadric_system(&f, Some(8), 1e-9, 1).unwrap();
        assert_eq!(pts.len(), 8);
        assert!(pts.iter().all(|p| !p.is_real && p.exact.is_none()));
    }

    #[test]
    fn line_of_solutions_is_not_finite() {
        // every form vanishes on the line z2 = z3 = 0
        let f = vec![
            Form::from_terms(&[(1, [1, 0, 1, 0]), (2, [0, 1, 0, 1])]),
            Form::from_terms(&[(1, [0, 1, 1, 0]), (-3, [1, 0, 0, 1])]),
            Form::from_terms(&[(1, [0, 0, 2, 0]), (1, [0, 0, 0, 2]), (5, [0, 0, 1, 1])]),
        ];
        assert!(matches!(solve_quadric_system(&f, None, 1e-9, 0), Err(Error::NotFinite(_))));
    }

    #[test]
    fn distance_is_scale_free() {
        let u = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0), Complex64::zero(), Complex64::new(-1.0, 0.0)];
        let v: Vec<Complex64> = u.iter().map(|z| z * Complex64::new(0.3, -2.0)).collect();
        assert!(projective_distance(&u, &v) < 1e-15);
        let e1 = [Complex64::one(), Complex64::zero(), Complex64::zero(), Complex64::zero()];
        let e2 = [Complex64::zero(), Complex64::one(), Complex64::zero(), Complex64::zero()];
        assert!((projective_distance(&e1, &e2) - 1.0).abs() < 1e-15);
    }
}
