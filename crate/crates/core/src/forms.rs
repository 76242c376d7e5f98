//! Polynomials in the four homogeneous coordinates z0..z3 of P^3.
//!
//! Coefficient vectors of homogeneous forms use graded lexicographic order:
//! for degree 2 this is z0², z0z1, z0z2, z0z3, z1², z1z2, z1z3, z2², z2z3, z3².

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::linalg::{Matrix, Ring};
use crate::scalar::{self, Scalar};

pub const NVARS: usize = 4;

pub type Exponent = [u32; NVARS];

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Form {
    terms: BTreeMap<Exponent, Scalar>,
}

/// Monomials of the given degree in graded lexicographic order.
pub fn monomials(degree: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = [0u32; NVARS];
    fill(0, degree, &mut cur, &mut out);
    out
}

fn fill(var: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
    if var == NVARS - 1 {
        cur[var] = left;
        out.push(*cur);
        return;
    }
    for e in (0..=left).rev() {
        cur[var] = e;
        fill(var + 1, left - e, cur, out);
    }
    cur[var] = 0;
}

impl Form {
    pub fn constant(c: Scalar) -> Self {
        Self::monomial([0; NVARS], c)
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    pub fn monomial(e: Exponent, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Form { terms }
    }

    /// The linear form Σ c_i z_i.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        assert_eq!(coeffs.len(), NVARS);
        coeffs
            .iter()
            .enumerate()
            .fold(Form::zero(), |acc, (i, c)| acc + Form::var(i).scale(c))
    }

    /// Builds a form from integer coefficients and exponents.
    pub fn from_terms(terms: &[(i64, Exponent)]) -> Self {
        terms
            .iter()
            .fold(Form::zero(), |acc, &(c, e)| acc + Form::monomial(e, scalar::int(c)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exponent) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero();
        }
        Form { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Form {
        (0..k).fold(Form::one(), |acc, _| &acc * self)
    }

    /// Evaluation in any commutative ring, with `lift` embedding the
    /// rational coefficients.
    pub fn eval_with<T: Ring>(&self, z: &[T], lift: impl Fn(&Scalar) -> T) -> T {
        assert_eq!(z.len(), NVARS);
        let mut powers: Vec<Vec<T>> = z.iter().map(|v| vec![T::one(), v.clone()]).collect();
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut term = lift(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().clone() * z[i].clone();
                    powers[i].push(next);
                }
                term = term * powers[i][k as usize].clone();
            }
            acc = acc + term;
        }
        acc
    }

    pub fn eval(&self, z: &[Scalar]) -> Scalar {
        self.eval_with(z, Clone::clone)
    }

    pub fn eval_i64(&self, z: &[i64]) -> Scalar {
        let z: Vec<Scalar> = z.iter().map(|&v| scalar::int(v)).collect();
        self.eval(&z)
    }

    pub fn eval_c64(&self, z: &[Complex64]) -> Complex64 {
        self.eval_with(z, |c| Complex64::new(scalar::to_f64(c), 0.0))
    }

    /// Substitutes z_i ↦ subs[i].
    pub fn substitute(&self, subs: &[Form]) -> Form {
        self.eval_with(subs, |c| Form::constant(c.clone()))
    }

    /// The form z ↦ f(M z).
    pub fn pullback(&self, m: &Matrix) -> Form {
        assert_eq!((m.nrows(), m.ncols()), (NVARS, NVARS));
        let subs: Vec<Form> = (0..NVARS).map(|r| Form::linear(m.row(r))).collect();
        self.substitute(&subs)
    }

    /// Partial derivative with respect to z_i.
    pub fn derivative(&self, i: usize) -> Form {
        let mut out = Form::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = *e;
            f[i] -= 1;
            out = out + Form::monomial(f, c * scalar::int(e[i] as i64));
        }
        out
    }

    /// Coefficients in graded lexicographic order. Panics if the form has a
    /// term of another degree.
    pub fn coefficient_vector(&self, degree: u32) -> Vec<Scalar> {
        assert!(
            self.terms.keys().all(|e| e.iter().sum::<u32>() == degree),
            "form is not homogeneous of degree {degree}"
        );
        monomials(degree).iter().map(|e| self.coeff(e)).collect()
    }

    pub fn from_coefficient_vector(degree: u32, coeffs: &[Scalar]) -> Form {
        let mons = monomials(degree);
        assert_eq!(mons.len(), coeffs.len());
        mons.into_iter()
            .zip(coeffs)
            .fold(Form::zero(), |acc, (e, c)| acc + Form::monomial(e, c.clone()))
    }

    /// Scaled to primitive integer coefficients with a positive leading
    /// (graded-lex first) coefficient, so that equality up to scale becomes
    /// equality.
    pub fn canonical(&self) -> Form {
        let coeffs: Vec<Scalar> = self.terms.values().cloned().collect();
        let Some(ints) = scalar::primitive_integer(&coeffs) else {
            return Form::zero();
        };
        let terms = self.terms.keys().zip(ints).map(|(e, c)| (*e, scalar::from_bigint(c)));
        let mut out = Form { terms: terms.collect() };
        let top = out.degree().unwrap_or(0);
        let lead = out
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == top)
            .map(|(e, c)| (*e, c.clone()))
            .max_by(|a, b| a.0.cmp(&b.0));
        if let Some((_, c)) = lead {
            if c.is_negative() {
                out = -out;
            }
        }
        out
    }

    pub fn proportional(&self, other: &Form) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Dimension of the span of homogeneous forms of one degree.
pub fn span_dim(forms: &[Form], degree: u32) -> usize {
    if forms.is_empty() {
        return 0;
    }
    Matrix::from_rows(forms.iter().map(|f| f.coefficient_vector(degree)).collect()).rank()
}

/// Exact equality of the linear spans of two families of forms.
pub fn same_span(a: &[Form], b: &[Form], degree: u32) -> bool {
    let ra = span_dim(a, degree);
    let rb = span_dim(b, degree);
    let all: Vec<Form> = a.iter().chain(b).cloned().collect();
    ra == rb && span_dim(&all, degree) == ra
}

/// Whether `f` lies in the span of `basis`.
pub fn in_span(f: &Form, basis: &[Form], degree: u32) -> bool {
    let mut all = basis.to_vec();
    let r = span_dim(&all, degree);
    all.push(f.clone());
    span_dim(&all, degree) == r
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*z{i}")?,
                    _ => write!(f, "*z{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl Zero for Form {
    fn zero() -> Self {
        Form::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Form {
    fn one() -> Self {
        Form::constant(Scalar::one())
    }
}

impl Add for &Form {
    type Output = Form;

    fn add(self, rhs: &Form) -> Form {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let v = terms.entry(*e).or_insert_with(Scalar::zero);
            *v += c;
            if v.is_zero() {
                terms.remove(e);
            }
        }
        Form { terms }
    }
}

impl Add for Form {
    type Output = Form;

    fn add(self, rhs: Form) -> Form {
        &self + &rhs
    }
}

impl Neg for Form {
    type Output = Form;

    fn neg(self) -> Form {
        Form { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Sub for &Form {
    type Output = Form;

    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs.clone())
    }
}

impl Sub for Form {
    type Output = Form;

    fn sub(self, rhs: Form) -> Form {
        &self - &rhs
    }
}

impl Mul for &Form {
    type Output = Form;

    fn mul(self, rhs: &Form) -> Form {
        let mut terms: BTreeMap<Exponent, Scalar> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for i in 0..NVARS {
                    e[i] += e2[i];
                }
                *terms.entry(e).or_insert_with(Scalar::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Form { terms }
    }
}

impl Mul for Form {
    type Output = Form;

    fn mul(self, rhs: Form) -> Form {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn z(i: usize) -> Form {
        Form::var(i)
    }

    #[test]
    fn monomial_counts_and_order() {
        assert_eq!(monomials(2).len(), 10);
        assert_eq!(monomials(4).len(), 35);
        assert_eq!(monomials(2)[0], [2, 0, 0, 0]);
        assert_eq!(monomials(2)[1], [1, 1, 0, 0]);
        assert_eq!(monomials(2)[9], [0, 0, 0, 2]);
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let f = &(&z(0) + &z(1)) * &(&z(0) - &z(1));
        let g = &z(0).pow(2) - &z(1).pow(2);
        assert_eq!(f, g);
        assert_eq!(f.eval_i64(&[3, 2, 7, 1]), int(5));
        assert!((&f - &g).is_zero());
    }

    #[test]
    fn coefficient_vector_round_trip() {
        let f = Form::from_terms(&[(28, [0, 1, 1, 0]), (27, [0, 1, 0, 1]), (-55, [0, 0, 1, 1])]);
        let v = f.coefficient_vector(2);
        assert_eq!(Form::from_coefficient_vector(2, &v), f);
    }

    #[test]
    fn pullback_composes_with_evaluation() {
        let m = Matrix::from_i64_rows(&[&[1, 2, 0, 0], &[0, 1, 0, 3], &[1, 0, 1, 0], &[0, 0, 2, 1]]);
        let f = &(&z(0) * &z(3)) + &z(2).pow(2).scale(&int(-4));
        let p = [int(1), int(-2), int(5), int(3)];
        let mp = m.mul_vec(&p);
        assert_eq!(f.pullback(&m).eval(&p), f.eval(&mp));
    }

    #[test]
    fn canonical_scaling() {
        let f = Form::from_terms(&[(-6, [1, 1, 0, 0]), (4, [0, 0, 1, 1])]);
        let g = f.scale(&scalar::frac(-3, 7));
        assert!(f.proportional(&g));
        assert_eq!(f.canonical().coeff(&[1, 1, 0, 0]), int(3));
    }

    #[test]
    fn spans() {
        let a = vec![&z(0) * &z(1), &z(2) * &z(3)];
        let b = vec![&(&z(0) * &z(1)) + &(&z(2) * &z(3)), &(&z(0) * &z(1)) - &(&z(2) * &z(3))];
        assert!(same_span(&a, &b, 2));
        assert!(!in_span(&z(0).pow(2), &a, 2));
    }
}
