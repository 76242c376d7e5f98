//! The bracket polynomials themselves, written once over any commutative
//! ring. Brackets are addressed with 1-based point labels.

use std::cell::RefCell;
use std::collections::HashMap;
use std::ops::Neg;

use crate::error::{Error, Result};
use crate::linalg::Ring;

pub trait BracketRing: Ring + Neg<Output = Self> {}

impl<T: Ring + Neg<Output = T>> BracketRing for T {}

/// Memoizing bracket evaluator: `[i j k]` is computed once per sorted
/// triple and re-signed for other orders.
pub struct Brackets<T, F> {
    eval: F,
    cache: RefCell<HashMap<[usize; 3], T>>,
}

impl<T: BracketRing, F: Fn([usize; 3]) -> T> Brackets<T, F> {
    pub fn new(eval: F) -> Self {
        Brackets { eval, cache: RefCell::new(HashMap::new()) }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        if i == j || j == k || i == k {
            return T::zero();
        }
        let mut idx = [i, j, k];
        let mut odd = false;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    odd = !odd;
                }
            }
        }
        let v = self
            .cache
            .borrow_mut()
            .entry(idx)
            .or_insert_with(|| (self.eval)(idx))
            .clone();
        if odd {
            -v
        } else {
            v
        }
    }

    fn product(&self, triples: &[[usize; 3]]) -> T {
        triples
            .iter()
            .fold(T::one(), |acc, t| acc * self.get(t[0], t[1], t[2]))
    }
}

const G_TABLE: [[[usize; 3]; 5]; 6] = [
    [[1, 2, 4], [1, 3, 4], [1, 3, 5], [2, 3, 5], [2, 4, 5]],
    [[1, 2, 5], [1, 3, 5], [1, 3, 4], [2, 3, 4], [2, 4, 5]],
    [[1, 2, 3], [1, 3, 4], [1, 4, 5], [2, 4, 5], [2, 3, 5]],
    [[1, 2, 5], [1, 4, 5], [1, 3, 4], [2, 3, 4], [2, 3, 5]],
    [[1, 2, 3], [1, 3, 5], [1, 4, 5], [2, 4, 5], [2, 3, 4]],
    [[1, 2, 4], [1, 4, 5], [1, 3, 5], [2, 3, 5], [2, 3, 4]],
];

const T_LINEAR: [[[usize; 3]; 2]; 5] = [
    [[1, 2, 3], [4, 5, 6]],
    [[1, 2, 4], [3, 5, 6]],
    [[1, 2, 5], [3, 4, 6]],
    [[1, 3, 4], [2, 5, 6]],
    [[1, 3, 5], [2, 4, 6]],
];

/// g0, ..., g5 for five points.
pub fn g_values<T: BracketRing, F: Fn([usize; 3]) -> T>(br: &Brackets<T, F>) -> Vec<T> {
    G_TABLE.iter().map(|row| br.product(row)).collect()
}

/// t0, ..., t5 for six points.
pub fn t_values<T: BracketRing, F: Fn([usize; 3]) -> T>(br: &Brackets<T, F>) -> Vec<T> {
    let mut out: Vec<T> = T_LINEAR.iter().map(|row| br.product(row)).collect();
    let first = br.product(&[[1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 5, 6]]);
    let second = br.product(&[[1, 2, 4], [1, 3, 5], [2, 3, 6], [4, 5, 6]]);
    out.push(first - second);
    out
}

/// The Igusa quartic F(t0, ..., t4).
pub fn igusa<T: BracketRing>(t: &[T]) -> T {
    let [t0, t1, t2, t3, t4] = [&t[0], &t[1], &t[2], &t[3], &t[4]].map(Clone::clone);
    let m = |a: &T, b: &T| a.clone() * b.clone();
    let inner = m(&t1, &t4) + m(&t0, &t1) + m(&t0, &t4) - m(&t2, &t3) - m(&t0, &t2) - m(&t0, &t3) - m(&t0, &t0);
    let lin = t1.clone() - t0.clone() - t2.clone() - t3.clone() + t4.clone();
    let four = T::one() + T::one() + T::one() + T::one();
    m(&inner, &inner) - four * t0 * t1 * t4 * lin
}

/// The 15 even Fano permutations, in one-line notation.
pub const EVEN_FANO: [&str; 15] = [
    "1234567", "1234675", "1234756", "1235476", "1235647", "1235764", "1236457", "1236574", "1236745", "1237465",
    "1237546", "1237654", "1243576", "1243657", "1243765",
];

/// Lines of the Fano plane used by f = [124][235][346][457][156][267][137].
const FANO_LINES: [[usize; 3]; 7] = [[1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [1, 5, 6], [2, 6, 7], [1, 3, 7]];

/// Parses a permutation of 1..=7 in one-line notation.
pub fn parse_permutation(s: &str) -> Result<[usize; 7]> {
    let digits: Vec<usize> = s
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidInput(format!("bad permutation {s:?}")))?;
    let mut seen = [false; 8];
    if digits.len() != 7 || digits.iter().any(|&d| !(1..=7).contains(&d) || std::mem::replace(&mut seen[d], true)) {
        return Err(Error::InvalidInput(format!("{s:?} is not a permutation of 1..=7")));
    }
    Ok(digits.try_into().expect("length checked"))
}

/// Sign of a permutation of 1..=n given in one-line notation.
pub fn permutation_sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// f_π, the Fano polynomial with every label i replaced by π(i).
pub fn fano_value<T: BracketRing, F: Fn([usize; 3]) -> T>(br: &Brackets<T, F>, perm: &[usize; 7]) -> T {
    FANO_LINES
        .iter()
        .fold(T::one(), |acc, l| acc * br.get(perm[l[0] - 1], perm[l[1] - 1], perm[l[2] - 1]))
}

pub fn even_fano_values<T: BracketRing, F: Fn([usize; 3]) -> T>(br: &Brackets<T, F>) -> Vec<T> {
    EVEN_FANO
        .iter()
        .map(|s| fano_value(br, &parse_permutation(s).expect("valid table entry")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_table_is_even() {
        for s in EVEN_FANO {
            assert_eq!(permutation_sign(&parse_permutation(s).unwrap()), 1, "{s}");
        }
    }

    #[test]
    fn every_pair_shares_a_fano_line() {
        for i in 1..=7 {
            for j in i + 1..=7 {
                assert!(FANO_LINES.iter().any(|l| l.contains(&i) && l.contains(&j)));
            }
        }
    }

    #[test]
    fn bad_permutations() {
        assert!(parse_permutation("1234566").is_err());
        assert!(parse_permutation("123456").is_err());
        assert!(parse_permutation("12345678").is_err());
    }
}
