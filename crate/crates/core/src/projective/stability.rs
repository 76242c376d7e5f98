use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::camera::on_line;
use super::point::{Configuration, ProjectivePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabilityClass {
    Stable,
    StrictlySemistable,
    Unstable,
}

/// Largest number of labels sharing one point.
pub fn max_coincident(p: &Configuration) -> usize {
    let mut counts: HashMap<&ProjectivePoint, usize> = HashMap::new();
    for q in p.points() {
        *counts.entry(q).or_default() += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

/// Largest number of labels lying on one line of P^2, counted with
/// multiplicity.
pub fn max_collinear(p: &Configuration) -> usize {
    let pts = p.points();
    let mut best = 0;
    let mut distinct = false;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i] == pts[j] {
                continue;
            }
            distinct = true;
            let on = pts.iter().filter(|q| on_line(q, &pts[i], &pts[j])).count();
            best = best.max(on);
        }
    }
    if distinct {
        best
    } else {
        pts.len()
    }
}

/// GIT class of a plane configuration of 5, 6 or 7 points.
pub fn stability_class(p: &Configuration) -> Result<StabilityClass> {
    if p.ambient_dim() != 2 {
        return Err(Error::InvalidInput("stability is defined here for plane configurations".into()));
    }
    let coincide = max_coincident(p);
    let collinear = max_collinear(p);
    let class = match p.len() {
        5 => {
            if coincide == 1 && collinear <= 3 {
                StabilityClass::Stable
            } else {
                StabilityClass::Unstable
            }
        }
        6 => {
            if coincide == 1 && collinear <= 3 {
                StabilityClass::Stable
            } else if coincide <= 2 && collinear <= 4 {
                StabilityClass::StrictlySemistable
            } else {
                StabilityClass::Unstable
            }
        }
        7 => {
            if coincide <= 2 && collinear <= 4 {
                StabilityClass::Stable
            } else {
                StabilityClass::Unstable
            }
        }
        n => return Err(Error::InvalidInput(format!("stability_class supports n in {{5,6,7}}, got {n}"))),
    };
    Ok(class)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdmissibilityMode {
    /// Indeterminacy of the map to the moduli space.
    Moduli,
    /// Indeterminacy of the even Fano map (lines through point pairs).
    Goepel,
}

/// Whether the center `a` avoids the indeterminacy locus for `x`: the points
/// themselves for n ≥ 6 in moduli mode, the lines through point pairs for
/// n = 5 and in Goepel mode.
pub fn center_admissible(x: &Configuration, a: &ProjectivePoint, mode: AdmissibilityMode) -> bool {
    if x.points().contains(a) {
        return false;
    }
    let avoid_lines = x.len() == 5 || mode == AdmissibilityMode::Goepel;
    if !avoid_lines {
        return true;
    }
    let pts = x.points();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if on_line(a, &pts[i], &pts[j]) {
                return false;
            }
        }
    }
    true
}
