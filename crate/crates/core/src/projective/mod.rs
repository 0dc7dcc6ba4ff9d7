//! Points of real projective space `P^{d-1}`, the chord metric on it, and
//! degree-one homogeneous extensions of functions on it.
//!
//! A projective point is stored as its canonical unit representative: the
//! unique unit vector on the line whose last nonzero coordinate is positive.
//! These representatives form a section `X` of the sphere that meets every
//! line through the origin exactly once.

mod partition;

pub use partition::{Arc, Cells, SiteTree, TaggedPartition, NORM_SAMPLES_PER_CELL};
pub(crate) use partition::{farthest_points, random_canonical};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector;

/// Coordinates of a normalized vector below this magnitude count as zero when
/// choosing the sign of the representative.
pub const ZERO_COORD_TOL: f64 = 1e-12;

/// Two projective points closer than this (in the chord metric) are the same atom.
pub const SAME_POINT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectivePoint {
    rep: Vec<f64>,
}

impl ProjectivePoint {
    /// Canonical representative of the line spanned by `v`.
    pub fn new(v: &[f64]) -> Result<Self> {
        canonical_lift(v)
    }

    /// The point `(cos theta, sin theta)` of `P^1`; `theta` is reduced mod `pi`.
    pub fn from_angle(theta: f64) -> Self {
        let t = theta.rem_euclid(PI);
        canonical_lift(&[t.cos(), t.sin()]).expect("unit vector is nonzero")
    }

    pub fn rep(&self) -> &[f64] {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.len()
    }

    /// Angle in `[0, pi)` of a point of `P^1`.
    pub fn angle(&self) -> Result<f64> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: self.dim() });
        }
        let theta = self.rep[1].atan2(self.rep[0]);
        Ok(if theta >= PI { 0.0 } else { theta.max(0.0) })
    }

    pub fn distance(&self, other: &ProjectivePoint) -> Result<f64> {
        proj_distance(self, other)
    }

    /// Lexicographic order on representatives, used to sort atoms canonically.
    pub fn lex_cmp(&self, other: &ProjectivePoint) -> std::cmp::Ordering {
        for (a, b) in self.rep.iter().zip(&other.rep) {
            match a.total_cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.rep.len().cmp(&other.rep.len())
    }
}

/// Maps a nonzero vector to the representative of its line lying in `X`.
pub fn canonical_lift(v: &[f64]) -> Result<ProjectivePoint> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Precondition(format!("non-finite direction {v:?}")));
    }
    let n = vector::norm(v);
    if n == 0.0 {
        return Err(Error::ZeroDirection);
    }
    // Unit input is kept as is, so lifting is idempotent and antipodal
    // inputs give bit-identical results.
    let unit = |n: f64| (n - 1.0).abs() <= 4.0 * f64::EPSILON;
    let mut u: Vec<f64> = if unit(n) { v.to_vec() } else { v.iter().map(|x| x / n).collect() };
    if u.iter().any(|x| *x != 0.0 && x.abs() < ZERO_COORD_TOL) {
        u.iter_mut().filter(|x| x.abs() < ZERO_COORD_TOL).for_each(|x| *x = 0.0);
        let n2 = vector::norm(&u);
        if !unit(n2) {
            u.iter_mut().for_each(|x| *x /= n2);
        }
    }
    let last = *u.iter().rev().find(|x| **x != 0.0).expect("normalized vector has a nonzero entry");
    let s = if last > 0.0 { 1.0 } else { -1.0 };
    // Adding 0.0 turns -0.0 into 0.0.
    u.iter_mut().for_each(|x| *x = *x * s + 0.0);
    Ok(ProjectivePoint { rep: u })
}

/// Chord distance between the closest representatives of two lines.
pub fn proj_distance(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    Ok(unchecked_distance(x.rep(), y.rep()))
}

pub(crate) fn unchecked_distance(x: &[f64], y: &[f64]) -> f64 {
    let (mut minus, mut plus) = (0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        minus += (a - b) * (a - b);
        plus += (a + b) * (a + b);
    }
    minus.min(plus).sqrt()
}

/// Degree-one homogeneous extension `f^(w) = |w| f([w])`, with `f^(0) = 0`.
pub fn hat_extend<F>(f: F, w: &[f64]) -> f64
where
    F: Fn(&ProjectivePoint) -> f64,
{
    match canonical_lift(w) {
        Ok(p) => vector::norm(w) * f(&p),
        Err(_) => 0.0,
    }
}
