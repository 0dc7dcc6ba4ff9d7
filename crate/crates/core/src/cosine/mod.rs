//! The cosine transform `C[mu](xi) = integral |xi . x| dmu(x)`.
//!
//! For the measure of a curve this is the projected-length data
//! `M(xi) = integral_0^1 |xi . alpha'(t)| dt`. The transform is even in `xi`,
//! so sampling a half-sphere of directions is enough.

mod fourier;
mod nnls;
mod quadrature;

pub use fourier::{invert_fourier_d2, multiplier, FourierDensity};
pub use nnls::{invert_nnls, kernel_matrix, kernel_rank, nnls, NnlsInversion, NnlsSolution, DEFAULT_TOL};
pub use quadrature::{forward_density, gauss_legendre};

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::PcvCurve;
use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::projective::{farthest_points, random_canonical};
use crate::vector;

/// Directions within this distance of the unit sphere are used as given.
pub const UNIT_TOL: f64 = 1e-12;
/// Directions within this distance are normalized with a warning; beyond it they are rejected.
pub const RENORMALIZE_TOL: f64 = 1e-6;

/// Sampled transform data: directions on the sphere and the values measured there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SamplesJson", into = "SamplesJson")]
pub struct TransformSamples {
    dim: usize,
    directions: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl TransformSamples {
    pub fn new(dim: usize, directions: Vec<Vec<f64>>, values: Vec<f64>) -> Result<Self> {
        if directions.len() != values.len() {
            return Err(Error::Precondition(format!("{} directions but {} values", directions.len(), values.len())));
        }
        let directions = directions
            .into_iter()
            .map(|xi| {
                if xi.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: xi.len() });
                }
                unit_direction(&xi)
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < -1e-12) {
            return Err(Error::Precondition(format!("transform values must be nonnegative, got {v}")));
        }
        Ok(TransformSamples { dim, directions, values })
    }

    /// Samples at angles `theta` (radians) in the plane.
    pub fn from_angles(thetas: &[f64], values: Vec<f64>) -> Result<Self> {
        Self::new(2, thetas.iter().map(|t| vec![t.cos(), t.sin()]).collect(), values)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.directions
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Angles of the directions in `[0, 2 pi)`; only meaningful for `d = 2`.
    pub fn angles(&self) -> Vec<f64> {
        self.directions.iter().map(|xi| xi[1].atan2(xi[0]).rem_euclid(2.0 * PI)).collect()
    }
}

/// Validates `xi` as a unit vector, renormalizing tiny deviations.
pub(crate) fn unit_direction(xi: &[f64]) -> Result<Vec<f64>> {
    let n = vector::norm(xi);
    let dev = (n - 1.0).abs();
    if dev <= UNIT_TOL {
        Ok(xi.to_vec())
    } else if dev <= RENORMALIZE_TOL {
        log::warn!("direction has norm {n}; normalizing");
        Ok(vector::scaled(xi, 1.0 / n))
    } else {
        Err(Error::NonUnitDirection(n))
    }
}

/// `sum_i w_i |xi . x_i|`.
pub fn forward_discrete(mu: &DiscreteMeasure, xi: &[f64]) -> Result<f64> {
    if xi.len() != mu.dim() {
        return Err(Error::DimensionMismatch { expected: mu.dim(), found: xi.len() });
    }
    let xi = unit_direction(xi)?;
    Ok(mu.atoms().iter().map(|(p, w)| w * vector::dot(&xi, p.rep()).abs()).sum())
}

/// Projected length of a broken line along `xi`: `sum_i (t_i - t_{i-1}) |xi . v_i|`.
pub fn forward_curve(c: &PcvCurve, xi: &[f64]) -> Result<f64> {
    if xi.len() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), found: xi.len() });
    }
    let xi = unit_direction(xi)?;
    Ok(c.intervals().map(|(t0, t1, v)| (t1 - t0) * vector::dot(&xi, v).abs()).sum())
}

/// `m` well-spread directions on a half-sphere. For `d = 2` these are the
/// angles `k pi / m`.
pub fn half_sphere_directions(d: usize, m: usize) -> Result<Vec<Vec<f64>>> {
    if d < 2 {
        return Err(Error::Precondition(format!("dimension must be at least 2, got {d}")));
    }
    Ok(match d {
        2 => (0..m).map(|k| k as f64 * PI / m as f64).map(|t| vec![t.cos(), t.sin()]).collect(),
        3 => {
            // Fibonacci lattice on the upper hemisphere.
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..m)
                .map(|k| {
                    let z = (k as f64 + 0.5) / m as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden * k as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        _ => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xd1ec ^ ((d as u64) << 32) ^ m as u64);
            let pool: Vec<Vec<f64>> = (0..(64 * m).max(4096)).map(|_| random_canonical(&mut rng, d)).collect();
            let mut north = vec![0.0; d];
            north[d - 1] = 1.0;
            std::iter::once(north.clone()).chain(farthest_points(&north, &pool, m.saturating_sub(1))).collect()
        }
    })
}

/// Transform of `mu` at `m` half-sphere directions.
pub fn sample_transform(mu: &DiscreteMeasure, m: usize) -> Result<TransformSamples> {
    if m < 2 {
        return Err(Error::Precondition(format!("need at least two directions, got {m}")));
    }
    let directions = half_sphere_directions(mu.dim(), m)?;
    let values = directions.par_iter().map(|xi| forward_discrete(mu, xi)).collect::<Result<Vec<_>>>()?;
    TransformSamples::new(mu.dim(), directions, values)
}

#[derive(Serialize, Deserialize)]
struct SamplesJson {
    d: usize,
    directions: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl From<TransformSamples> for SamplesJson {
    fn from(s: TransformSamples) -> Self {
        SamplesJson { d: s.dim, directions: s.directions, values: s.values }
    }
}

impl TryFrom<SamplesJson> for TransformSamples {
    type Error = Error;

    fn try_from(j: SamplesJson) -> Result<Self> {
        TransformSamples::new(j.d, j.directions, j.values)
    }
}
