//! Inversion of sampled transform data onto the tags of a partition.

use nalgebra::{DMatrix, DVector};

use super::TransformSamples;
use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::projective::TaggedPartition;
use crate::vector;

pub const DEFAULT_TOL: f64 = 1e-10;

/// Result of [`nnls`].
#[derive(Debug, Clone)]
pub struct NnlsSolution {
    pub x: DVector<f64>,
    /// `max(|g_i| for x_i > 0, max(0, -g_i) for x_i = 0)` with `g = A^T (A x - b)`.
    pub kkt: f64,
    pub iterations: usize,
}

/// Result of [`invert_nnls`].
#[derive(Debug, Clone)]
pub struct NnlsInversion {
    pub measure: DiscreteMeasure,
    /// Weight per tag, in partition order.
    pub weights: Vec<f64>,
    /// Root-mean-square data residual.
    pub residual: f64,
    pub kkt: f64,
}

/// Lawson-Hanson active set solver for `min |A x - b|` subject to `x >= 0`,
/// run until the KKT residual is at most `tol`.
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>, tol: f64) -> Result<NnlsSolution> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    if a.nrows() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), found: b.len() });
    }
    let n = a.ncols();
    let mut x = DVector::zeros(n);
    let mut passive = vec![false; n];
    // Indices whose least-squares value came out nonpositive right after
    // entering; they are skipped until the iterate changes.
    let mut blocked = vec![false; n];
    let max_outer = 3 * n + 30;
    let mut iterations = 0;

    loop {
        let g = gradient(a, b, &x);
        let kkt = kkt_residual(&x, &g);
        if kkt <= tol {
            return Ok(NnlsSolution { x, kkt, iterations });
        }
        if iterations >= max_outer {
            return Err(Error::NonConvergence(format!("NNLS stopped after {iterations} iterations with KKT residual {kkt:e}")));
        }
        iterations += 1;

        let entering = (0..n)
            .filter(|&i| !passive[i] && !blocked[i])
            .max_by(|&i, &j| (-g[i]).total_cmp(&-g[j]))
            .filter(|&i| -g[i] > tol);
        let Some(j) = entering else {
            // Only the passive set is off; re-solve on it.
            if !refit(a, b, &mut x, &mut passive)? {
                return Err(Error::NonConvergence(format!("NNLS stalled with KKT residual {kkt:e}")));
            }
            blocked.iter_mut().for_each(|b| *b = false);
            continue;
        };
        passive[j] = true;
        let before = x.clone();
        refit(a, b, &mut x, &mut passive)?;
        if !passive[j] && x == before {
            blocked[j] = true;
        } else {
            blocked.iter_mut().for_each(|b| *b = false);
        }
    }
}

/// Inner loop: moves `x` toward the unconstrained least-squares solution on
/// the passive set, dropping indices that hit zero. Returns whether `x` moved.
fn refit(a: &DMatrix<f64>, b: &DVector<f64>, x: &mut DVector<f64>, passive: &mut [bool]) -> Result<bool> {
    let start = x.clone();
    for _ in 0..=passive.len() {
        let idx: Vec<usize> = (0..passive.len()).filter(|&i| passive[i]).collect();
        if idx.is_empty() {
            x.fill(0.0);
            break;
        }
        let z = least_squares(a, b, &idx)?;
        if z.iter().all(|&v| v > 0.0) {
            for (k, &i) in idx.iter().enumerate() {
                x[i] = z[k];
            }
            break;
        }
        let alpha = idx
            .iter()
            .enumerate()
            .filter(|&(k, _)| z[k] <= 0.0)
            .map(|(k, &i)| x[i] / (x[i] - z[k]))
            .fold(f64::INFINITY, f64::min);
        for (k, &i) in idx.iter().enumerate() {
            x[i] += alpha * (z[k] - x[i]);
            if x[i] <= 1e-300 || (z[k] <= 0.0 && x[i] <= f64::EPSILON * z.amax()) {
                x[i] = 0.0;
                passive[i] = false;
            }
        }
    }
    Ok(*x != start)
}

fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>, idx: &[usize]) -> Result<DVector<f64>> {
    let sub = a.select_columns(idx);
    sub.svd(true, true)
        .solve(b, 1e-14 * a.amax().max(f64::MIN_POSITIVE))
        .map_err(|e| Error::NonConvergence(format!("least-squares subproblem: {e}")))
}

fn gradient(a: &DMatrix<f64>, b: &DVector<f64>, x: &DVector<f64>) -> DVector<f64> {
    a.tr_mul(&(a * x - b))
}

fn kkt_residual(x: &DVector<f64>, g: &DVector<f64>) -> f64 {
    x.iter().zip(g.iter()).map(|(&xi, &gi)| if xi > 0.0 { gi.abs() } else { (-gi).max(0.0) }).fold(0.0, f64::max)
}

/// `K[m, i] = |xi_m . tag_i|`.
pub fn kernel_matrix(s: &TransformSamples, p: &TaggedPartition) -> Result<DMatrix<f64>> {
    if s.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: s.dim() });
    }
    let tags = p.tags();
    Ok(DMatrix::from_fn(s.len(), tags.len(), |m, i| vector::dot(&s.directions()[m], tags[i].rep()).abs()))
}

/// Numerical rank of the sampled kernel matrix.
pub fn kernel_rank(s: &TransformSamples, p: &TaggedPartition) -> Result<usize> {
    let k = kernel_matrix(s, p)?;
    let sv = k.singular_values();
    let cutoff = sv.max() * 1e-12 * s.len().max(p.len()) as f64;
    Ok(sv.iter().filter(|&&v| v > cutoff).count())
}

/// Fits a nonnegative measure on the tags of `p` to the samples.
pub fn invert_nnls(s: &TransformSamples, p: &TaggedPartition, tol: f64) -> Result<NnlsInversion> {
    if s.is_empty() {
        return Err(Error::Precondition("no transform samples".into()));
    }
    if s.len() < p.len() {
        log::warn!("{} samples for {} tags; the fit may not be unique", s.len(), p.len());
    }
    let k = kernel_matrix(s, p)?;
    let b = DVector::from_column_slice(s.values());
    let sol = nnls(&k, &b, tol)?;
    let residual = ((&k * &sol.x - &b).norm_squared() / s.len() as f64).sqrt();
    let weights: Vec<f64> = sol.x.iter().copied().collect();
    let measure = DiscreteMeasure::new(p.dim(), p.tags().iter().cloned().zip(weights.iter().copied()))?;
    Ok(NnlsInversion { measure, weights, residual, kkt: sol.kkt })
}
