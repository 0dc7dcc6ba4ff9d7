//! Bounded-Lipschitz distance between discrete measures.
//!
//! `||mu||_w = sup { integral f dmu : ||f||_inf + Lip(f) <= 1 }`. For a finitely
//! supported signed measure `sum_j c_j delta_{x_j}` only the values `f_j = f(x_j)`
//! matter, and any values with `|f_j| <= B` and `|f_j - f_k| <= L d(x_j, x_k)`
//! extend to a function on all of projective space with the same sup norm
//! and Lipschitz constant (McShane extension, then clipping to `[-B, B]`).
//! The norm is therefore the optimum of a finite linear program in
//! `(f_1, ..., f_n, L, B)`.

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use super::DiscreteMeasure;
use crate::error::{Error, Result};
use crate::projective::{unchecked_distance, ProjectivePoint, SAME_POINT_TOL};

/// Optimal test function of the bounded-Lipschitz program.
#[derive(Debug, Clone)]
pub struct WeakWitness {
    pub value: f64,
    pub points: Vec<ProjectivePoint>,
    /// Signed weights of `mu - nu` at `points`.
    pub weights: Vec<f64>,
    /// Optimal test function values at `points`.
    pub values: Vec<f64>,
    pub lipschitz: f64,
    pub bound: f64,
}

pub fn weak_distance(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<f64> {
    Ok(weak_distance_with_witness(mu, nu)?.value)
}

/// `||mu||_w` of a single (possibly signed) measure.
pub fn weak_norm(mu: &DiscreteMeasure) -> Result<f64> {
    weak_distance(mu, &DiscreteMeasure::empty(mu.dim()))
}

pub fn weak_distance_with_witness(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Result<WeakWitness> {
    if mu.dim() != nu.dim() {
        return Err(Error::DimensionMismatch { expected: mu.dim(), found: nu.dim() });
    }
    // Union support with signed weight differences.
    let mut points: Vec<ProjectivePoint> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let signed = mu.atoms().iter().map(|(p, w)| (p, *w)).chain(nu.atoms().iter().map(|(p, w)| (p, -*w)));
    for (p, w) in signed {
        match points.iter().position(|q| unchecked_distance(q.rep(), p.rep()) < SAME_POINT_TOL) {
            Some(j) => weights[j] += w,
            None => {
                points.push(p.clone());
                weights.push(w);
            }
        }
    }
    let keep: Vec<usize> = (0..points.len()).filter(|&j| weights[j] != 0.0).collect();
    let points: Vec<ProjectivePoint> = keep.iter().map(|&j| points[j].clone()).collect();
    let weights: Vec<f64> = keep.iter().map(|&j| weights[j]).collect();
    let n = points.len();
    if n == 0 {
        return Ok(WeakWitness { value: 0.0, points, weights, values: Vec::new(), lipschitz: 0.0, bound: 0.0 });
    }

    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let f: Vec<_> = weights.iter().map(|&c| lp.add_var(c, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    let lip = lp.add_var(0.0, (0.0, f64::INFINITY));
    let bound = lp.add_var(0.0, (0.0, f64::INFINITY));
    lp.add_constraint([(lip, 1.0), (bound, 1.0)], ComparisonOp::Le, 1.0);
    for j in 0..n {
        lp.add_constraint([(f[j], 1.0), (bound, -1.0)], ComparisonOp::Le, 0.0);
        lp.add_constraint([(f[j], -1.0), (bound, -1.0)], ComparisonOp::Le, 0.0);
        for k in (j + 1)..n {
            let d = unchecked_distance(points[j].rep(), points[k].rep());
            lp.add_constraint([(f[j], 1.0), (f[k], -1.0), (lip, -d)], ComparisonOp::Le, 0.0);
            lp.add_constraint([(f[k], 1.0), (f[j], -1.0), (lip, -d)], ComparisonOp::Le, 0.0);
        }
    }
    let sol = lp.solve().map_err(|e| Error::NonConvergence(format!("bounded-Lipschitz program: {e}")))?;
    let values: Vec<f64> = f.iter().map(|&v| sol[v]).collect();
    Ok(WeakWitness {
        value: sol.objective().max(0.0),
        points,
        weights,
        values,
        lipschitz: sol[lip],
        bound: sol[bound],
    })
}
