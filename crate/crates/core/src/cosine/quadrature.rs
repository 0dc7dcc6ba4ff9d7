//! Transform of an absolutely continuous measure on the projective line.

use std::f64::consts::PI;

use super::unit_direction;
use crate::error::{Error, Result};

const PANEL: usize = 16;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let dp = legendre(n, x).1;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `P_n(x)` and `P_n'(x)`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

/// `integral_0^pi f(theta) |xi . (cos theta, sin theta)| dtheta` for a
/// density `f` on the projective line, parametrized by `theta in [0, pi)`.
///
/// The kernel has a single kink on a period, so the integral is taken over
/// the period starting there, with `ceil(n_quad / 16)` Gauss-Legendre panels
/// of 16 nodes.
pub fn forward_density(f: impl Fn(f64) -> f64, xi: &[f64], n_quad: usize) -> Result<f64> {
    if xi.len() != 2 {
        return Err(Error::Unsupported(format!("density transforms need d = 2, got d = {}", xi.len())));
    }
    if n_quad < PANEL {
        return Err(Error::Precondition(format!("need at least {PANEL} quadrature nodes, got {n_quad}")));
    }
    let xi = unit_direction(xi)?;
    let phi = xi[1].atan2(xi[0]);
    let kink = (phi + PI / 2.0).rem_euclid(PI);
    let panels = n_quad.div_ceil(PANEL);
    let h = PI / panels as f64;
    let (nodes, weights) = gauss_legendre(PANEL);
    let mut total = 0.0;
    for k in 0..panels {
        let mid = kink + (k as f64 + 0.5) * h;
        for (x, w) in nodes.iter().zip(&weights) {
            let s = mid + 0.5 * h * x;
            // On this period |cos(s - phi)| = sin(s - kink).
            total += w * f(s.rem_euclid(PI)) * (s - kink).sin();
        }
    }
    Ok(0.5 * h * total)
}
