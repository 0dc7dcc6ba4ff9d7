//! Inversion of the planar transform through its Fourier multiplier.
//!
//! On the projective line `theta in [0, pi)` the transform acts diagonally on
//! the harmonics `cos 2k theta`, `sin 2k theta`, multiplying both by
//! `lambda_k / 2` where `lambda_k = 4 (-1)^(k+1) / (4k^2 - 1)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `lambda_k = 4 (-1)^(k+1) / (4k^2 - 1)`.
pub fn multiplier(k: usize) -> f64 {
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    4.0 * sign / (4.0 * (k as f64).powi(2) - 1.0)
}

/// Trigonometric density `a_0 + sum_k a_k cos 2k theta + b_k sin 2k theta` on `[0, pi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierDensity {
    pub a0: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl FourierDensity {
    pub fn eval(&self, theta: f64) -> f64 {
        self.cos
            .iter()
            .zip(&self.sin)
            .enumerate()
            .map(|(i, (a, b))| {
                let arg = 2.0 * (i + 1) as f64 * theta;
                a * arg.cos() + b * arg.sin()
            })
            .sum::<f64>()
            + self.a0
    }

    pub fn harmonics(&self) -> usize {
        self.cos.len()
    }

    /// Total mass `pi a_0`.
    pub fn mass(&self) -> f64 {
        PI * self.a0
    }
}

/// Recovers a density with `n_harmonics` harmonics from transform values at
/// the equispaced angles `j pi / N`, `j = 0..N`. Needs `N >= 4 n_harmonics`.
pub fn invert_fourier_d2(values: &[f64], n_harmonics: usize) -> Result<FourierDensity> {
    let n = values.len();
    if n < 4 * n_harmonics.max(1) {
        return Err(Error::Precondition(format!("{n} samples cannot resolve {n_harmonics} harmonics; need at least {}", 4 * n_harmonics.max(1))));
    }
    let theta = |j: usize| j as f64 * PI / n as f64;
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut cos = Vec::with_capacity(n_harmonics);
    let mut sin = Vec::with_capacity(n_harmonics);
    for k in 1..=n_harmonics {
        let (mut c, mut s) = (0.0, 0.0);
        for (j, g) in values.iter().enumerate() {
            let arg = 2.0 * k as f64 * theta(j);
            c += g * arg.cos();
            s += g * arg.sin();
        }
        let half = multiplier(k) / 2.0;
        cos.push(2.0 * c / n as f64 / half);
        sin.push(2.0 * s / n as f64 / half);
    }
    Ok(FourierDensity { a0: mean / (multiplier(0) / 2.0), cos, sin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosine::forward_density;

    #[test]
    fn multiplier_values() {
        assert_eq!(multiplier(0), 4.0);
        assert!((multiplier(1) - 4.0 / 3.0).abs() < 1e-15);
        assert!((multiplier(2) + 4.0 / 15.0).abs() < 1e-15);
        assert!((multiplier(3) - 4.0 / 35.0).abs() < 1e-15);
    }

    #[test]
    fn uniform_density_roundtrip() {
        let values = vec![2.0 / PI; 16];
        let f = invert_fourier_d2(&values, 4).unwrap();
        assert!((f.a0 - 1.0 / PI).abs() < 1e-15);
        assert!(f.cos.iter().chain(&f.sin).all(|c| c.abs() < 1e-13));
        assert!((f.mass() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn band_limited_roundtrip() {
        let truth = FourierDensity { a0: 0.5, cos: vec![0.1, -0.2, 0.0, 0.05], sin: vec![0.0, 0.15, -0.1, 0.02] };
        let n = 64;
        let values: Vec<f64> = (0..n)
            .map(|j| {
                let t = j as f64 * PI / n as f64;
                forward_density(|s| truth.eval(s), &[t.cos(), t.sin()], 512).unwrap()
            })
            .collect();
        let got = invert_fourier_d2(&values, 4).unwrap();
        assert!((got.a0 - truth.a0).abs() < 1e-12);
        for (a, b) in got.cos.iter().chain(&got.sin).zip(truth.cos.iter().chain(&truth.sin)) {
            assert!((a - b).abs() < 1e-11, "{a} vs {b}");
        }
    }

    #[test]
    fn too_few_samples() {
        assert!(invert_fourier_d2(&[1.0; 15], 4).is_err());
        assert!(invert_fourier_d2(&[1.0; 16], 4).is_ok());
    }
}
