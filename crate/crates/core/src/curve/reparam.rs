//! Constant-speed reparametrization.
//!
//! The time change is built in two steps. Let `E` be the set where the
//! velocity is nonzero. `psi_E(t) = |[0,t] & E| / |E|` is the normalized
//! cumulative length of `E`, and `phi_E(s) = sup { t : psi_E(t) = s }` is its
//! right inverse; `phi_E` jumps across every zero-velocity interval, so
//! `alpha o phi_E` never stalls. With `ell` the normalized arc length of
//! `alpha`, the final time change is `phi~ = phi_E o (ell o phi_E)^-1`.
//!
//! For piecewise-constant velocity all of these maps are piecewise linear, so
//! the construction below is exact up to floating-point rounding.

use super::PcvCurve;
use crate::vector;

/// Linear map from `[x0, x1)` onto `[y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearPiece {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl LinearPiece {
    fn at(&self, x: f64) -> f64 {
        if self.x1 == self.x0 {
            return self.y0;
        }
        self.y0 + (x - self.x0) * (self.y1 - self.y0) / (self.x1 - self.x0)
    }

    pub fn slope(&self) -> f64 {
        (self.y1 - self.y0) / (self.x1 - self.x0)
    }
}

/// Nondecreasing, right-continuous, piecewise-linear map of `[0, 1]` into
/// itself. Consecutive pieces share their `x` endpoints; a mismatch between
/// one piece's `y1` and the next piece's `y0` is a jump.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneMap {
    pieces: Vec<LinearPiece>,
    end: f64,
}

impl MonotoneMap {
    fn identity() -> Self {
        MonotoneMap { pieces: vec![LinearPiece { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 }], end: 1.0 }
    }

    pub fn pieces(&self) -> &[LinearPiece] {
        &self.pieces
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x >= 1.0 {
            return self.end;
        }
        let i = self.pieces.partition_point(|p| p.x0 <= x).max(1);
        self.pieces[i - 1].at(x)
    }

    pub fn left_limit(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return self.eval(0.0);
        }
        let i = self.pieces.partition_point(|p| p.x0 < x).max(1);
        self.pieces[i - 1].at(x)
    }

    /// `(location, size)` of every jump, including one at `x = 1` if the last
    /// piece stops short of the end value.
    pub fn jumps(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = self
            .pieces
            .windows(2)
            .filter(|w| w[1].y0 > w[0].y1)
            .map(|w| (w[1].x0, w[1].y0 - w[0].y1))
            .collect();
        if let Some(last) = self.pieces.last() {
            if self.end > last.y1 {
                out.push((1.0, self.end - last.y1));
            }
        }
        out
    }
}

/// The cumulative map `psi_E` and its right inverse `phi_E` for the set
/// `E` where a curve's velocity is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiPhi {
    pub psi: MonotoneMap,
    pub phi: MonotoneMap,
    /// Lebesgue measure of `E`.
    pub measure_e: f64,
}

pub fn psi_phi_tables(c: &PcvCurve) -> PsiPhi {
    let measure_e: f64 = c.intervals().filter(|(_, _, v)| !vector::is_zero(v)).map(|(t0, t1, _)| t1 - t0).sum();
    if measure_e == 0.0 {
        return PsiPhi { psi: MonotoneMap::identity(), phi: MonotoneMap::identity(), measure_e };
    }

    let mut psi = Vec::with_capacity(c.velocities().len());
    let mut phi = Vec::new();
    let mut acc = 0.0;
    for (t0, t1, v) in c.intervals() {
        if vector::is_zero(v) {
            psi.push(LinearPiece { x0: t0, x1: t1, y0: acc / measure_e, y1: acc / measure_e });
            continue;
        }
        let (s0, s1) = (acc / measure_e, (acc + t1 - t0) / measure_e);
        psi.push(LinearPiece { x0: t0, x1: t1, y0: s0, y1: s1 });
        phi.push(LinearPiece { x0: s0, x1: s1, y0: t0, y1: t1 });
        acc += t1 - t0;
    }
    // Pin the ends against rounding in the running sums.
    psi.last_mut().unwrap().y1 = 1.0;
    phi.last_mut().unwrap().x1 = 1.0;
    PsiPhi { psi: MonotoneMap { pieces: psi, end: 1.0 }, phi: MonotoneMap { pieces: phi, end: 1.0 }, measure_e }
}

impl PcvCurve {
    /// Reparametrization with speed equal to the total length everywhere.
    /// Zero-velocity intervals disappear; the induced measure and the length
    /// are unchanged. The zero curve has no such reparametrization and is
    /// returned as is (logged).
    pub fn constant_speed_reparam(&self) -> PcvCurve {
        let total = self.ac_norm();
        if total == 0.0 {
            log::debug!("constant-speed reparametrization of a zero-length curve");
            return PcvCurve::zero(self.dim());
        }
        let PsiPhi { phi, .. } = psi_phi_tables(self);

        // Normalized arc length ell(t), linear on every interval.
        let mut ell_knots = vec![0.0];
        for (t0, t1, v) in self.intervals() {
            ell_knots.push(ell_knots.last().unwrap() + (t1 - t0) * vector::norm(v) / total);
        }
        let ell = |t: f64, interval: usize| -> f64 {
            let (a, b) = (self.breakpoints()[interval], self.breakpoints()[interval + 1]);
            let (la, lb) = (ell_knots[interval], ell_knots[interval + 1]);
            la + (t - a) * (lb - la) / (b - a)
        };

        // Split phi at the preimages of the breakpoints so every piece maps
        // into one interval, where ell is linear. Then ell o phi maps [s0, s1)
        // linearly onto [ell(y0), ell(y1)]; inverting swaps the axes, and
        // composing with phi gives phi~ on that range.
        let mut pieces = Vec::with_capacity(phi.pieces().len());
        for p in phi.pieces() {
            let mut cuts = vec![(p.x0, p.y0)];
            for &b in self.breakpoints() {
                if b > p.y0 && b < p.y1 {
                    cuts.push((p.x0 + (b - p.y0) / p.slope(), b));
                }
            }
            cuts.push((p.x1, p.y1));
            for w in cuts.windows(2) {
                let ((x0, y0), (x1, y1)) = (w[0], w[1]);
                let interval = self.breakpoints().partition_point(|&b| b <= 0.5 * (y0 + y1)) - 1;
                let (l0, l1) = (ell(y0, interval), ell(y1, interval));
                // (ell o phi)^{-1} sends [l0, l1) to [x0, x1), and phi sends that to [y0, y1).
                let tilde = LinearPiece { x0: l0, x1: l1, y0: p.at(x0), y1: p.at(x1) };
                // Chain rule: (alpha o phi~)' = alpha'(phi~) phi~'.
                let velocity = vector::scaled(&self.velocities()[interval], tilde.slope());
                pieces.push((l0, l1, velocity));
            }
        }
        PcvCurve::from_pieces(self.dim(), pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::measure_of;
    use proptest::prelude::*;

    fn curve(bps: &[f64], vels: &[[f64; 2]]) -> PcvCurve {
        PcvCurve::new(bps.to_vec(), vels.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn leading_pause_is_removed() {
        let c = curve(&[0.0, 0.5, 1.0], &[[0.0, 0.0], [1.0, 0.0]]);
        let r = c.constant_speed_reparam();
        assert_eq!(r.breakpoints(), &[0.0, 1.0]);
        assert!(vector::approx_eq(&r.velocities()[0], &[0.5, 0.0], 1e-15));
    }

    #[test]
    fn arc_length_fractions() {
        let c = curve(&[0.0, 0.5, 1.0], &[[2.0, 0.0], [0.0, 4.0]]);
        let r = c.constant_speed_reparam();
        assert_eq!(r.breakpoints().len(), 3);
        assert!((r.breakpoints()[1] - 1.0 / 3.0).abs() < 1e-15);
        assert!(vector::approx_eq(&r.velocities()[0], &[3.0, 0.0], 1e-14));
        assert!(vector::approx_eq(&r.velocities()[1], &[0.0, 3.0], 1e-14));
    }

    #[test]
    fn constant_speed_is_a_fixed_point() {
        let c = curve(&[0.0, 0.25, 1.0], &[[0.0, 2.0], [2.0, 0.0]]);
        assert_eq!(c.constant_speed_reparam(), c);
    }

    #[test]
    fn zero_curve_stays_zero() {
        let c = curve(&[0.0, 1.0], &[[0.0, 0.0]]);
        assert!(c.constant_speed_reparam().is_zero());
        let t = psi_phi_tables(&c);
        assert_eq!(t.measure_e, 0.0);
        assert_eq!(t.phi.eval(0.3), 0.3);
    }

    #[test]
    fn tables_for_late_support() {
        // E = [1/2, 1]: psi(t) = max(0, 2t - 1), phi(s) = 1/2 + s/2.
        let c = curve(&[0.0, 0.5, 1.0], &[[0.0, 0.0], [1.0, 1.0]]);
        let t = psi_phi_tables(&c);
        for k in 0..=100 {
            let x = k as f64 / 100.0;
            assert!((t.psi.eval(x) - (2.0 * x - 1.0).max(0.0)).abs() < 1e-15);
            assert!((t.phi.eval(x) - (0.5 + x / 2.0)).abs() < 1e-15);
        }
        assert_eq!(t.phi.eval(0.0), 0.5);
    }

    #[test]
    fn tables_for_full_support() {
        let c = curve(&[0.0, 0.3, 1.0], &[[1.0, 0.0], [0.0, 1.0]]);
        let t = psi_phi_tables(&c);
        for k in 0..=50 {
            let x = k as f64 / 50.0;
            assert!((t.psi.eval(x) - x).abs() < 1e-15);
            assert!((t.phi.eval(x) - x).abs() < 1e-15);
        }
        assert!(t.phi.jumps().is_empty());
    }

    #[test]
    fn jumps_match_pause_lengths() {
        let c = curve(&[0.0, 0.2, 0.5, 0.6, 0.9, 1.0], &[[1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [0.0, 0.0], [1.0, 1.0]]);
        let t = psi_phi_tables(&c);
        let jumps = t.phi.jumps();
        assert_eq!(jumps.len(), 2);
        assert!((jumps[0].1 - 0.3).abs() < 1e-15);
        assert!((jumps[1].1 - 0.3).abs() < 1e-15);
        // phi(s_k^-) and phi(s_k) bracket the pause.
        assert!((t.phi.left_limit(jumps[0].0) - 0.2).abs() < 1e-15);
        assert!((t.phi.eval(jumps[0].0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn trailing_pause_jumps_at_one() {
        let c = curve(&[0.0, 0.6, 1.0], &[[1.0, 0.0], [0.0, 0.0]]);
        let t = psi_phi_tables(&c);
        assert_eq!(t.phi.eval(1.0), 1.0);
        assert!((t.phi.left_limit(1.0) - 0.6).abs() < 1e-15);
        assert_eq!(t.phi.jumps(), vec![(1.0, 0.4)]);
    }

    fn pausing_curve() -> impl Strategy<Value = PcvCurve> {
        (1usize..10).prop_flat_map(|n| {
            (
                prop::collection::vec(0.01..1.0f64, n),
                prop::collection::vec((prop::collection::vec(-4.0..4.0f64, 3), prop::bool::weighted(0.3)), n),
            )
                .prop_map(|(widths, vels)| {
                    let total: f64 = widths.iter().sum();
                    let mut bps = vec![0.0];
                    for w in &widths[..widths.len() - 1] {
                        bps.push(bps.last().unwrap() + w / total);
                    }
                    bps.push(1.0);
                    let vels = vels.into_iter().map(|(v, z)| if z { vec![0.0; 3] } else { v }).collect();
                    PcvCurve::new(bps, vels).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn psi_after_phi_is_identity(c in pausing_curve()) {
            let t = psi_phi_tables(&c);
            for k in 0..=1000 {
                let s = k as f64 / 1000.0;
                prop_assert!((t.psi.eval(t.phi.eval(s)) - s).abs() < 1e-12);
            }
            // Strictly increasing phi with slope |E| off the jumps.
            if t.measure_e > 0.0 {
                for p in t.phi.pieces() {
                    prop_assert!((p.slope() - t.measure_e).abs() < 1e-9);
                }
            }
        }

        #[test]
        fn reparam_matches_direct_formula(c in pausing_curve()) {
            let total = c.ac_norm();
            prop_assume!(total > 0.0);
            let r = c.constant_speed_reparam();
            // Independent route: each moving interval gets parameter length
            // proportional to its arc length and speed `total`.
            let mut pieces = Vec::new();
            let mut s = 0.0;
            for (t0, t1, v) in c.intervals() {
                let speed = vector::norm(v);
                if speed == 0.0 { continue; }
                let width = (t1 - t0) * speed / total;
                pieces.push((s, s + width, vector::scaled(v, total / speed)));
                s += width;
            }
            let direct = PcvCurve::from_pieces(3, pieces);
            prop_assert!(r.ac_distance(&direct).unwrap() < 1e-10 * total.max(1.0));
            prop_assert!(r.has_constant_speed(1e-10));
            prop_assert!((r.ac_norm() - total).abs() < 1e-12 * total.max(1.0));
            prop_assert!(measure_of(&r).approx_eq(&measure_of(&c), 1e-12));
        }
    }
}
