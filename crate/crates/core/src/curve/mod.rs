//! Curves modulo translation, stored by their velocity.
//!
//! A [`PcvCurve`] has piecewise-constant velocity on a partition
//! `0 = t_0 < ... < t_n = 1` of the unit interval, which is exactly the class
//! of broken lines. Only velocities are kept, so translated curves are equal
//! by construction. Adjacent intervals with equal velocity are merged, which
//! makes structural equality meaningful; zero-velocity intervals are kept
//! until [`PcvCurve::constant_speed_reparam`] removes them.

mod reparam;

pub use reparam::{psi_phi_tables, LinearPiece, MonotoneMap, PsiPhi};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector;

/// Breakpoints closer than this are identified when refining partitions.
pub const BREAKPOINT_TOL: f64 = 1e-12;

/// Relative tolerance under which adjacent velocities are merged.
pub const VELOCITY_MERGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveJson", into = "CurveJson")]
pub struct PcvCurve {
    dim: usize,
    breakpoints: Vec<f64>,
    velocities: Vec<Vec<f64>>,
}

impl PcvCurve {
    pub fn new(breakpoints: Vec<f64>, velocities: Vec<Vec<f64>>) -> Result<Self> {
        if velocities.is_empty() {
            return Err(Error::InvalidCurve("a curve needs at least one interval".into()));
        }
        if breakpoints.len() != velocities.len() + 1 {
            return Err(Error::InvalidCurve(format!(
                "{} breakpoints for {} intervals",
                breakpoints.len(),
                velocities.len()
            )));
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return Err(Error::InvalidCurve("breakpoints must start at 0 and end at 1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
            return Err(Error::InvalidCurve("breakpoints must be strictly increasing".into()));
        }
        let dim = velocities[0].len();
        if dim == 0 {
            return Err(Error::InvalidCurve("velocities must have positive dimension".into()));
        }
        for v in &velocities {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidCurve("velocities must be finite".into()));
            }
        }
        Ok(Self::normalized(dim, breakpoints, velocities))
    }

    /// Builds from `(t0, t1, velocity)` pieces that tile `[0, 1]`, skipping empty ones.
    pub(crate) fn from_pieces(dim: usize, pieces: impl IntoIterator<Item = (f64, f64, Vec<f64>)>) -> Self {
        let mut breakpoints = vec![0.0];
        let mut velocities = Vec::new();
        for (_, t1, v) in pieces {
            let t1 = t1.min(1.0);
            if t1 > *breakpoints.last().unwrap() {
                breakpoints.push(t1);
                velocities.push(v);
            }
        }
        if velocities.is_empty() {
            return Self::zero(dim);
        }
        *breakpoints.last_mut().unwrap() = 1.0;
        Self::normalized(dim, breakpoints, velocities)
    }

    fn normalized(dim: usize, breakpoints: Vec<f64>, velocities: Vec<Vec<f64>>) -> Self {
        let mut bps = vec![breakpoints[0]];
        let mut vels: Vec<Vec<f64>> = Vec::with_capacity(velocities.len());
        for (i, v) in velocities.into_iter().enumerate() {
            match vels.last() {
                Some(prev) if vector::approx_eq(prev, &v, VELOCITY_MERGE_TOL) => {
                    *bps.last_mut().unwrap() = breakpoints[i + 1];
                }
                _ => {
                    vels.push(v);
                    bps.push(breakpoints[i + 1]);
                }
            }
        }
        PcvCurve { dim, breakpoints: bps, velocities: vels }
    }

    /// The constant curve.
    pub fn zero(dim: usize) -> Self {
        PcvCurve { dim, breakpoints: vec![0.0, 1.0], velocities: vec![vec![0.0; dim]] }
    }

    /// The straight segment `t -> t v`.
    pub fn segment(v: Vec<f64>) -> Result<Self> {
        Self::new(vec![0.0, 1.0], vec![v])
    }

    /// Broken line through `vertices` with uniform parameter intervals.
    pub fn from_vertices(vertices: &[Vec<f64>]) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidCurve("a broken line needs at least two vertices".into()));
        }
        let dim = vertices[0].len();
        if let Some(bad) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
        }
        let n = vertices.len() - 1;
        let breakpoints = (0..=n).map(|k| if k == n { 1.0 } else { k as f64 / n as f64 }).collect();
        let velocities = vertices.windows(2).map(|w| vector::scaled(&vector::sub(&w[1], &w[0]), n as f64)).collect();
        Self::new(breakpoints, velocities)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn velocities(&self) -> &[Vec<f64>] {
        &self.velocities
    }

    /// `(t_{i-1}, t_i, v_i)` for every interval.
    pub fn intervals(&self) -> impl Iterator<Item = (f64, f64, &[f64])> + '_ {
        self.breakpoints.windows(2).zip(&self.velocities).map(|(w, v)| (w[0], w[1], v.as_slice()))
    }

    /// Positions at the breakpoints, starting from `origin`.
    pub fn vertices(&self, origin: &[f64]) -> Vec<Vec<f64>> {
        let mut out = vec![origin.to_vec()];
        for (t0, t1, v) in self.intervals() {
            let next = vector::add(out.last().unwrap(), &vector::scaled(v, t1 - t0));
            out.push(next);
        }
        out
    }

    /// Total length, the L1 norm of the velocity.
    pub fn ac_norm(&self) -> f64 {
        self.intervals().map(|(t0, t1, v)| (t1 - t0) * vector::norm(v)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.velocities.iter().all(|v| vector::is_zero(v))
    }

    /// L1 distance between the velocities, exact on the common refinement.
    pub fn ac_distance(&self, other: &PcvCurve) -> Result<f64> {
        self.check_dim(other.dim)?;
        Ok(common_refinement(&[&self.breakpoints, &other.breakpoints])
            .windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                (w[1] - w[0]) * vector::distance(self.velocity_at(mid), other.velocity_at(mid))
            })
            .sum())
    }

    /// Velocity on the interval containing `t` (right-continuous; `t = 1` maps to the last interval).
    pub fn velocity_at(&self, t: f64) -> &[f64] {
        let i = self.breakpoints.partition_point(|&b| b <= t).clamp(1, self.velocities.len());
        &self.velocities[i - 1]
    }

    /// Constant speed within `tol`, relative to the curve's length.
    pub fn has_constant_speed(&self, tol: f64) -> bool {
        let ac = self.ac_norm();
        self.velocities.iter().all(|v| (vector::norm(v) - ac).abs() <= tol * ac.max(1.0))
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: d });
        }
        Ok(())
    }

    /// Concatenation: this curve runs on `[0, p]` and `other` on `[p, 1]`,
    /// with `p` the fraction of the total length contributed by `self`.
    /// Two zero curves concatenate to the zero curve (logged as degenerate).
    pub fn concat(&self, other: &PcvCurve) -> Result<PcvCurve> {
        Self::concat_all([self, other])
    }

    /// Concatenation of several curves in order; zero curves are identities.
    pub fn concat_all<'a>(curves: impl IntoIterator<Item = &'a PcvCurve>) -> Result<PcvCurve> {
        let curves: Vec<&PcvCurve> = curves.into_iter().collect();
        let dim = match curves.first() {
            Some(c) => c.dim,
            None => return Err(Error::InvalidCurve("nothing to concatenate".into())),
        };
        for c in &curves {
            if c.dim != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.dim });
            }
        }
        let lengths: Vec<f64> = curves.iter().map(|c| c.ac_norm()).collect();
        let total: f64 = lengths.iter().sum();
        if total == 0.0 {
            log::warn!("concatenation of zero-length curves is undefined; returning the zero curve");
            return Ok(Self::zero(dim));
        }
        let mut pieces = Vec::new();
        let mut start = 0.0;
        let mut acc = 0.0;
        for (c, &len) in curves.iter().zip(&lengths) {
            if len == 0.0 {
                continue;
            }
            acc += len;
            let end = acc / total;
            let p = end - start;
            for (t0, t1, v) in c.intervals() {
                pieces.push((start + t0 * p, start + t1 * p, vector::scaled(v, 1.0 / p)));
            }
            start = end;
        }
        Ok(Self::from_pieces(dim, pieces))
    }

    /// `t -> alpha(1 - t)`.
    pub fn reverse(&self) -> PcvCurve {
        let breakpoints = self.breakpoints.iter().rev().map(|t| 1.0 - t).collect();
        let velocities = self.velocities.iter().rev().map(|v| vector::scaled(v, -1.0)).collect();
        PcvCurve { dim: self.dim, breakpoints, velocities }
    }

    /// `k alpha`.
    pub fn scale(&self, k: f64) -> PcvCurve {
        let velocities = self.velocities.iter().map(|v| vector::scaled(v, k)).collect();
        Self::normalized(self.dim, self.breakpoints.clone(), velocities)
    }

    /// `x * alpha`: the constant-speed reparametrization of `t -> integral_0^t x(s) alpha'(s) ds`.
    pub fn modulate(&self, x: &StepFunction) -> PcvCurve {
        self.multiply(x).constant_speed_reparam()
    }

    /// Pointwise product `x(t) alpha'(t)` without reparametrizing.
    pub fn multiply(&self, x: &StepFunction) -> PcvCurve {
        let pieces: Vec<_> = common_refinement(&[&self.breakpoints, &x.breakpoints])
            .windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                (w[0], w[1], vector::scaled(self.velocity_at(mid), x.value_at(mid)))
            })
            .collect();
        Self::from_pieces(self.dim, pieces)
    }

    /// `alpha o phi` for the monotone, surjective, piecewise-linear `phi`
    /// through `knots` (`(s, phi(s))` pairs from `(0, 0)` to `(1, 1)`).
    pub fn reparametrize(&self, knots: &[(f64, f64)]) -> Result<PcvCurve> {
        let ok = knots.len() >= 2
            && knots[0] == (0.0, 0.0)
            && *knots.last().unwrap() == (1.0, 1.0)
            && knots.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 <= w[1].1);
        if !ok {
            return Err(Error::Precondition("reparametrization must be monotone and onto [0, 1]".into()));
        }
        let mut pieces = Vec::new();
        for w in knots.windows(2) {
            let ((s0, y0), (s1, y1)) = (w[0], w[1]);
            let slope = (y1 - y0) / (s1 - s0);
            if slope == 0.0 {
                pieces.push((s0, s1, vec![0.0; self.dim]));
                continue;
            }
            // Split at the preimages of this curve's breakpoints inside (y0, y1).
            let mut cuts = vec![s0];
            for &t in &self.breakpoints {
                if t > y0 && t < y1 {
                    cuts.push(s0 + (t - y0) / slope);
                }
            }
            cuts.push(s1);
            for c in cuts.windows(2) {
                let mid = y0 + (0.5 * (c[0] + c[1]) - s0) * slope;
                pieces.push((c[0], c[1], vector::scaled(self.velocity_at(mid), slope)));
            }
        }
        Ok(Self::from_pieces(self.dim, pieces))
    }
}

/// Sorted union of breakpoint lists, identifying points closer than [`BREAKPOINT_TOL`].
pub(crate) fn common_refinement(lists: &[&[f64]]) -> Vec<f64> {
    let mut all: Vec<f64> = lists.iter().flat_map(|l| l.iter().copied()).collect();
    all.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(all.len());
    for t in all {
        match out.last() {
            Some(&last) if t - last <= BREAKPOINT_TOL => {}
            _ => out.push(t),
        }
    }
    if let Some(last) = out.last_mut() {
        *last = 1.0;
    }
    out
}

/// Bounded step function on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let ok = !values.is_empty()
            && breakpoints.len() == values.len() + 1
            && breakpoints[0] == 0.0
            && *breakpoints.last().unwrap() == 1.0
            && breakpoints.windows(2).all(|w| w[0] < w[1])
            && values.iter().all(|v| v.is_finite());
        if !ok {
            return Err(Error::Precondition("step function needs increasing breakpoints from 0 to 1 and finite values".into()));
        }
        Ok(StepFunction { breakpoints, values })
    }

    pub fn constant(c: f64) -> Self {
        StepFunction { breakpoints: vec![0.0, 1.0], values: vec![c] }
    }

    /// Indicator of `[a, b)` inside `[0, 1]`.
    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        let a = a.clamp(0.0, 1.0);
        let b = b.clamp(a, 1.0);
        let mut bps = vec![0.0];
        let mut vals = Vec::new();
        for (end, v) in [(a, 0.0), (b, 1.0), (1.0, 0.0)] {
            if end > *bps.last().unwrap() {
                bps.push(end);
                vals.push(v);
            }
        }
        Self::new(bps, vals)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_at(&self, t: f64) -> f64 {
        let i = self.breakpoints.partition_point(|&b| b <= t).clamp(1, self.values.len());
        self.values[i - 1]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    d: usize,
    breakpoints: Vec<f64>,
    velocities: Vec<Vec<f64>>,
}

impl From<PcvCurve> for CurveJson {
    fn from(c: PcvCurve) -> Self {
        CurveJson { d: c.dim, breakpoints: c.breakpoints, velocities: c.velocities }
    }
}

impl TryFrom<CurveJson> for PcvCurve {
    type Error = Error;

    fn try_from(j: CurveJson) -> Result<Self> {
        let c = PcvCurve::new(j.breakpoints, j.velocities)?;
        if c.dim != j.d {
            return Err(Error::DimensionMismatch { expected: j.d, found: c.dim });
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn from_vertices_examples() {
        let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(c.velocities(), &[vec![1.0, 0.0]]);
        assert_eq!(c.ac_norm(), 1.0);

        let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(c.velocities(), &[vec![2.0, 0.0], vec![0.0, 2.0]]);
        assert_eq!(c.breakpoints(), &[0.0, 0.5, 1.0]);
        assert_eq!(c.ac_norm(), 2.0);

        let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(c.velocities(), &[vec![0.0, 0.0]]);
        assert_eq!(c.ac_norm(), 0.0);
    }

    #[test]
    fn from_vertices_errors() {
        assert!(PcvCurve::from_vertices(&[vec![0.0, 0.0]]).is_err());
        assert!(matches!(
            PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0, 0.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn collinear_vertices_merge() {
        let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]).unwrap();
        assert_eq!(c.velocities().len(), 1);
    }

    #[test]
    fn constructor_rejects_bad_breakpoints() {
        assert!(PcvCurve::new(vec![0.0, 0.5, 0.5, 1.0], vec![vec![1.0]; 3]).is_err());
        assert!(PcvCurve::new(vec![0.1, 1.0], vec![vec![1.0]]).is_err());
        assert!(PcvCurve::new(vec![0.0, 1.0], vec![vec![f64::NAN]]).is_err());
    }

    #[test]
    fn ac_distance_examples() {
        let a = PcvCurve::segment(vec![1.0, 0.0]).unwrap();
        let b = PcvCurve::segment(vec![0.0, 1.0]).unwrap();
        assert_eq!(a.ac_distance(&a).unwrap(), 0.0);
        assert!(close(a.ac_distance(&b).unwrap(), 2f64.sqrt()));
        assert!(a.ac_distance(&PcvCurve::zero(3)).is_err());
    }

    #[test]
    fn concat_examples() {
        let e1 = PcvCurve::segment(vec![1.0, 0.0]).unwrap();
        let e2 = PcvCurve::segment(vec![0.0, 1.0]).unwrap();
        let c = e1.concat(&e1).unwrap();
        assert_eq!(c.velocities(), &[vec![2.0, 0.0]]);
        let c = e1.concat(&e2).unwrap();
        assert_eq!(c.breakpoints(), &[0.0, 0.5, 1.0]);
        assert_eq!(c.velocities(), &[vec![2.0, 0.0], vec![0.0, 2.0]]);
        // zero curve is the identity
        assert_eq!(e1.concat(&PcvCurve::zero(2)).unwrap(), e1);
        assert_eq!(PcvCurve::zero(2).concat(&e1).unwrap(), e1);
        assert!(PcvCurve::zero(2).concat(&PcvCurve::zero(2)).unwrap().is_zero());
        assert!(e1.concat(&PcvCurve::zero(3)).is_err());
    }

    #[test]
    fn reverse_and_scale() {
        let e1 = PcvCurve::segment(vec![1.0, 0.0]).unwrap();
        assert_eq!(e1.reverse().velocities(), &[vec![-1.0, 0.0]]);
        assert!(e1.scale(0.0).is_zero());
        let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 3.0], vec![0.0, 3.0]]).unwrap();
        let back = c.reverse().reverse();
        assert!(back.ac_distance(&c).unwrap() < 1e-15);
        assert_eq!(back.velocities(), c.velocities());
        assert!(close(c.scale(-2.5).ac_norm(), 2.5 * c.ac_norm()));
    }

    #[test]
    fn modulate_examples() {
        let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert!(c.modulate(&StepFunction::constant(0.0)).is_zero());

        let half = StepFunction::indicator(0.0, 0.5).unwrap();
        let m = c.modulate(&half);
        assert_eq!(m.velocities().len(), 1);
        assert!(vector::approx_eq(&m.velocities()[0], &[1.0, 0.0], 1e-14));

        // x constant on a constant-speed curve: x * alpha = x alpha.
        let cs = c.constant_speed_reparam();
        let m = cs.modulate(&StepFunction::constant(-0.75));
        assert!(m.ac_distance(&cs.scale(-0.75)).unwrap() < 1e-12);
    }

    #[test]
    fn step_function_validation() {
        assert!(StepFunction::new(vec![0.0, 1.0], vec![]).is_err());
        assert!(StepFunction::new(vec![0.0, 0.7, 0.6, 1.0], vec![1.0, 2.0, 3.0]).is_err());
        let s = StepFunction::indicator(0.25, 0.75).unwrap();
        assert_eq!(s.values(), &[0.0, 1.0, 0.0]);
        assert_eq!(s.value_at(0.25), 1.0);
        assert_eq!(s.value_at(0.75), 0.0);
        assert_eq!(StepFunction::indicator(0.0, 1.0).unwrap().values(), &[1.0]);
    }

    #[test]
    fn reparametrize_with_flat_piece() {
        let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![2.0, 0.0], vec![2.0, 1.0]]).unwrap();
        let knots = [(0.0, 0.0), (0.2, 0.0), (0.6, 0.75), (1.0, 1.0)];
        let r = c.reparametrize(&knots).unwrap();
        assert!(close(r.ac_norm(), c.ac_norm()));
        assert!(r.velocities()[0].iter().all(|&x| x == 0.0));
        assert!(c.reparametrize(&[(0.0, 0.0), (0.5, 0.7), (1.0, 0.6)]).is_err());
    }

    #[test]
    fn json_shape() {
        let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"d":2,"breakpoints":[0.0,0.5,1.0],"velocities":[[2.0,0.0],[0.0,2.0]]}"#);
        assert_eq!(serde_json::from_str::<PcvCurve>(&s).unwrap(), c);
        assert!(serde_json::from_str::<PcvCurve>(r#"{"d":3,"breakpoints":[0,1],"velocities":[[1,0]]}"#).is_err());
    }

    fn curve_strategy() -> impl Strategy<Value = PcvCurve> {
        (1usize..8).prop_flat_map(|n| {
            (
                prop::collection::vec(0.05..1.0f64, n),
                prop::collection::vec(prop::collection::vec(-3.0..3.0f64, 2), n),
                prop::collection::vec(prop::bool::weighted(0.2), n),
            )
                .prop_map(|(widths, vels, zero)| {
                    let total: f64 = widths.iter().sum();
                    let mut bps = vec![0.0];
                    for w in &widths[..widths.len() - 1] {
                        bps.push(bps.last().unwrap() + w / total);
                    }
                    bps.push(1.0);
                    let vels = vels.into_iter().zip(zero).map(|(v, z)| if z { vec![0.0, 0.0] } else { v }).collect();
                    PcvCurve::new(bps, vels).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn concat_adds_lengths(a in curve_strategy(), b in curve_strategy()) {
            let c = a.concat(&b).unwrap();
            prop_assert!((c.ac_norm() - a.ac_norm() - b.ac_norm()).abs() < 1e-12);
        }

        #[test]
        fn concat_preserves_constant_speed(a in curve_strategy(), b in curve_strategy()) {
            let (a, b) = (a.constant_speed_reparam(), b.constant_speed_reparam());
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert!(a.concat(&b).unwrap().has_constant_speed(1e-12));
        }

        #[test]
        fn concat_is_associative(a in curve_strategy(), b in curve_strategy(), c in curve_strategy()) {
            let left = a.concat(&b).unwrap().concat(&c).unwrap();
            let right = a.concat(&b.concat(&c).unwrap()).unwrap();
            prop_assert!(left.ac_distance(&right).unwrap() < 1e-10);
        }

        #[test]
        fn distance_is_symmetric_and_bounded(a in curve_strategy(), b in curve_strategy()) {
            let d = a.ac_distance(&b).unwrap();
            prop_assert!((d - b.ac_distance(&a).unwrap()).abs() < 1e-12);
            prop_assert!(d <= a.ac_norm() + b.ac_norm() + 1e-12);
            prop_assert!(d >= (a.ac_norm() - b.ac_norm()).abs() - 1e-12);
        }

        #[test]
        fn translation_is_invisible(pts in prop::collection::vec(prop::collection::vec(-5.0..5.0f64, 3), 2..8), w in prop::collection::vec(-5.0..5.0f64, 3)) {
            let shifted: Vec<Vec<f64>> = pts.iter().map(|p| vector::add(p, &w)).collect();
            let a = PcvCurve::from_vertices(&pts).unwrap();
            let b = PcvCurve::from_vertices(&shifted).unwrap();
            prop_assert!(a.ac_distance(&b).unwrap() < 1e-12);
        }
    }
}
