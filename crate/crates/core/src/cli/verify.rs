//! Seeded property checks for the `verify` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cosine::{forward_discrete, half_sphere_directions, invert_nnls, sample_transform, DEFAULT_TOL};
use crate::curve::PcvCurve;
use crate::error::Result;
use crate::measure::{measure_of, weak_distance, DiscreteMeasure};
use crate::projective::{canonical_lift, TaggedPartition};
use crate::reconstruct::{approx_g, rearrange_f};

/// Outcome of one property over all trials. `worst` is the largest excess of
/// the left side over the right side (or the largest deviation, for
/// equalities); the check passes when it stays within `tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub trials: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn vector(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if v.iter().any(|x| x.abs() > 1e-3) {
            return v;
        }
    }
}

fn curve(rng: &mut impl Rng, d: usize) -> PcvCurve {
    let n = rng.gen_range(1..8);
    let mut verts = vec![vec![0.0; d]];
    for _ in 0..n {
        let last = verts.last().unwrap().clone();
        let step = if rng.gen_bool(0.15) { vec![0.0; d] } else { vector(rng, d) };
        verts.push(last.iter().zip(&step).map(|(a, b)| a + b).collect());
    }
    PcvCurve::from_vertices(&verts).expect("at least two vertices")
}

fn measure(rng: &mut impl Rng, d: usize) -> DiscreteMeasure {
    let n = rng.gen_range(1..6);
    let atoms = (0..n).map(|_| (canonical_lift(&vector(rng, d)).unwrap(), rng.gen_range(0.05..2.0)));
    DiscreteMeasure::new(d, atoms).expect("matching dimensions")
}

fn partition(rng: &mut impl Rng, d: usize) -> Result<TaggedPartition> {
    if d == 2 {
        TaggedPartition::uniform(2, rng.gen_range(1..24))
    } else {
        TaggedPartition::uniform_with_samples(d, rng.gen_range(1..8), 2000)
    }
}

fn check(name: &str, trials: usize, tolerance: f64, mut trial: impl FnMut() -> Result<f64>) -> Result<CheckResult> {
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..trials {
        worst = worst.max(trial()?);
    }
    Ok(CheckResult { name: name.into(), trials, worst, tolerance, passed: worst <= tolerance })
}

/// Runs every property `trials` times from `seed`. The same arguments give
/// the same report.
pub fn cmd_verify(seed: u64, trials: usize) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    checks.push(check("rearrangement_equivalence", trials, 1e-12, || {
        let d = rng.gen_range(2..4);
        let mut segs: Vec<Vec<f64>> = (0..rng.gen_range(1..12)).map(|_| vector(&mut rng, d)).collect();
        let path = |segs: &[Vec<f64>]| {
            let mut verts = vec![vec![0.0; d]];
            for s in segs {
                let last = verts.last().unwrap().clone();
                verts.push(last.iter().zip(s).map(|(a, b)| a + b).collect());
            }
            PcvCurve::from_vertices(&verts)
        };
        let mu = measure_of(&path(&segs)?);
        segs.shuffle(&mut rng);
        let mut moved = Vec::new();
        for s in segs {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let cut = rng.gen_range(0.1..0.9);
            moved.push(s.iter().map(|x| sign * cut * x).collect());
            moved.push(s.iter().map(|x| sign * (1.0 - cut) * x).collect());
        }
        let nu = measure_of(&path(&moved)?);
        Ok(mu.add(&nu.scale(-1.0))?.total_variation() / mu.total_mass().max(1.0))
    })?);

    checks.push(check("measure_continuity", trials, 1e-9, || {
        let d = rng.gen_range(2..4);
        let (a, b) = (curve(&mut rng, d), curve(&mut rng, d));
        Ok(weak_distance(&measure_of(&a), &measure_of(&b))? - a.ac_distance(&b)?)
    })?);

    checks.push(check("transform_continuity", trials, 1e-9, || {
        let d = rng.gen_range(2..4);
        let (mu, nu) = (measure(&mut rng, d), measure(&mut rng, d));
        let mut sup: f64 = 0.0;
        for xi in half_sphere_directions(d, 360)? {
            sup = sup.max((forward_discrete(&mu, &xi)? - forward_discrete(&nu, &xi)?).abs());
        }
        Ok(sup - 2.0 * weak_distance(&mu, &nu)?)
    })?);

    checks.push(check("discretization_bound", trials, 1e-9, || {
        let d = rng.gen_range(2..4);
        let mu = measure(&mut rng, d);
        let p = partition(&mut rng, d)?;
        Ok(weak_distance(&mu, &mu.discretize(&p)?)? - p.norm_bound() * mu.total_variation())
    })?);

    checks.push(check("constant_speed", trials, 1e-10, || {
        let d = rng.gen_range(2..4);
        let c = curve(&mut rng, d);
        let r = c.constant_speed_reparam();
        let len = c.ac_norm();
        let speed = r.velocities().iter().map(|v| (crate::vector::norm(v) - len).abs()).fold(0.0, f64::max);
        let mass = measure_of(&r).add(&measure_of(&c).scale(-1.0))?.total_variation();
        Ok(speed.max(mass).max((r.ac_norm() - len).abs()))
    })?);

    checks.push(check("rearrangement_bound", trials, 1e-9, || {
        let d = rng.gen_range(2..4);
        let c = curve(&mut rng, d);
        let p = partition(&mut rng, d)?;
        let f = rearrange_f(&p, &c)?;
        let bound = p.norm_bound() * c.ac_norm();
        let fine = p.refine(2)?;
        let fg = f.ac_distance(&approx_g(&p, &c)?)?;
        let ff = f.ac_distance(&rearrange_f(&fine, &c)?)?;
        Ok(fg.max(ff) - bound)
    })?);

    checks.push(check("nnls_roundtrip", trials.min(20), 1e-7, || {
        let p = TaggedPartition::uniform(2, rng.gen_range(4..40))?;
        let weights: Vec<f64> = p.tags().iter().map(|_| if rng.gen_bool(0.5) { rng.gen_range(0.1..2.0) } else { 0.0 }).collect();
        let mu = DiscreteMeasure::new(2, p.tags().iter().cloned().zip(weights.iter().copied()))?;
        let inv = invert_nnls(&sample_transform(&mu, 180)?, &p, DEFAULT_TOL)?;
        Ok(inv.weights.iter().zip(&weights).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    })?);

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { seed, trials, passed, checks })
}
