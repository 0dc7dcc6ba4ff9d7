//! Rearranging a curve by direction, and rebuilding broken lines from measures.
//!
//! Given a tagged partition `P = {(U_i, x_i)}`, the rearrangement `F_P`
//! concatenates, cell by cell, the parts of a curve whose direction lies in
//! `U_i`, each flipped into the canonical half `X`. The approximation `G_P`
//! replaces each such part by a straight segment along the tag. `G_P` only
//! depends on the measure of the curve, which makes it a right inverse of
//! the curve-to-measure map up to discretization.

use serde::{Deserialize, Serialize};

use crate::curve::{PcvCurve, StepFunction};
use crate::error::{Error, Result};
use crate::measure::{measure_of, weak_distance, DiscreteMeasure};
use crate::projective::{canonical_lift, TaggedPartition};
use crate::vector;

/// For every interval of `c`: the cell of its direction and the sign of the
/// velocity against the canonical representative, or `None` while at rest.
fn classify(p: &TaggedPartition, c: &PcvCurve) -> Result<Vec<Option<(usize, f64)>>> {
    if p.dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: c.dim() });
    }
    c.intervals()
        .map(|(_, _, v)| {
            if vector::is_zero(v) {
                return Ok(None);
            }
            let x = canonical_lift(v)?;
            let sign = if vector::dot(v, x.rep()) > 0.0 { 1.0 } else { -1.0 };
            Ok(Some((p.cell_of(&x)?, sign)))
        })
        .collect()
}

fn indicator_from(c: &PcvCurve, classes: &[Option<(usize, f64)>], i: usize) -> StepFunction {
    let values = classes.iter().map(|cl| match cl {
        Some((cell, sign)) if *cell == i => *sign,
        _ => 0.0,
    });
    StepFunction::new(c.breakpoints().to_vec(), values.collect()).expect("curve breakpoints are valid")
}

/// `h(P, c)_i`: `+1` while `c'` is a positive multiple of a point of `U_i`
/// in `X`, `-1` while it is a negative one, `0` otherwise.
pub fn h_indicator(p: &TaggedPartition, c: &PcvCurve, i: usize) -> Result<StepFunction> {
    if i >= p.len() {
        return Err(Error::Precondition(format!("cell index {i} out of range for {} cells", p.len())));
    }
    Ok(indicator_from(c, &classify(p, c)?, i))
}

/// `F_P(c) = (+)_i h_i * c`, cells in partition order.
pub fn rearrange_f(p: &TaggedPartition, c: &PcvCurve) -> Result<PcvCurve> {
    let parts = rearranged_parts(p, c)?;
    if parts.is_empty() {
        return Ok(PcvCurve::zero(c.dim()));
    }
    PcvCurve::concat_all(parts.iter().map(|(_, part)| part))
}

/// `(cell, h_i * c)` for every cell the curve actually visits.
fn rearranged_parts(p: &TaggedPartition, c: &PcvCurve) -> Result<Vec<(usize, PcvCurve)>> {
    let classes = classify(p, c)?;
    let mut cells: Vec<usize> = classes.iter().flatten().map(|(cell, _)| *cell).collect();
    cells.sort_unstable();
    cells.dedup();
    Ok(cells.into_iter().map(|i| (i, c.modulate(&indicator_from(c, &classes, i)))).collect())
}

/// `G_P(c)`: one segment of length `mu_c(U_i)` along each tag.
pub fn approx_g(p: &TaggedPartition, c: &PcvCurve) -> Result<PcvCurve> {
    right_inverse_g(p, &measure_of(c))
}

/// `G_P(mu) = (+)_i mu(U_i) x_i`, skipping empty cells.
pub fn right_inverse_g(p: &TaggedPartition, mu: &DiscreteMeasure) -> Result<PcvCurve> {
    let masses = mu.cell_masses(p)?;
    if let Some(m) = masses.iter().find(|m| **m < 0.0) {
        return Err(Error::Precondition(format!("cell mass {m} is negative")));
    }
    let segments = masses
        .iter()
        .zip(p.tags())
        .filter(|(m, _)| **m > 0.0)
        .map(|(m, x)| PcvCurve::segment(vector::scaled(x.rep(), *m)))
        .collect::<Result<Vec<_>>>()?;
    if segments.is_empty() {
        return Ok(PcvCurve::zero(mu.dim()));
    }
    PcvCurve::concat_all(&segments)
}

/// Bookkeeping for one application of `F_P` and `G_P`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RearrangementReport {
    pub ac_norm: f64,
    pub norm_bound: f64,
    /// Length of `F_P(c)` spent in each cell, i.e. `(t_i - t_{i-1}) |c|_AC`.
    pub cell_lengths: Vec<f64>,
    /// `mu_c(U_i)` for each cell.
    pub cell_masses: Vec<f64>,
    /// `|F_P(c) - G_P(c)|_AC`.
    pub f_g_distance: f64,
    /// `|P| |c|_AC`.
    pub bound: f64,
}

pub fn rearrangement_report(p: &TaggedPartition, c: &PcvCurve) -> Result<RearrangementReport> {
    let mut cell_lengths = vec![0.0; p.len()];
    for (i, part) in rearranged_parts(p, c)? {
        cell_lengths[i] = part.ac_norm();
    }
    let f = rearrange_f(p, c)?;
    let g = approx_g(p, c)?;
    Ok(RearrangementReport {
        ac_norm: c.ac_norm(),
        norm_bound: p.norm_bound(),
        cell_lengths,
        cell_masses: measure_of(c).cell_masses(p)?,
        f_g_distance: f.ac_distance(&g)?,
        bound: p.norm_bound() * c.ac_norm(),
    })
}

/// One level of a surjectivity run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: usize,
    pub cells: usize,
    pub norm_bound: f64,
    /// `|P_k| mu(P)`.
    pub bound: f64,
    /// `max_{l >= k} |alpha_k - alpha_l|_AC`.
    pub cauchy: f64,
    pub weak_distance: f64,
}

/// Certificate for the sequence `alpha_k = G_{P_k}(mu)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub levels: Vec<LevelReport>,
    /// `|P_0| mu(P)`, the bound at the coarsest level.
    pub cauchy_bound: f64,
    /// Largest `|alpha_k - alpha_l|_AC` over all pairs.
    pub achieved: f64,
    pub weak_distances: Vec<f64>,
}

impl Certificate {
    /// Whether every level meets its Cauchy and weak-distance bound within `tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.levels.iter().all(|l| l.cauchy <= l.bound + tol && l.weak_distance <= l.bound + tol)
    }

    /// Whether the weak distances never increase (up to `tol`).
    pub fn monotone(&self, tol: f64) -> bool {
        self.weak_distances.windows(2).all(|w| w[1] <= w[0] + tol)
    }
}

#[derive(Debug, Clone)]
pub struct SurjectivityRun {
    pub partitions: Vec<TaggedPartition>,
    pub curves: Vec<PcvCurve>,
    pub certificate: Certificate,
}

impl SurjectivityRun {
    /// The deepest approximant.
    pub fn last_curve(&self) -> &PcvCurve {
        self.curves.last().expect("at least one level")
    }
}

/// Builds `alpha_k = G_{P_k}(mu)` along `levels` successive refinements of
/// `p0` (the first level is `p0` itself) and certifies the Cauchy bound.
pub fn surjectivity_sequence(mu: &DiscreteMeasure, p0: &TaggedPartition, levels: usize, factor: usize) -> Result<SurjectivityRun> {
    if levels == 0 {
        return Err(Error::Precondition("need at least one level".into()));
    }
    if mu.is_empty() || !mu.is_positive() {
        return Err(Error::Precondition("the measure must be nonzero with positive weights".into()));
    }
    let mass = mu.total_mass();
    let mut partitions = vec![p0.clone()];
    for _ in 1..levels {
        let next = partitions.last().unwrap().refine(factor)?;
        partitions.push(next);
    }
    let curves = partitions.iter().map(|p| right_inverse_g(p, mu)).collect::<Result<Vec<_>>>()?;
    let weak_distances = curves.iter().map(|c| weak_distance(&measure_of(c), mu)).collect::<Result<Vec<_>>>()?;

    let mut reports = Vec::with_capacity(levels);
    let mut achieved: f64 = 0.0;
    for (k, p) in partitions.iter().enumerate() {
        let mut cauchy: f64 = 0.0;
        for l in k + 1..levels {
            cauchy = cauchy.max(curves[k].ac_distance(&curves[l])?);
        }
        achieved = achieved.max(cauchy);
        reports.push(LevelReport {
            level: k,
            cells: p.len(),
            norm_bound: p.norm_bound(),
            bound: p.norm_bound() * mass,
            cauchy,
            weak_distance: weak_distances[k],
        });
    }
    let certificate = Certificate { cauchy_bound: p0.norm_bound() * mass, achieved, weak_distances, levels: reports };
    Ok(SurjectivityRun { partitions, curves, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::ProjectivePoint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_curve(rng: &mut impl Rng, d: usize) -> PcvCurve {
        let n = rng.gen_range(1..8);
        let verts: Vec<Vec<f64>> = (0..=n).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        PcvCurve::from_vertices(&verts).unwrap()
    }

    #[test]
    fn indicator_signs() {
        let p = TaggedPartition::uniform(2, 4).unwrap();
        let up = PcvCurve::segment(vec![0.0, 1.0]).unwrap();
        let cell = p.cell_of(&ProjectivePoint::from_angle(PI / 2.0)).unwrap();
        assert_eq!(h_indicator(&p, &up, cell).unwrap().values(), &[1.0]);
        assert_eq!(h_indicator(&p, &up.reverse(), cell).unwrap().values(), &[-1.0]);
        assert_eq!(h_indicator(&p, &up, (cell + 1) % 4).unwrap().values(), &[0.0]);
        assert!(h_indicator(&p, &up, 4).is_err());
    }

    #[test]
    fn indicators_sum_to_one_while_moving() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let c = random_curve(&mut rng, 3);
            let c = c.concat(&PcvCurve::zero(3)).unwrap().reparametrize(&[(0.0, 0.0), (0.2, 0.0), (1.0, 1.0)]).unwrap();
            let p = TaggedPartition::uniform(3, 5).unwrap();
            let hs: Vec<StepFunction> = (0..5).map(|i| h_indicator(&p, &c, i).unwrap()).collect();
            for (t0, t1, v) in c.intervals() {
                let t = 0.5 * (t0 + t1);
                let total: f64 = hs.iter().map(|h| h.value_at(t).abs()).sum();
                assert_eq!(total, if vector::is_zero(v) { 0.0 } else { 1.0 });
            }
        }
    }

    #[test]
    fn out_and_back_becomes_a_segment() {
        let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let f = rearrange_f(&TaggedPartition::uniform(2, 1).unwrap(), &c).unwrap();
        assert_eq!(f.velocities(), &[vec![2.0, 0.0]]);
    }

    #[test]
    fn sorted_curve_is_only_reparametrized() {
        let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![0.2, 0.0], vec![0.2, 0.0], vec![0.2, 3.0]]).unwrap();
        let p = TaggedPartition::uniform(2, 2).unwrap();
        let f = rearrange_f(&p, &c).unwrap();
        assert!(f.ac_distance(&c.constant_speed_reparam()).unwrap() < 1e-12);
    }

    #[test]
    fn g_examples() {
        let p = TaggedPartition::uniform(2, 4).unwrap();
        let mu = DiscreteMeasure::dirac(&[1.0, 0.0], 1.0).unwrap().add(&DiscreteMeasure::dirac(&[0.0, 1.0], 1.0).unwrap()).unwrap();
        let g = right_inverse_g(&p, &mu).unwrap();
        let v = g.velocities();
        assert_eq!(v.len(), 2);
        for (got, angle) in v.iter().zip([PI / 8.0, 5.0 * PI / 8.0]) {
            assert!((got[0] - 2.0 * angle.cos()).abs() < 1e-15 && (got[1] - 2.0 * angle.sin()).abs() < 1e-15);
        }
        assert!(right_inverse_g(&p, &DiscreteMeasure::empty(2)).unwrap().is_zero());
        assert!(right_inverse_g(&p, &mu.scale(-1.0)).is_err());

        let on_tag = DiscreteMeasure::new(2, [(p.tags()[2].clone(), 1.5)]).unwrap();
        assert!(measure_of(&right_inverse_g(&p, &on_tag).unwrap()).approx_eq(&on_tag, 1e-15));
    }

    #[test]
    fn f_and_g_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..40 {
            let d = rng.gen_range(2..4);
            let c = random_curve(&mut rng, d);
            let p = TaggedPartition::uniform(d, rng.gen_range(1..9)).unwrap();
            let mu = measure_of(&c);
            let f = rearrange_f(&p, &c).unwrap();
            assert!(measure_of(&f).approx_eq(&mu, 1e-12));
            assert!(f.has_constant_speed(1e-10));
            let g = approx_g(&p, &c).unwrap();
            assert!(measure_of(&g).approx_eq(&mu.discretize(&p).unwrap(), 1e-12));
            assert!(g.has_constant_speed(1e-10));
            let r = rearrangement_report(&p, &c).unwrap();
            assert!(r.f_g_distance <= r.bound + 1e-9);
            assert!((r.cell_lengths.iter().sum::<f64>() - r.ac_norm).abs() < 1e-12);
            for (a, b) in r.cell_lengths.iter().zip(&r.cell_masses) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn atom_on_a_tag_gives_a_constant_sequence() {
        let p0 = TaggedPartition::uniform(2, 4).unwrap();
        let mu = DiscreteMeasure::new(2, [(p0.tags()[1].clone(), 2.0)]).unwrap();
        let run = surjectivity_sequence(&mu, &p0, 4, 2).unwrap();
        for c in &run.curves {
            assert!(c.ac_distance(&run.curves[0]).unwrap() < 1e-14);
        }
        assert!(run.certificate.achieved < 1e-14);
    }

    #[test]
    fn two_atom_certificate_halves() {
        let mu = DiscreteMeasure::dirac(&[1.0, 0.0], 1.0).unwrap().add(&DiscreteMeasure::dirac(&[0.0, 1.0], 1.0).unwrap()).unwrap();
        let run = surjectivity_sequence(&mu, &TaggedPartition::uniform(2, 2).unwrap(), 5, 2).unwrap();
        let cert = &run.certificate;
        assert!(cert.holds(1e-9));
        for (k, l) in cert.levels.iter().enumerate() {
            let n = 2usize << k;
            assert!(l.weak_distance <= 2.0 * 2.0 * (PI / (2.0 * n as f64)).sin() + 1e-9);
            assert!(run.curves[k].has_constant_speed(1e-12));
            assert!((run.curves[k].ac_norm() - 2.0).abs() < 1e-12);
        }
        for w in cert.levels.windows(2) {
            assert!((w[1].bound / w[0].bound - 0.5).abs() < 0.05);
        }
    }

    #[test]
    fn surjectivity_rejects_bad_input() {
        let p0 = TaggedPartition::uniform(2, 2).unwrap();
        let mu = DiscreteMeasure::dirac(&[1.0, 0.0], 1.0).unwrap();
        assert!(surjectivity_sequence(&mu, &p0, 0, 2).is_err());
        assert!(surjectivity_sequence(&mu.scale(-1.0), &p0, 2, 2).is_err());
        assert!(surjectivity_sequence(&DiscreteMeasure::empty(2), &p0, 2, 2).is_err());
    }
}
