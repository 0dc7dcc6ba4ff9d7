//! Finite measures on projective space and the measure induced by a curve.

mod weak;

pub use weak::{weak_distance, weak_distance_with_witness, weak_norm, WeakWitness};

use serde::{Deserialize, Serialize};

use crate::curve::PcvCurve;
use crate::error::{Error, Result};
use crate::projective::{canonical_lift, ProjectivePoint, TaggedPartition, SAME_POINT_TOL};
use crate::vector;

/// Finite weighted sum of point masses. Atoms are pairwise distinct (closer
/// atoms are merged), nonzero, and kept sorted by representative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureJson", into = "MeasureJson")]
pub struct DiscreteMeasure {
    dim: usize,
    atoms: Vec<(ProjectivePoint, f64)>,
}

impl DiscreteMeasure {
    pub fn new(dim: usize, atoms: impl IntoIterator<Item = (ProjectivePoint, f64)>) -> Result<Self> {
        let mut merged: Vec<(ProjectivePoint, f64)> = Vec::new();
        for (p, w) in atoms {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            if !w.is_finite() {
                return Err(Error::Precondition(format!("non-finite weight {w}")));
            }
            match merged
                .iter_mut()
                .find(|(q, _)| crate::projective::unchecked_distance(q.rep(), p.rep()) < SAME_POINT_TOL)
            {
                Some((_, acc)) => *acc += w,
                None => merged.push((p, w)),
            }
        }
        merged.retain(|(_, w)| *w != 0.0);
        merged.sort_by(|a, b| a.0.lex_cmp(&b.0));
        Ok(DiscreteMeasure { dim, atoms: merged })
    }

    pub fn empty(dim: usize) -> Self {
        DiscreteMeasure { dim, atoms: Vec::new() }
    }

    /// A single atom at the line spanned by `v`.
    pub fn dirac(v: &[f64], weight: f64) -> Result<Self> {
        Self::new(v.len(), [(canonical_lift(v)?, weight)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[(ProjectivePoint, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w.abs()).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.atoms.iter().all(|(_, w)| *w > 0.0)
    }

    pub fn add(&self, other: &DiscreteMeasure) -> Result<DiscreteMeasure> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Self::new(self.dim, self.atoms.iter().chain(&other.atoms).cloned())
    }

    pub fn scale(&self, k: f64) -> DiscreteMeasure {
        Self::new(self.dim, self.atoms.iter().map(|(p, w)| (p.clone(), w * k))).expect("same dimension")
    }

    /// Same atoms (up to [`SAME_POINT_TOL`]) with weights equal within
    /// `tol * max(1, |w|)`.
    pub fn approx_eq(&self, other: &DiscreteMeasure, tol: f64) -> bool {
        if self.dim != other.dim || self.atoms.len() != other.atoms.len() {
            return false;
        }
        self.atoms.iter().all(|(p, w)| {
            other.atoms.iter().any(|(q, v)| {
                crate::projective::unchecked_distance(p.rep(), q.rep()) < SAME_POINT_TOL
                    && (w - v).abs() <= tol * w.abs().max(1.0)
            })
        })
    }

    /// `mu(U_i)` for every cell of `p`.
    pub fn cell_masses(&self, p: &TaggedPartition) -> Result<Vec<f64>> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        let mut masses = vec![0.0; p.len()];
        for (x, w) in &self.atoms {
            masses[p.cell_of(x)?] += w;
        }
        Ok(masses)
    }

    /// `sum_i mu(U_i) delta_{x_i}`: every atom moves to the tag of its cell.
    pub fn discretize(&self, p: &TaggedPartition) -> Result<DiscreteMeasure> {
        let masses = self.cell_masses(p)?;
        Self::new(self.dim, p.tags().iter().cloned().zip(masses))
    }
}

/// The measure of a broken line: each moving interval contributes its length
/// at the line spanned by its velocity.
pub fn measure_of(c: &PcvCurve) -> DiscreteMeasure {
    let atoms = c
        .intervals()
        .filter(|(_, _, v)| !vector::is_zero(v))
        .map(|(t0, t1, v)| (canonical_lift(v).expect("nonzero velocity"), (t1 - t0) * vector::norm(v)));
    DiscreteMeasure::new(c.dim(), atoms).expect("velocities share the curve's dimension")
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    point: Vec<f64>,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct MeasureJson {
    d: usize,
    atoms: Vec<AtomJson>,
}

impl From<DiscreteMeasure> for MeasureJson {
    fn from(m: DiscreteMeasure) -> Self {
        MeasureJson {
            d: m.dim,
            atoms: m.atoms.into_iter().map(|(p, weight)| AtomJson { point: p.rep().to_vec(), weight }).collect(),
        }
    }
}

impl TryFrom<MeasureJson> for DiscreteMeasure {
    type Error = Error;

    fn try_from(j: MeasureJson) -> Result<Self> {
        let atoms = j.atoms.into_iter().map(|a| Ok((canonical_lift(&a.point)?, a.weight))).collect::<Result<Vec<_>>>()?;
        DiscreteMeasure::new(j.d, atoms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn e(i: usize) -> Vec<f64> {
        let mut v = vec![0.0, 0.0];
        v[i] = 1.0;
        v
    }

    #[test]
    fn measure_of_examples() {
        let seg = PcvCurve::segment(e(0)).unwrap();
        let m = measure_of(&seg);
        assert_eq!(m, DiscreteMeasure::dirac(&e(0), 1.0).unwrap());
        assert_eq!(measure_of(&seg.reverse()), m);

        let corner = PcvCurve::from_vertices(&[vec![0.0, 0.0], e(0), vec![1.0, 1.0]]).unwrap();
        let m = measure_of(&corner);
        assert_eq!(m.len(), 2);
        assert!(m.approx_eq(&DiscreteMeasure::dirac(&e(0), 1.0).unwrap().add(&DiscreteMeasure::dirac(&e(1), 1.0).unwrap()).unwrap(), 1e-15));
        assert!(measure_of(&PcvCurve::zero(2)).is_empty());
    }

    #[test]
    fn antipodal_atoms_merge() {
        let m = DiscreteMeasure::new(2, [(canonical_lift(&[1.0, -1.0]).unwrap(), 1.0), (canonical_lift(&[-2.0, 2.0]).unwrap(), 0.5)]).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.total_mass(), 1.5);
        let cancel = m.add(&m.scale(-1.0)).unwrap();
        assert!(cancel.is_empty());
    }

    #[test]
    fn add_and_scale() {
        let mu = DiscreteMeasure::dirac(&[1.0, 2.0], 0.7).unwrap();
        assert_eq!(mu.add(&DiscreteMeasure::empty(2)).unwrap(), mu);
        assert!(mu.add(&DiscreteMeasure::empty(3)).is_err());
        assert_eq!(mu.scale(2.0).total_mass(), 1.4);
    }

    #[test]
    fn discretize_examples() {
        let p = TaggedPartition::uniform(2, 1).unwrap();
        let mu = DiscreteMeasure::dirac(&e(0), 1.0).unwrap().add(&DiscreteMeasure::dirac(&e(1), 1.0).unwrap()).unwrap();
        let got = mu.discretize(&p).unwrap();
        assert!(got.approx_eq(&DiscreteMeasure::dirac(&e(1), 2.0).unwrap(), 1e-15));

        let p8 = TaggedPartition::uniform(2, 8).unwrap();
        let on_tags = DiscreteMeasure::new(2, p8.tags().iter().cloned().zip([0.5, 1.0, 0.0, 2.0, 0.1, 0.0, 0.0, 3.0])).unwrap();
        assert_eq!(on_tags.discretize(&p8).unwrap(), on_tags);
        assert!(mu.discretize(&TaggedPartition::uniform(3, 2).unwrap()).is_err());
    }

    #[test]
    fn cell_masses_follow_arcs() {
        let p = TaggedPartition::uniform(2, 4).unwrap();
        let mu = DiscreteMeasure::new(2, [(ProjectivePoint::from_angle(0.0), 1.0), (ProjectivePoint::from_angle(PI / 2.0), 2.0)]).unwrap();
        assert_eq!(mu.cell_masses(&p).unwrap(), vec![1.0, 0.0, 2.0, 0.0]);
    }

    #[test]
    fn json_roundtrip() {
        let mu = DiscreteMeasure::dirac(&[0.0, -3.0], 2.5).unwrap();
        let s = serde_json::to_string(&mu).unwrap();
        assert_eq!(s, r#"{"d":2,"atoms":[{"point":[0.0,1.0],"weight":2.5}]}"#);
        assert_eq!(serde_json::from_str::<DiscreteMeasure>(&s).unwrap(), mu);
        assert!(serde_json::from_str::<DiscreteMeasure>(r#"{"d":2,"atoms":[{"point":[0,0],"weight":1}]}"#).is_err());
    }
}
