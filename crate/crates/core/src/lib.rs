//! Projected-length tomography for curves.
//!
//! A curve `alpha: [0,1] -> R^d` has projected length
//! `M(xi) = integral of |xi . alpha'(t)| dt` along every unit direction `xi`.
//! That data only sees the measure the curve induces on projective space
//! (arc length sorted by direction, with antipodal directions identified),
//! and it is exactly the cosine transform of that measure. This crate
//! computes the forward map for broken lines and discrete measures,
//! inverts sampled transform data back to a measure, and rebuilds a
//! representative constant-speed broken line from a measure.
//!
//! Modules:
//! - [`projective`]: canonical representatives, the projective metric and tagged partitions.
//! - [`curve`]: piecewise-constant-velocity curves and their algebra.
//! - [`measure`]: discrete measures, discretization, and the bounded-Lipschitz distance.
//! - [`cosine`]: forward cosine transform and two inversion routes.
//! - [`reconstruct`]: the rearrangement and broken-line approximation operators.
//! - [`cli`]: file formats and batch commands behind the `projlen` binary.

pub mod cli;
pub mod cosine;
pub mod curve;
mod error;
pub mod measure;
pub mod projective;
pub mod reconstruct;
pub mod vector;

pub use cosine::{forward_curve, forward_discrete, TransformSamples};
pub use curve::{PcvCurve, StepFunction};
pub use error::{Error, Result};
pub use measure::{measure_of, weak_distance, DiscreteMeasure};
pub use projective::{canonical_lift, hat_extend, proj_distance, ProjectivePoint, TaggedPartition};
