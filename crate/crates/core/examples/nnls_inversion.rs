//! Recover a measure from sampled projected lengths by nonnegative least
//! squares on the tags of a partition.

use projlen::cosine::{invert_nnls, sample_transform, DEFAULT_TOL};
use projlen::{measure_of, weak_distance, PcvCurve, TaggedPartition};

fn main() -> projlen::Result<()> {
    let c = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![3.0, 1.0], vec![2.0, 4.0], vec![-1.0, 2.0]])?;
    let truth = measure_of(&c);
    let samples = sample_transform(&truth, 180)?;
    for n in [8, 32, 128] {
        let p = TaggedPartition::uniform(2, n)?;
        let inv = invert_nnls(&samples, &p, DEFAULT_TOL)?;
        println!(
            "{n:>4} tags: {} atoms, residual {:.2e}, weak error {:.4} (cell diameter {:.4})",
            inv.measure.len(),
            inv.residual,
            weak_distance(&inv.measure, &truth)?,
            p.norm_bound()
        );
    }
    Ok(())
}
