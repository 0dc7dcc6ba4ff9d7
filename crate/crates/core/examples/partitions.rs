//! Tagged partitions of projective space and their refinements.

use projlen::{measure_of, weak_distance, PcvCurve, TaggedPartition};

fn main() -> projlen::Result<()> {
    let c = PcvCurve::from_vertices(&[vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.5], vec![1.0, 2.0, 0.0], vec![0.0, 1.0, 1.0]])?;
    let mu = measure_of(&c);
    let mut p = TaggedPartition::uniform(3, 4)?;
    for _ in 0..4 {
        let disc = mu.discretize(&p)?;
        println!(
            "{:>3} cells, diameter bound {:.4}: discretization error {:.4} <= {:.4}",
            p.len(),
            p.norm_bound(),
            weak_distance(&mu, &disc)?,
            p.norm_bound() * mu.total_mass()
        );
        p = p.refine(2)?;
    }

    let arcs = TaggedPartition::uniform(2, 3)?.refine(2)?;
    println!("{}", serde_json::to_string(&arcs).expect("serializable"));
    Ok(())
}
