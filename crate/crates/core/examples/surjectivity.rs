//! Build broken lines whose induced measures converge to a given measure.

use projlen::reconstruct::surjectivity_sequence;
use projlen::{DiscreteMeasure, ProjectivePoint, TaggedPartition};

fn main() -> projlen::Result<()> {
    let mu = DiscreteMeasure::new(
        2,
        [(ProjectivePoint::from_angle(0.3), 1.0), (ProjectivePoint::from_angle(1.2), 0.5), (ProjectivePoint::from_angle(2.9), 2.0)],
    )?;
    let run = surjectivity_sequence(&mu, &TaggedPartition::uniform(2, 2)?, 6, 2)?;
    for l in &run.certificate.levels {
        println!(
            "level {}: {:>3} cells, bound {:.4}, cauchy {:.4}, weak distance {:.4}",
            l.level, l.cells, l.bound, l.cauchy, l.weak_distance
        );
    }
    println!("certificate holds: {}", run.certificate.holds(1e-9));
    println!("last curve vertices: {:?}", run.last_curve().vertices(&[0.0, 0.0]));
    Ok(())
}
