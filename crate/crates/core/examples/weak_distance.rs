//! The weak distance between induced measures never exceeds the distance
//! between the curves.

use projlen::measure::weak_distance_with_witness;
use projlen::{measure_of, weak_distance, DiscreteMeasure, PcvCurve};

fn main() -> projlen::Result<()> {
    let a = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]])?;
    let b = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.1], vec![1.2, 1.0]])?;
    println!("curve distance {:.6}", a.ac_distance(&b)?);
    println!("measure distance {:.6}", weak_distance(&measure_of(&a), &measure_of(&b))?);

    // Two unit atoms at angle t apart sit at distance 2 sin(t/2).
    let mu = DiscreteMeasure::dirac(&[1.0, 0.0], 1.0)?;
    let nu = DiscreteMeasure::dirac(&[0.6, 0.8], 1.0)?;
    let w = weak_distance_with_witness(&mu, &nu)?;
    println!("two atoms: {:.6} with test function values {:?}", w.value, w.values);
    Ok(())
}
