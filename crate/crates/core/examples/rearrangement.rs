//! Curves with the same segments in a different order, orientation or
//! subdivision induce the same measure and so have the same projected length
//! in every direction.

use projlen::{measure_of, weak_distance, PcvCurve};

fn main() -> projlen::Result<()> {
    let a = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![2.0, 0.0], vec![2.0, 1.0], vec![3.0, 3.0]])?;
    // Same steps: (1, 2) reversed, (2, 0) split in two, (0, 1) flipped.
    let b = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![-1.0, -2.0], vec![0.0, -2.0], vec![0.0, -3.0], vec![1.0, -3.0]])?;

    let (ma, mb) = (measure_of(&a), measure_of(&b));
    println!("measure of a: {:?}", ma.atoms());
    println!("measure of b: {:?}", mb.atoms());
    println!("equal: {}", ma.approx_eq(&mb, 1e-12));
    println!("curve distance {:.4}, measure distance {:.2e}", a.ac_distance(&b)?, weak_distance(&ma, &mb)?);
    Ok(())
}
