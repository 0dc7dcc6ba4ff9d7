//! Constant-speed reparametrization of a curve that pauses.

use projlen::{measure_of, PcvCurve};

fn main() -> projlen::Result<()> {
    let c = PcvCurve::new(vec![0.0, 0.25, 0.5, 0.9, 1.0], vec![vec![2.0, 0.0], vec![0.0, 0.0], vec![0.0, 4.0], vec![-1.0, 1.0]])?;
    let r = c.constant_speed_reparam();
    println!("length {}", c.ac_norm());
    for (a, b, v) in r.intervals() {
        println!("[{a:.4}, {b:.4}) velocity {v:?} speed {:.6}", projlen::vector::norm(v));
    }
    println!("same measure: {}", measure_of(&c).approx_eq(&measure_of(&r), 1e-12));
    Ok(())
}
