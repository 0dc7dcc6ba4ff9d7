//! Projected length of a broken line along a few directions, computed from
//! the curve directly and from its induced measure.

use projlen::{forward_curve, forward_discrete, measure_of, PcvCurve};

fn main() -> projlen::Result<()> {
    // Unit square walked once around.
    let square = PcvCurve::from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![0.0, 0.0]])?;
    let mu = measure_of(&square);
    println!("length {}, measure {:?}", square.ac_norm(), mu.atoms());

    for deg in [0.0_f64, 30.0, 45.0, 90.0] {
        let t = deg.to_radians();
        let xi = [t.cos(), t.sin()];
        println!(
            "xi at {deg:>4} deg: from curve {:.6}, from measure {:.6}",
            forward_curve(&square, &xi)?,
            forward_discrete(&mu, &xi)?
        );
    }
    Ok(())
}
