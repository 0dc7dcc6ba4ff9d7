//! Invert the planar cosine transform of a smooth density through its
//! Fourier coefficients.

use std::f64::consts::PI;

use projlen::cosine::{forward_density, invert_fourier_d2};

fn main() -> projlen::Result<()> {
    let f = |t: f64| (1.0 + 0.5 * (2.0 * t).cos() + 0.25 * (6.0 * t).sin()) / PI;
    let grid = 128;
    let values = (0..grid)
        .map(|j| {
            let t = j as f64 * PI / grid as f64;
            forward_density(f, &[t.cos(), t.sin()], 256)
        })
        .collect::<projlen::Result<Vec<f64>>>()?;
    let rec = invert_fourier_d2(&values, 8)?;
    println!("mass {:.12}", rec.mass());
    for k in 0..6 {
        let t = k as f64 * PI / 6.0;
        println!("theta {t:.4}: density {:.10}, recovered {:.10}", f(t), rec.eval(t));
    }
    Ok(())
}
