//! Gaussian upper tail `Q`, `erfc`, and the quadrature underneath.
//!
//! ```bash
//! cargo run --example q_function
//! ```

use softerr::special::{erfc, gaussian_upper_tail, q_from_quadrature, q_function, QuadratureConfig};

fn main() -> softerr::Result<()> {
    println!("{:>6}  {:>24}  {:>24}", "x", "Q(x)", "erfc(x)");
    for x in [-3.0, -1.0, 0.0, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 37.0] {
        println!("{x:>6}  {:>24.16e}  {:>24.16e}", q_function(x), erfc(x));
    }

    let mass = q_from_quadrature(-1.0, 1.0, &QuadratureConfig::default())?;
    println!("\nP(-1 < Z <= 1)      = {mass:.15}");
    println!("P(X > 4), X~N(1, 4) = {:.15}", gaussian_upper_tail(4.0, 1.0, 2.0)?);
    Ok(())
}
