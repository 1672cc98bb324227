//! Soft error rate of a non-ideal sense amplifier: closed form, exact
//! Gaussian tails and Monte Carlo for one operating point.
//!
//! ```bash
//! cargo run --release --example ser_analysis
//! ```

use softerr::ser::{detection_error_probs, evaluate, MonteCarlo};
use softerr::SenseAmpParams;

fn main() -> softerr::Result<()> {
    // Levels at 3 sigma, a 20 % insensitive band shifted up by 10 %.
    let params = SenseAmpParams::symmetric(3.0, 1.0, 0.2, 0.1)?;
    let (p1, p2) = detection_error_probs(&params)?;
    println!("P(0 read as 1) = {p1:.6e}");
    println!("P(1 read as 0) = {p2:.6e}");

    let result = evaluate(&params, &MonteCarlo::new(1_000_000, 42).parallel(true))?;
    println!("{}", serde_json::to_string_pretty(&result)?);
    println!(
        "Monte Carlo is {:.2} standard errors from the closed form",
        result.z_score().unwrap_or(0.0)
    );

    // Unequal levels: the closed form does not apply, the exact path does.
    let skewed = SenseAmpParams::new(2.5, 3.5, 1.0, 0.2, 0.1)?;
    let r = evaluate(&skewed, &MonteCarlo::new(1_000_000, 42).parallel(true))?;
    println!(
        "\nv_low 2.5, v_high 3.5: analytical {:?}, exact {:.6e}, MC {:?}",
        r.analytical, r.exact_cdf, r.monte_carlo
    );
    Ok(())
}
