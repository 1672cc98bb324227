//! Gaussian pairs from the Box-Muller transform, checked against their
//! reference laws with Kolmogorov-Smirnov tests.
//!
//! ```bash
//! cargo run --release --example box_muller
//! ```

use std::f64::consts::PI;

use softerr::cdf::ks_test;
use softerr::rv::{gaussian_pair, max_radius, sample_many, PairKind, RvPairSpec};
use softerr::special::normal_cdf;
use softerr::BitStream;

fn main() -> softerr::Result<()> {
    let g = gaussian_pair(1.0, 0.5, &BitStream::from_seed(3), 52)?;
    println!("one pair ~ N(1, 0.25): ({:.6}, {:.6})", g.g1, g.g2);
    println!("largest radius at depth 52: {:.3}", max_radius(52));

    let n = 100_000;
    let s = sample_many(&RvPairSpec::new(PairKind::Gaussian { mu: 0.0, sigma: 1.0 }), n, 42)?;
    let half_r2: Vec<f64> = s.pairs().iter().map(|(a, b)| 0.5 * (a * a + b * b)).collect();
    let angle: Vec<f64> = s
        .pairs()
        .iter()
        .map(|(a, b)| b.atan2(*a).rem_euclid(2.0 * PI))
        .collect();

    let checks = [
        (
            "(g1^2 + g2^2)/2 vs Exp(1)",
            ks_test(&half_r2, |x: f64| if x <= 0.0 { 0.0 } else { 1.0 - (-x).exp() })?,
        ),
        (
            "angle vs U(0, 2pi)",
            ks_test(&angle, |x: f64| (x / (2.0 * PI)).clamp(0.0, 1.0))?,
        ),
        ("g1 vs N(0, 1)", ks_test(&s.x1s(), normal_cdf)?),
        ("g2 vs N(0, 1)", ks_test(&s.x2s(), normal_cdf)?),
    ];
    println!("\nKS over {n} pairs (alpha = 0.001)");
    for (name, k) in checks {
        let verdict = if k.passes(0.001) { "ok" } else { "REJECTED" };
        println!("  {name:<28} D = {:.5}  p = {:.3}  {verdict}", k.statistic, k.p_value);
    }
    println!("  correlation                  {:+.5}", s.pearson());
    Ok(())
}
