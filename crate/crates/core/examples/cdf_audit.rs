//! Empirical joint CDF queries and the full property audit.
//!
//! ```bash
//! cargo run --release --example cdf_audit
//! ```

use softerr::audit::{audit_cdf, AuditConfig};
use softerr::rv::{sample_many, PairKind, RvPairSpec};

fn main() -> softerr::Result<()> {
    let s = sample_many(
        &RvPairSpec::new(PairKind::Gaussian { mu: 0.0, sigma: 1.0 }),
        100_000,
        42,
    )?;

    println!("F(0, 0)           = {:.5}", s.joint_cdf(0.0, 0.0));
    println!(
        "F1(0) * F2(0)     = {:.5}",
        s.marginal_cdf_x1(0.0) * s.marginal_cdf_x2(0.0)
    );
    println!("P((-1,1]x(-1,1])  = {:.5}", s.interval_prob(-1.0, 1.0, -1.0, 1.0)?);
    println!("  via 4 corners   = {:.5}", s.interval_via_cdf(-1.0, 1.0, -1.0, 1.0)?);

    println!("\naudit:");
    let report = audit_cdf(&s, &AuditConfig::new(42))?;
    print!("{report}");
    println!("overall: {}", if report.passed() { "PASS" } else { "FAIL" });
    Ok(())
}
