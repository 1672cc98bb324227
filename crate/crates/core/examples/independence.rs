//! Factorisation check `F(x1, x2) = F1(x1) F2(x2)` on a quantile grid, for
//! the split-stream uniform pair and for a perfectly dependent pair.
//!
//! ```bash
//! cargo run --release --example independence
//! ```

use softerr::audit::{INDEPENDENCE_LEVELS, INDEPENDENCE_TOLERANCE};
use softerr::rv::{sample_many, PairKind, RvPairSpec};
use softerr::SamplePairs;

fn main() -> softerr::Result<()> {
    let s = sample_many(&RvPairSpec::new(PairKind::StandardUniform), 100_000, 42)?;
    let grid = s.quantile_grid(&INDEPENDENCE_LEVELS);
    let r = s.independence_check(&grid, INDEPENDENCE_TOLERANCE)?;
    println!(
        "uniform pair: max |F - F1 F2| = {:.5} at {:?} -> {}",
        r.max_abs_deviation,
        r.worst_point,
        if r.passed { "independent" } else { "dependent" }
    );

    let comonotone = SamplePairs::new((0..4).map(|i| (f64::from(i), f64::from(i))).collect())?;
    let r = comonotone.independence_check(&[(1.0, 1.0)], 0.05)?;
    println!(
        "x2 = x1     : max |F - F1 F2| = {:.5} at {:?} -> {}",
        r.max_abs_deviation,
        r.worst_point,
        if r.passed { "independent" } else { "dependent" }
    );
    Ok(())
}
