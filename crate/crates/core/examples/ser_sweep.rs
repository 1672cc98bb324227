//! Parameter sweeps written as CSV, ready for plotting.
//!
//! ```bash
//! cargo run --release --example ser_sweep > snr.csv
//! ```

use std::io;

use softerr::ser::{ser_sweep, MonteCarlo, SweepAxis};
use softerr::SenseAmpParams;

fn main() -> softerr::Result<()> {
    let base = SenseAmpParams::symmetric(1.0, 1.0, 0.2, 0.1)?;
    let snr: Vec<f64> = (1..=16).map(|i| f64::from(i) * 0.5).collect();
    let sweep = ser_sweep(
        &base,
        SweepAxis::Snr,
        &snr,
        &MonteCarlo::new(200_000, 42).parallel(true),
    )?;
    sweep.write_csv(io::stdout().lock())?;

    // Past 1 - delta/2 - chi < 0 the error rate stops falling with SNR.
    let chi = ser_sweep(&base, SweepAxis::Chi, &[0.5, 0.9, 0.95], &MonteCarlo::new(1000, 1))?;
    for w in &chi.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}
