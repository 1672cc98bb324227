//! Uniforms by binary expansion at a chosen depth, and the inverse-transform
//! samplers built on them.
//!
//! ```bash
//! cargo run --example uniform_sampling
//! ```

use softerr::rv::{exponential_rv, rayleigh_rv, std_unif_cont, std_unif_disc, triangular_rv, uniform_rv};
use softerr::BitStream;

fn main() -> softerr::Result<()> {
    let stream = BitStream::from_seed(7);

    for n in [1, 2, 4, 8, 52] {
        let u = std_unif_disc(n, &stream);
        println!("depth {n:>2}: u = {:<20} ({} bits used)", u.value, u.bits_used);
    }

    // Each draw hands back the unread stream, so draws can be chained.
    let (x, s) = uniform_rv(-1.0, 1.0, &stream, 52)?;
    let (e, s) = exponential_rv(2.0, &s, 52)?;
    let (r, s) = rayleigh_rv(1.5, &s, 52)?;
    let (t, s) = triangular_rv(0.0, 10.0, &s, 52)?;
    println!("\nuniform(-1, 1)     {x:.6}");
    println!("exponential(2)     {e:.6}");
    println!("rayleigh(1.5)      {r:.6}");
    println!("triangular(0, 10)  {t:.6}");
    println!("bits consumed      {}", s.cursor());

    let mean: f64 = (0..100_000)
        .map(|i| std_unif_cont(&BitStream::derive(1, i), 52).value)
        .sum::<f64>()
        / 1e5;
    println!("\nmean of 1e5 uniforms: {mean:.5}");
    Ok(())
}
