//! Random variables built by consuming bit streams.
//!
//! The standard uniform is the truncated binary expansion
//! `u = sum_{k<n} X_k * 2^-(k+1)` of the next `n` bits. Every other variate is a
//! transform of one or two such uniforms: inverse-CDF maps for the scalar
//! distributions, and Box-Muller for Gaussian pairs. Pairs always read their
//! two uniforms from the even and odd halves of one stream.

use std::f64::consts::{LN_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitstream::BitStream;
use crate::cdf::SamplePairs;
use crate::error::{Error, Result};

/// Default truncation depth: enough bits to fill an f64 mantissa.
pub const DEFAULT_DEPTH: u32 = 52;

/// Bits beyond this position cannot change an f64 in [0, 1) without rounding,
/// so they are consumed but not accumulated.
const MANTISSA_BITS: u32 = 53;

#[derive(Debug, Clone, PartialEq)]
pub struct UniformSample {
    /// In `[0, 1 - 2^-n]`, a multiple of `2^-min(n, 53)`.
    pub value: f64,
    pub bits_used: u32,
    pub remaining: BitStream,
}

/// Discrete uniform on `{0, 2^-n, ..., 1 - 2^-n}` from the next `n` bits.
///
/// Bit `k` after the cursor carries weight `2^-(k+1)`. For `n > 53` the
/// extra bits are consumed and the sum is truncated toward zero at 53 bits,
/// which keeps the value strictly below 1 and preserves monotone refinement.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn std_unif_disc(n: u32, stream: &BitStream) -> UniformSample {
    assert!(n >= 1, "truncation depth must be at least 1");
    let exact = n.min(MANTISSA_BITS);
    let start = stream.cursor();
    let mantissa = (0..u64::from(exact)).fold(0u64, |acc, k| (acc << 1) | u64::from(stream.bit(start + k)));
    UniformSample {
        value: mantissa as f64 * (-f64::from(exact)).exp2(),
        bits_used: n,
        remaining: stream.advance(u64::from(n)),
    }
}

/// Standard continuous uniform, approximated by truncating the binary
/// expansion at depth `n`. The gap to the untruncated limit is below `2^-n`.
pub fn std_unif_cont(stream: &BitStream, n: u32) -> UniformSample {
    std_unif_disc(n, stream)
}

fn check_depth(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("truncation_bits", 0.0, "must be >= 1"));
    }
    Ok(())
}

// Inverse-CDF transforms of a uniform `u` in [0, 1).

/// `(b - a) * u + a`, pulled back below `b` when rounding lands on it.
pub fn uniform_inverse(u: f64, a: f64, b: f64) -> f64 {
    let x = (b - a) * u + a;
    if x >= b {
        b.next_down()
    } else {
        x
    }
}

pub fn exponential_inverse(u: f64, rate: f64) -> f64 {
    -(1.0 - u).ln() / rate
}

pub fn rayleigh_inverse(u: f64, scale: f64) -> f64 {
    scale * (-2.0 * (1.0 - u).ln()).sqrt()
}

/// Symmetric triangular distribution on `[lo, hi]` with its mode at the midpoint.
pub fn triangular_inverse(u: f64, lo: f64, hi: f64) -> f64 {
    let width = hi - lo;
    if u < 0.5 {
        lo + width * (u / 2.0).sqrt()
    } else {
        hi - width * ((1.0 - u) / 2.0).sqrt()
    }
}

fn ordered(lo_name: &'static str, lo: f64, hi: f64) -> Result<()> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(lo_name, lo, "must be finite and below the upper bound"));
    }
    Ok(())
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::domain(name, value, "must be finite and > 0"));
    }
    Ok(())
}

/// `(b - a) * u + a` with `u = std_unif_cont(stream, n)`; lies in `[a, b)`.
pub fn uniform_rv(a: f64, b: f64, stream: &BitStream, n: u32) -> Result<(f64, BitStream)> {
    ordered("a", a, b)?;
    check_depth(n)?;
    let u = std_unif_cont(stream, n);
    Ok((uniform_inverse(u.value, a, b), u.remaining))
}

pub fn exponential_rv(rate: f64, stream: &BitStream, n: u32) -> Result<(f64, BitStream)> {
    positive("rate", rate)?;
    check_depth(n)?;
    let u = std_unif_cont(stream, n);
    Ok((exponential_inverse(u.value, rate), u.remaining))
}

pub fn rayleigh_rv(scale: f64, stream: &BitStream, n: u32) -> Result<(f64, BitStream)> {
    positive("scale", scale)?;
    check_depth(n)?;
    let u = std_unif_cont(stream, n);
    Ok((rayleigh_inverse(u.value, scale), u.remaining))
}

pub fn triangular_rv(lo: f64, hi: f64, stream: &BitStream, n: u32) -> Result<(f64, BitStream)> {
    ordered("lo", lo, hi)?;
    check_depth(n)?;
    let u = std_unif_cont(stream, n);
    Ok((triangular_inverse(u.value, lo, hi), u.remaining))
}

/// Two uniforms drawn from disjoint halves of one stream, plus what is left
/// of each half.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformPair {
    pub values: (f64, f64),
    pub even_rest: BitStream,
    pub odd_rest: BitStream,
}

/// First component from the even-indexed bits, second from the odd-indexed bits.
pub fn std_unif_pair(stream: &BitStream, n: u32) -> UniformPair {
    let split = stream.split_even_odd();
    let first = std_unif_cont(&split.even, n);
    let second = std_unif_cont(&split.odd, n);
    UniformPair {
        values: (first.value, second.value),
        even_rest: first.remaining,
        odd_rest: second.remaining,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPair {
    pub g1: f64,
    pub g2: f64,
    pub mu: f64,
    pub sigma: f64,
}

/// Radius/angle transform: `(r cos t, r sin t)` with `r = sqrt(-2 ln u1)`,
/// `t = 2 pi u2`. Expects `u1` in `(0, 1]`.
pub fn box_muller(u1: f64, u2: f64) -> (f64, f64) {
    let r = (-2.0 * u1.ln()).sqrt();
    let (sin, cos) = (2.0 * PI * u2).sin_cos();
    (r * cos, r * sin)
}

/// Largest radius a standard pair can reach at depth `n`.
pub fn max_radius(n: u32) -> f64 {
    (2.0 * f64::from(n.min(MANTISSA_BITS)) * LN_2).sqrt()
}

/// Standard Gaussian pair from one stream.
///
/// The first uniform is reflected to `1 - u1`, which moves its support from
/// `[0, 1 - 2^-n]` to `[2^-n, 1]`: same distribution, no `ln 0`.
pub fn std_gaussian_pair(stream: &BitStream, n: u32) -> GaussianPair {
    let (u1, u2) = std_unif_pair(stream, n).values;
    let (g1, g2) = box_muller(1.0 - u1, u2);
    GaussianPair {
        g1,
        g2,
        mu: 0.0,
        sigma: 1.0,
    }
}

/// `(mu + sigma * g1, mu + sigma * g2)` over the standard pair of the same stream.
pub fn gaussian_pair(mu: f64, sigma: f64, stream: &BitStream, n: u32) -> Result<GaussianPair> {
    positive("sigma", sigma)?;
    if !mu.is_finite() {
        return Err(Error::domain("mu", mu, "must be finite"));
    }
    check_depth(n)?;
    let std = std_gaussian_pair(stream, n);
    Ok(GaussianPair {
        g1: mu + sigma * std.g1,
        g2: mu + sigma * std.g2,
        mu,
        sigma,
    })
}

/// Which paired distribution to draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairKind {
    StandardUniform,
    Gaussian { mu: f64, sigma: f64 },
    Uniform { a: f64, b: f64 },
    Exponential { rate: f64 },
    Rayleigh { scale: f64 },
    Triangular { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RvPairSpec {
    pub kind: PairKind,
    pub truncation_bits: u32,
}

impl RvPairSpec {
    pub fn new(kind: PairKind) -> Self {
        Self {
            kind,
            truncation_bits: DEFAULT_DEPTH,
        }
    }

    pub fn with_bits(mut self, bits: u32) -> Self {
        self.truncation_bits = bits;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_depth(self.truncation_bits)?;
        match self.kind {
            PairKind::StandardUniform => Ok(()),
            PairKind::Gaussian { mu, sigma } => {
                if !mu.is_finite() {
                    return Err(Error::domain("mu", mu, "must be finite"));
                }
                positive("sigma", sigma)
            }
            PairKind::Uniform { a, b } => ordered("a", a, b),
            PairKind::Exponential { rate } => positive("rate", rate),
            PairKind::Rayleigh { scale } => positive("scale", scale),
            PairKind::Triangular { lo, hi } => ordered("lo", lo, hi),
        }
    }

    /// One pair from `stream`. Assumes the spec has been validated.
    pub fn draw(&self, stream: &BitStream) -> (f64, f64) {
        let n = self.truncation_bits;
        if let PairKind::Gaussian { mu, sigma } = self.kind {
            let std = std_gaussian_pair(stream, n);
            return (mu + sigma * std.g1, mu + sigma * std.g2);
        }
        let (u1, u2) = std_unif_pair(stream, n).values;
        let map = |u: f64| match self.kind {
            PairKind::StandardUniform => u,
            PairKind::Uniform { a, b } => uniform_inverse(u, a, b),
            PairKind::Exponential { rate } => exponential_inverse(u, rate),
            PairKind::Rayleigh { scale } => rayleigh_inverse(u, scale),
            PairKind::Triangular { lo, hi } => triangular_inverse(u, lo, hi),
            PairKind::Gaussian { .. } => unreachable!(),
        };
        (map(u1), map(u2))
    }
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::domain("count", 0.0, "must be >= 1"));
    }
    Ok(())
}

/// `count` pairs; pair `i` is drawn from `BitStream::derive(seed, i)`.
pub fn sample_many(spec: &RvPairSpec, count: usize, seed: u64) -> Result<SamplePairs> {
    spec.validate()?;
    check_count(count)?;
    let pairs = (0..count as u64)
        .map(|i| spec.draw(&BitStream::derive(seed, i)))
        .collect();
    SamplePairs::with_provenance(pairs, *spec, seed)
}

/// Same output as [`sample_many`], computed on the rayon pool.
pub fn sample_many_par(spec: &RvPairSpec, count: usize, seed: u64) -> Result<SamplePairs> {
    spec.validate()?;
    check_count(count)?;
    let pairs = (0..count as u64)
        .into_par_iter()
        .map(|i| spec.draw(&BitStream::derive(seed, i)))
        .collect();
    SamplePairs::with_provenance(pairs, *spec, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn stream(bits: &str) -> BitStream {
        let v: Vec<bool> = bits.chars().map(|c| c == '1').collect();
        BitStream::from_bits(&v)
    }

    #[test]
    fn disc_zero_bits() {
        let u = std_unif_disc(4, &stream("0000"));
        assert_eq!(u.value, 0.0);
        assert_eq!(u.remaining.cursor(), 4);
    }

    #[test]
    fn disc_all_ones() {
        assert_eq!(std_unif_disc(4, &stream("1111")).value, 0.9375);
        assert_eq!(std_unif_cont(&stream("1"), 52).value, 1.0 - 2f64.powi(-52));
    }

    #[test]
    fn disc_binary_expansion() {
        assert_eq!(std_unif_disc(3, &stream("101")).value, 0.625);
    }

    #[test]
    fn deep_truncation_stays_below_one() {
        let u = std_unif_cont(&stream("1"), 200);
        assert!(u.value < 1.0);
        assert_eq!(u.remaining.cursor(), 200);
    }

    #[test]
    #[should_panic]
    fn depth_zero_panics() {
        std_unif_disc(0, &BitStream::from_seed(1));
    }

    #[test]
    fn depth_20_close_to_depth_52() {
        for seed in 0..100 {
            let s = BitStream::from_seed(seed);
            let coarse = std_unif_cont(&s, 20).value;
            let fine = std_unif_cont(&s, 52).value;
            assert!(fine >= coarse && fine - coarse < 2f64.powi(-20));
        }
    }

    #[test]
    fn affine_uniform() {
        let u = 0.625;
        assert_eq!(uniform_inverse(u, 0.0, 1.0), 0.625);
        assert_eq!(uniform_inverse(0.5, -2.0, 2.0), 0.0);
        assert_eq!(uniform_inverse(0.25, 3.0, 7.0), 4.0);
        let (x, rest) = uniform_rv(3.0, 7.0, &stream("01"), 2).unwrap();
        assert_eq!(x, 4.0);
        assert_eq!(rest.cursor(), 2);
    }

    #[test]
    fn parameter_domains() {
        let s = BitStream::from_seed(0);
        assert!(matches!(uniform_rv(1.0, 1.0, &s, 8), Err(Error::Domain { .. })));
        assert!(uniform_rv(2.0, 1.0, &s, 8).is_err());
        assert!(exponential_rv(0.0, &s, 8).is_err());
        assert!(rayleigh_rv(-1.0, &s, 8).is_err());
        assert!(triangular_rv(1.0, f64::NAN, &s, 8).is_err());
        assert!(gaussian_pair(0.0, 0.0, &s, 8).is_err());
        assert!(uniform_rv(0.0, 1.0, &s, 0).is_err());
    }

    #[test]
    fn inverse_transforms() {
        assert_eq!(exponential_inverse(0.0, 1.0), 0.0);
        let u = 1.0 - (-2.0f64).exp();
        assert!((exponential_inverse(u, 2.0) - 1.0).abs() < 1e-14);
        let u = 1.0 - (-0.5f64).exp();
        assert!((rayleigh_inverse(u, 1.0) - 1.0).abs() < 1e-14);
        assert_eq!(triangular_inverse(0.5, 0.0, 2.0), 1.0);
        assert_eq!(triangular_inverse(0.0, 0.0, 2.0), 0.0);
        // CDF of the symmetric triangle at x = 0.5 on [0, 2] is 2 * 0.25 / 4.
        assert!((triangular_inverse(0.125, 0.0, 2.0) - 0.5).abs() < 1e-15);
        assert!((triangular_inverse(0.875, 0.0, 2.0) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn scalar_samplers_consume_one_uniform() {
        let s = BitStream::from_seed(12);
        for (x, rest) in [
            exponential_rv(1.5, &s, 16).unwrap(),
            rayleigh_rv(2.0, &s, 16).unwrap(),
            triangular_rv(-1.0, 1.0, &s, 16).unwrap(),
        ] {
            assert!(x.is_finite());
            assert_eq!(rest.cursor(), 16);
        }
    }

    #[test]
    fn pair_reads_even_and_odd_bits() {
        // even positions 1,0,1 ; odd positions 0,1,0
        let p = std_unif_pair(&stream("100110"), 3);
        assert_eq!(p.values, (0.625, 0.25));
        assert_eq!(p.even_rest.cursor(), 3);
        assert_eq!(p.odd_rest.cursor(), 3);
    }

    #[test]
    fn box_muller_fixed_points() {
        assert_eq!(box_muller(1.0, 0.3), (0.0, 0.0));
        let (g1, g2) = box_muller((-0.5f64).exp(), 0.0);
        assert!((g1 - 1.0).abs() < 1e-15 && g2 == 0.0);
        let (g1, g2) = box_muller((-2.0f64).exp(), 0.25);
        assert!(g1.abs() < 1e-12 && (g2 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn all_zero_stream_hits_origin() {
        // u1 = 0 reflects to 1, so r = 0.
        let g = std_gaussian_pair(&stream("0"), 52);
        assert_eq!((g.g1, g.g2), (0.0, 0.0));
    }

    #[test]
    fn all_one_stream_reaches_max_radius() {
        let g = std_gaussian_pair(&stream("1"), 52);
        let r = g.g1.hypot(g.g2);
        assert!((r - max_radius(52)).abs() < 1e-12);
    }

    #[test]
    fn gaussian_affine_shift() {
        let s = stream("0");
        let g = gaussian_pair(5.0, 2.0, &s, 52).unwrap();
        assert_eq!((g.g1, g.g2), (5.0, 5.0));
        let s = BitStream::from_seed(77);
        let unit = gaussian_pair(0.0, 1.0, &s, 52).unwrap();
        let std = std_gaussian_pair(&s, 52);
        assert_eq!((unit.g1, unit.g2), (std.g1, std.g2));
    }

    #[test]
    fn gaussian_first_component_mean() {
        let n = 100_000u64;
        let sum: f64 = (0..n)
            .map(|i| gaussian_pair(-1.0, 0.5, &BitStream::derive(3, i), 52).unwrap().g1)
            .sum();
        let mean = sum / n as f64;
        assert!((mean + 1.0).abs() <= 0.005, "mean {mean}");
    }

    #[test]
    fn uniform_pair_correlation_small() {
        let samples = sample_many(&RvPairSpec::new(PairKind::StandardUniform), 100_000, 9).unwrap();
        let r = samples.pearson();
        assert!(r.abs() <= 0.01, "correlation {r}");
    }

    #[test]
    fn sample_many_base_case_and_determinism() {
        let spec = RvPairSpec::new(PairKind::Gaussian { mu: 1.0, sigma: 3.0 });
        let one = sample_many(&spec, 1, 5).unwrap();
        let direct = gaussian_pair(1.0, 3.0, &BitStream::derive(5, 0), 52).unwrap();
        assert_eq!(one.pairs(), &[(direct.g1, direct.g2)]);
        assert_eq!(sample_many(&spec, 500, 5).unwrap(), sample_many(&spec, 500, 5).unwrap());
    }

    #[test]
    fn sample_many_rejects_bad_input() {
        let spec = RvPairSpec::new(PairKind::Exponential { rate: -1.0 });
        assert!(sample_many(&spec, 10, 0).is_err());
        assert!(sample_many(&RvPairSpec::new(PairKind::StandardUniform), 0, 0).is_err());
        assert!(sample_many(&RvPairSpec::new(PairKind::StandardUniform).with_bits(0), 1, 0).is_err());
    }

    #[test]
    fn uniform_marginal_means() {
        let s = sample_many(&RvPairSpec::new(PairKind::StandardUniform), 100_000, 1).unwrap();
        let (m1, m2) = s.means();
        assert!((0.495..=0.505).contains(&m1), "{m1}");
        assert!((0.495..=0.505).contains(&m2), "{m2}");
    }

    #[test]
    fn parallel_matches_sequential() {
        for kind in [
            PairKind::StandardUniform,
            PairKind::Gaussian { mu: 0.0, sigma: 1.0 },
            PairKind::Triangular { lo: 0.0, hi: 1.0 },
        ] {
            let spec = RvPairSpec::new(kind);
            assert_eq!(
                sample_many(&spec, 20_000, 8).unwrap(),
                sample_many_par(&spec, 20_000, 8).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn truncation_refines_monotonically(seed in any::<u64>(), n in 1u32..60, extra in 1u32..40) {
            let s = BitStream::from_seed(seed);
            let coarse = std_unif_cont(&s, n).value;
            let fine = std_unif_cont(&s, n + extra).value;
            prop_assert!(fine >= coarse);
            prop_assert!(fine - coarse < (-f64::from(n)).exp2());
        }

        #[test]
        fn uniform_is_grid_multiple(seed in any::<u64>(), n in 1u32..=53) {
            let u = std_unif_disc(n, &BitStream::from_seed(seed)).value;
            let scaled = u * f64::from(n).exp2();
            prop_assert_eq!(scaled, scaled.trunc());
            prop_assert!(u <= 1.0 - (-f64::from(n)).exp2());
        }

        #[test]
        fn gaussian_radius_bounded(seed in any::<u64>(), n in 1u32..=64, mu in -10.0..10.0f64, sigma in 0.01..10.0f64) {
            let g = gaussian_pair(mu, sigma, &BitStream::from_seed(seed), n).unwrap();
            let bound = sigma * max_radius(n) + 1e-9;
            prop_assert!((g.g1 - mu).abs() <= bound);
            prop_assert!((g.g2 - mu).abs() <= bound);
        }

        #[test]
        fn affine_contract_is_bitwise(seed in any::<u64>(), mu in -5.0..5.0f64, sigma in 0.1..5.0f64) {
            let s = BitStream::from_seed(seed);
            let std = std_gaussian_pair(&s, 52);
            let g = gaussian_pair(mu, sigma, &s, 52).unwrap();
            prop_assert_eq!(g.g1.to_bits(), (mu + sigma * std.g1).to_bits());
            prop_assert_eq!(g.g2.to_bits(), (mu + sigma * std.g2).to_bits());
        }

        #[test]
        fn uniform_rv_in_half_open_range(seed in any::<u64>(), a in -100.0..100.0f64, w in 0.001..50.0f64) {
            let (x, _) = uniform_rv(a, a + w, &BitStream::from_seed(seed), 52).unwrap();
            prop_assert!(x >= a && x < a + w);
        }
    }
}
