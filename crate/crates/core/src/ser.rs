//! Soft error rate of a non-ideal DRAM sense amplifier under thermal noise.
//!
//! The two bit lines carry `V1 ~ N(-v_low, sigma^2)` and
//! `V2 ~ N(v_high, sigma^2)`. The amplifier has an insensitive band of width
//! `v_w = delta * v_high` centred at `v_d = chi * v_high`. A stored low level
//! reads as high when `v_d - v_w/2 < V1`; a stored high reads as low when
//! `V2 <= v_d + v_w/2`. With both stored values equally likely the error
//! rate is the mean of the two.
//!
//! Three evaluations are provided and cross-checked against each other:
//! the event probabilities through the Gaussian tail ([`ser_probabilistic`]),
//! the closed `erfc` form for equal levels ([`ser_analytical`]), and a Monte
//! Carlo count over Box-Muller pairs ([`ser_monte_carlo`]).

use std::f64::consts::SQRT_2;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitstream::BitStream;
use crate::error::{Error, Result};
use crate::rv::{std_gaussian_pair, DEFAULT_DEPTH};
use crate::special::{erfc, gaussian_upper_tail};

/// Below this analytical SER a Monte Carlo run at desk scale sees no events,
/// so validation is skipped.
pub const DEEP_TAIL: f64 = 1e-12;

/// Sense-amplifier model parameters. Voltages in volts, `delta` and `chi`
/// unitless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SenseAmpParams {
    /// Magnitude of the low level; bit line 1 is centred at `-v_low`.
    pub v_low: f64,
    pub v_high: f64,
    /// Thermal-noise standard deviation on each line.
    pub noise_sigma: f64,
    /// Insensitivity width as a fraction of `v_high`.
    pub delta: f64,
    /// Offset of the decision centre as a fraction of `v_high`.
    pub chi: f64,
}

impl SenseAmpParams {
    pub fn new(v_low: f64, v_high: f64, noise_sigma: f64, delta: f64, chi: f64) -> Result<Self> {
        let p = Self {
            v_low,
            v_high,
            noise_sigma,
            delta,
            chi,
        };
        p.validate()?;
        Ok(p)
    }

    /// Equal levels `v` on both lines.
    pub fn symmetric(v: f64, noise_sigma: f64, delta: f64, chi: f64) -> Result<Self> {
        Self::new(v, v, noise_sigma, delta, chi)
    }

    pub fn validate(&self) -> Result<()> {
        // Zero levels are accepted: they are the coin-flip limit of the model.
        for (name, v) in [("v_low", self.v_low), ("v_high", self.v_high)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::domain(name, v, "must be finite and >= 0"));
            }
        }
        if !(self.noise_sigma > 0.0) || !self.noise_sigma.is_finite() {
            return Err(Error::domain("noise_sigma", self.noise_sigma, "must be finite and > 0"));
        }
        for (name, v) in [("delta", self.delta), ("chi", self.chi)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::domain(name, v, "must lie in [0, 1]"));
            }
        }
        Ok(())
    }

    pub fn from_json<R: Read>(reader: R) -> Result<Self> {
        let p: Self = serde_json::from_reader(reader)?;
        p.validate()?;
        Ok(p)
    }

    /// Insensitivity width `delta * v_high`.
    pub fn v_w(&self) -> f64 {
        self.delta * self.v_high
    }

    /// Sensitivity centre deviation `chi * v_high`.
    pub fn v_d(&self) -> f64 {
        self.chi * self.v_high
    }

    pub fn is_symmetric(&self) -> bool {
        self.v_low == self.v_high
    }

    /// Lower edge of the decision band; line 1 above it reads as high.
    fn low_threshold(&self) -> f64 {
        self.v_d() - self.v_w() / 2.0
    }

    /// Upper edge of the decision band; line 2 at or below it reads as low.
    fn high_threshold(&self) -> f64 {
        self.v_d() + self.v_w() / 2.0
    }
}

/// `(P(low read as high), P(high read as low))` from the Gaussian tail.
pub fn detection_error_probs(params: &SenseAmpParams) -> Result<(f64, f64)> {
    params.validate()?;
    let sigma = params.noise_sigma;
    let low_as_high = gaussian_upper_tail(params.low_threshold(), -params.v_low, sigma)?;
    // `1 - Q((t - v_high) / sigma)` taken as the lower tail `Q((v_high - t) / sigma)`,
    // which keeps relative accuracy when the probability is tiny.
    let high_as_low = gaussian_upper_tail(params.v_high, params.high_threshold(), sigma)?;
    Ok((low_as_high, high_as_low))
}

/// Mean of the two detection-error probabilities.
pub fn ser_probabilistic(params: &SenseAmpParams) -> Result<f64> {
    let (p1, p2) = detection_error_probs(params)?;
    Ok(0.5 * (p1 + p2))
}

/// `erfc(level / (sqrt(2) sigma) * (1 - delta/2 + signed_chi)) / 4`.
fn quarter_erfc(level: f64, sigma: f64, delta: f64, signed_chi: f64) -> f64 {
    0.25 * erfc(level / (SQRT_2 * sigma) * (1.0 - delta / 2.0 + signed_chi))
}

/// The two `erfc` terms of the closed form, in order (`+chi`, `-chi`).
pub fn analytical_terms(params: &SenseAmpParams) -> Result<(f64, f64)> {
    params.validate()?;
    if !params.is_symmetric() {
        return Err(Error::Asymmetric {
            v_low: params.v_low,
            v_high: params.v_high,
        });
    }
    let SenseAmpParams {
        v_low,
        v_high,
        noise_sigma,
        delta,
        chi,
    } = *params;
    Ok((
        quarter_erfc(v_high, noise_sigma, delta, chi),
        quarter_erfc(v_low, noise_sigma, delta, -chi),
    ))
}

/// Closed form
/// `erfc(V_H/(sqrt2 s) (1 - d/2 + x))/4 + erfc(V_L/(sqrt2 s) (1 - d/2 - x))/4`.
///
/// Only valid for equal levels; asymmetric parameters are rejected and
/// should go through [`ser_probabilistic`].
pub fn ser_analytical(params: &SenseAmpParams) -> Result<f64> {
    let (t1, t2) = analytical_terms(params)?;
    Ok(t1 + t2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub n_samples: u64,
}

/// Monte Carlo driver settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarlo {
    pub n_samples: u64,
    pub seed: u64,
    pub truncation_bits: u32,
    /// Spread trials over the rayon pool. Results are identical either way.
    pub parallel: bool,
}

impl MonteCarlo {
    pub fn new(n_samples: u64, seed: u64) -> Self {
        Self {
            n_samples,
            seed,
            truncation_bits: DEFAULT_DEPTH,
            parallel: false,
        }
    }

    pub fn bits(mut self, truncation_bits: u32) -> Self {
        self.truncation_bits = truncation_bits;
        self
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::domain("n_samples", 0.0, "must be >= 1"));
        }
        if self.truncation_bits == 0 {
            return Err(Error::domain("truncation_bits", 0.0, "must be >= 1"));
        }
        Ok(())
    }

    /// Trial `i` draws one Gaussian pair from `BitStream::derive(seed, i)`:
    /// the first component drives line 1, the second line 2.
    pub fn estimate(&self, params: &SenseAmpParams) -> Result<McEstimate> {
        params.validate()?;
        self.validate()?;
        let sigma = params.noise_sigma;
        let (lo_t, hi_t) = (params.low_threshold(), params.high_threshold());
        let trial = |i: u64| -> (u64, u64) {
            let g = std_gaussian_pair(&BitStream::derive(self.seed, i), self.truncation_bits);
            let v1 = -params.v_low + sigma * g.g1;
            let v2 = params.v_high + sigma * g.g2;
            (u64::from(lo_t < v1), u64::from(v2 <= hi_t))
        };
        let add = |a: (u64, u64), b: (u64, u64)| (a.0 + b.0, a.1 + b.1);
        let (c1, c2) = if self.parallel {
            (0..self.n_samples).into_par_iter().map(trial).reduce(|| (0, 0), add)
        } else {
            (0..self.n_samples).map(trial).fold((0, 0), add)
        };
        let n = self.n_samples as f64;
        let p = 0.5 * (c1 + c2) as f64 / n;
        Ok(McEstimate {
            estimate: p,
            stderr: (p * (1.0 - p) / n).sqrt(),
            n_samples: self.n_samples,
        })
    }
}

/// Sequential Monte Carlo estimate at the default truncation depth.
pub fn ser_monte_carlo(params: &SenseAmpParams, n_samples: u64, seed: u64) -> Result<McEstimate> {
    MonteCarlo::new(n_samples, seed).estimate(params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validation {
    MonteCarlo,
    /// SER below [`DEEP_TAIL`]; no Monte Carlo run.
    AnalyticalOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SerResult {
    /// Closed form; `None` when the levels differ.
    pub analytical: Option<f64>,
    pub exact_cdf: f64,
    pub monte_carlo: Option<f64>,
    pub mc_stderr: Option<f64>,
    pub n_samples: u64,
    pub seed: u64,
    pub validation: Validation,
}

impl SerResult {
    /// Closed form when available, otherwise the exact-CDF value.
    pub fn reference(&self) -> f64 {
        self.analytical.unwrap_or(self.exact_cdf)
    }

    /// `|monte_carlo - reference| / stderr`, when a Monte Carlo value exists.
    pub fn z_score(&self) -> Option<f64> {
        let (mc, se) = (self.monte_carlo?, self.mc_stderr?);
        let diff = (mc - self.reference()).abs();
        Some(if se > 0.0 {
            diff / se
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        })
    }
}

/// All three evaluations for one parameter set.
pub fn evaluate(params: &SenseAmpParams, mc: &MonteCarlo) -> Result<SerResult> {
    params.validate()?;
    mc.validate()?;
    let analytical = if params.is_symmetric() {
        Some(ser_analytical(params)?)
    } else {
        None
    };
    let exact_cdf = ser_probabilistic(params)?;
    let reference = analytical.unwrap_or(exact_cdf);
    let (monte_carlo, mc_stderr, validation) = if reference < DEEP_TAIL {
        (None, None, Validation::AnalyticalOnly)
    } else {
        let est = mc.estimate(params)?;
        (Some(est.estimate), Some(est.stderr), Validation::MonteCarlo)
    };
    Ok(SerResult {
        analytical,
        exact_cdf,
        monte_carlo,
        mc_stderr,
        n_samples: mc.n_samples,
        seed: mc.seed,
        validation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Delta,
    Chi,
    /// `v / noise_sigma`; sets both levels at fixed sigma.
    Snr,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Delta => "delta",
            SweepAxis::Chi => "chi",
            SweepAxis::Snr => "snr",
        }
    }

    pub fn apply(self, base: &SenseAmpParams, value: f64) -> Result<SenseAmpParams> {
        let mut p = *base;
        match self {
            SweepAxis::Delta => p.delta = value,
            SweepAxis::Chi => p.chi = value,
            SweepAxis::Snr => {
                if !(value >= 0.0) || !value.is_finite() {
                    return Err(Error::domain("snr", value, "must be finite and >= 0"));
                }
                p.v_high = value * p.noise_sigma;
                p.v_low = p.v_high;
            }
        }
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub axis_value: f64,
    pub result: SerResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
    /// Rows where `1 - delta/2 - chi < 0`: the second closed-form term then
    /// shrinks as the signal grows, so SER need not fall with SNR.
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct CsvRow {
    axis_value: f64,
    analytical: Option<f64>,
    exact_cdf: f64,
    monte_carlo: Option<f64>,
    mc_stderr: Option<f64>,
    n_samples: u64,
}

impl Sweep {
    /// CSV with header `axis_value,analytical,exact_cdf,monte_carlo,mc_stderr,n_samples`.
    /// Missing values are empty cells.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for row in &self.rows {
            let r = &row.result;
            w.serialize(CsvRow {
                axis_value: row.axis_value,
                analytical: r.analytical,
                exact_cdf: r.exact_cdf,
                monte_carlo: r.monte_carlo,
                mc_stderr: r.mc_stderr,
                n_samples: r.n_samples,
            })?;
        }
        if self.rows.is_empty() {
            w.write_record([
                "axis_value",
                "analytical",
                "exact_cdf",
                "monte_carlo",
                "mc_stderr",
                "n_samples",
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// One [`SerResult`] per value, in input order. Every value is checked before
/// any evaluation, so an invalid value yields an error and no rows.
pub fn ser_sweep(base: &SenseAmpParams, axis: SweepAxis, values: &[f64], mc: &MonteCarlo) -> Result<Sweep> {
    let points = values
        .iter()
        .map(|&value| {
            axis.apply(base, value).map(|p| (value, p)).map_err(|e| Error::Sweep {
                axis: axis.name(),
                value,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut warnings = Vec::new();
    let mut rows = Vec::with_capacity(points.len());
    for (value, p) in points {
        if 1.0 - p.delta / 2.0 - p.chi < 0.0 {
            warnings.push(format!(
                "{} = {value}: 1 - delta/2 - chi = {} < 0, SER is not monotone in SNR here",
                axis.name(),
                1.0 - p.delta / 2.0 - p.chi
            ));
        }
        rows.push(SweepRow {
            axis_value: value,
            result: evaluate(&p, mc)?,
        });
    }
    Ok(Sweep { axis, rows, warnings })
}

/// Equal-level grid: `delta, chi` in `{0, 0.1, ..., 1}`, `v / sigma` in
/// `{0.5, 1, 2, 3, 5}`, `sigma = 1`. 605 points.
pub fn symmetric_grid() -> Vec<SenseAmpParams> {
    let steps = || (0..=10).map(|i| f64::from(i) / 10.0);
    let mut grid = Vec::new();
    for snr in [0.5, 1.0, 2.0, 3.0, 5.0] {
        for delta in steps() {
            for chi in steps() {
                grid.push(SenseAmpParams::symmetric(snr, 1.0, delta, chi).expect("grid point is valid"));
            }
        }
    }
    grid
}
