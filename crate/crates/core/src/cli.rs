//! Command-line front end.
//!
//! `softerr <command> [flags]` with commands `sample`, `cdf-props`, `ser` and
//! `sweep`. Exit status: 0 on success, 1 on a usage or domain error, 2 when a
//! property audit fails.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::audit::{audit_cdf, AuditConfig};
use crate::error::{Error, Result};
use crate::rv::{sample_many_par, PairKind, RvPairSpec};
use crate::ser::{evaluate, ser_sweep, MonteCarlo, SenseAmpParams, SweepAxis};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_AUDIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "softerr",
    version,
    about = "Bit-stream random variables, empirical CDF audits and sense-amplifier soft error rates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw sample pairs and write them as CSV (`x1,x2`).
    Sample {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        dist: DistArgs,
    },
    /// Audit empirical joint-CDF properties of freshly drawn pairs.
    CdfProps {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        dist: DistArgs,
    },
    /// Evaluate one soft error rate (closed form, exact CDF, Monte Carlo) as JSON.
    Ser {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        amp: AmpArgs,
    },
    /// Sweep one parameter and write a CSV table.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        amp: AmpArgs,
        #[arg(long, value_enum)]
        axis: Axis,
        /// Comma-separated axis values.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        values: Vec<f64>,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of samples / Monte Carlo trials (>= 1).
    #[arg(long = "n", default_value_t = 100_000, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Truncation depth of each uniform (>= 1).
    #[arg(long, default_value_t = 52, value_parser = clap::value_parser!(u32).range(1..))]
    bits: u32,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dist {
    StdUniformPair,
    GaussianPair,
}

#[derive(Debug, Args)]
struct DistArgs {
    #[arg(long, value_enum, default_value_t = Dist::StdUniformPair)]
    dist: Dist,
    /// Gaussian mean.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    /// Gaussian standard deviation (> 0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    sigma: f64,
}

#[derive(Debug, Args)]
struct AmpArgs {
    /// JSON file with keys v_low, v_high, noise_sigma, delta, chi. Flags override it.
    #[arg(long)]
    params: Option<PathBuf>,
    /// High level in volts (>= 0). Required without --params.
    #[arg(long, allow_negative_numbers = true)]
    v_high: Option<f64>,
    /// Low level magnitude in volts [default: --v-high].
    #[arg(long, allow_negative_numbers = true)]
    v_low: Option<f64>,
    /// Thermal-noise standard deviation in volts [default: 1].
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<f64>,
    /// Insensitivity width factor in [0, 1] [default: 0].
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Sensitivity centre deviation factor in [0, 1] [default: 0].
    #[arg(long, allow_negative_numbers = true)]
    chi: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axis {
    Delta,
    Chi,
    Snr,
}

impl From<Axis> for SweepAxis {
    fn from(a: Axis) -> Self {
        match a {
            Axis::Delta => SweepAxis::Delta,
            Axis::Chi => SweepAxis::Chi,
            Axis::Snr => SweepAxis::Snr,
        }
    }
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub seed: u64,
    pub n_samples: u32,
    pub truncation_bits: u32,
    pub output_path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandConfig {
    Sample(RvPairSpec),
    CdfProps(RvPairSpec),
    Ser(SenseAmpParams),
    Sweep {
        params: SenseAmpParams,
        axis: SweepAxis,
        values: Vec<f64>,
    },
}

impl DistArgs {
    fn spec(&self, bits: u32) -> Result<RvPairSpec> {
        let kind = match self.dist {
            Dist::StdUniformPair => PairKind::StandardUniform,
            Dist::GaussianPair => PairKind::Gaussian {
                mu: self.mu,
                sigma: self.sigma,
            },
        };
        let spec = RvPairSpec::new(kind).with_bits(bits);
        spec.validate()?;
        Ok(spec)
    }
}

impl AmpArgs {
    fn params(&self) -> Result<SenseAmpParams> {
        let base = match &self.params {
            Some(path) => Some(SenseAmpParams::from_json(File::open(path)?)?),
            None => None,
        };
        let v_high = match (self.v_high, base) {
            (Some(v), _) => v,
            (None, Some(b)) => b.v_high,
            (None, None) => return Err(Error::Usage("--v-high is required unless --params is given".into())),
        };
        let pick = |flag: Option<f64>, from_file: Option<f64>, default: f64| flag.or(from_file).unwrap_or(default);
        SenseAmpParams::new(
            pick(self.v_low, base.map(|b| b.v_low), v_high),
            v_high,
            pick(self.sigma, base.map(|b| b.noise_sigma), 1.0),
            pick(self.delta, base.map(|b| b.delta), 0.0),
            pick(self.chi, base.map(|b| b.chi), 0.0),
        )
    }
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self> {
        let (run, command) = match cli.command {
            Command::Sample { run, dist } => {
                let spec = dist.spec(run.bits)?;
                (run, CommandConfig::Sample(spec))
            }
            Command::CdfProps { run, dist } => {
                let spec = dist.spec(run.bits)?;
                (run, CommandConfig::CdfProps(spec))
            }
            Command::Ser { run, amp } => {
                let params = amp.params()?;
                (run, CommandConfig::Ser(params))
            }
            Command::Sweep { run, amp, axis, values } => {
                let params = amp.params()?;
                (
                    run,
                    CommandConfig::Sweep {
                        params,
                        axis: axis.into(),
                        values,
                    },
                )
            }
        };
        Ok(RunConfig {
            command,
            seed: run.seed,
            n_samples: run.n,
            truncation_bits: run.bits,
            output_path: run.out,
        })
    }

    fn monte_carlo(&self) -> MonteCarlo {
        MonteCarlo::new(u64::from(self.n_samples), self.seed)
            .bits(self.truncation_bits)
            .parallel(true)
    }
}

/// What a command produced: the artifact text and whether an audit passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: Vec<u8>,
    pub audit_passed: bool,
    /// Non-fatal notes for standard error.
    pub warnings: Vec<String>,
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let mut output = Vec::new();
    let mut audit_passed = true;
    let mut warnings = Vec::new();
    let count = cfg.n_samples as usize;
    match &cfg.command {
        CommandConfig::Sample(spec) => {
            sample_many_par(spec, count, cfg.seed)?.write_csv(&mut output)?;
        }
        CommandConfig::CdfProps(spec) => {
            let samples = sample_many_par(spec, count, cfg.seed)?;
            let report = audit_cdf(&samples, &AuditConfig::new(cfg.seed))?;
            audit_passed = report.passed();
            write!(output, "{report}")?;
        }
        CommandConfig::Ser(params) => {
            let result = evaluate(params, &cfg.monte_carlo())?;
            serde_json::to_writer_pretty(&mut output, &result)?;
            output.push(b'\n');
        }
        CommandConfig::Sweep { params, axis, values } => {
            let sweep = ser_sweep(params, *axis, values, &cfg.monte_carlo())?;
            sweep.write_csv(&mut output)?;
            warnings = sweep.warnings;
        }
    }
    Ok(Outcome {
        output,
        audit_passed,
        warnings,
    })
}

/// Parses `argv` (including the program name), runs the command, writes the
/// artifact to `--out` or `stdout`, and returns the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        let outcome = execute(&cfg)?;
        match &cfg.output_path {
            Some(path) => {
                let mut f = BufWriter::new(File::create(path)?);
                f.write_all(&outcome.output)?;
                f.flush()?;
            }
            None => stdout.write_all(&outcome.output)?,
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            for w in &outcome.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            if outcome.audit_passed {
                EXIT_OK
            } else {
                EXIT_AUDIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}
