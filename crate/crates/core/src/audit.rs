//! Property audit of an empirical joint CDF.
//!
//! Runs the structural CDF properties (bounds, monotonicity, attained limits,
//! event containment, the rectangle inclusion-exclusion identity) as exact
//! integer-count checks over randomly drawn queries, plus a statistical
//! independence check on a quantile grid.

use std::fmt;

use crate::bitstream::BitStream;
use crate::cdf::{Rect, SamplePairs};
use crate::error::Result;
use crate::rv::std_unif_cont;

/// Quantile levels of the 5 x 5 independence grid.
pub const INDEPENDENCE_LEVELS: [f64; 5] = [1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0, 4.0 / 6.0, 5.0 / 6.0];
pub const INDEPENDENCE_TOLERANCE: f64 = 0.01;

const QUERY_SALT: u64 = 0x6364_665f_7072_6f70;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    pub seed: u64,
    pub point_queries: usize,
    pub monotone_queries: usize,
    pub rectangles: usize,
    pub independence_tolerance: f64,
}

impl AuditConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            point_queries: 500,
            monotone_queries: 500,
            rectangles: 1000,
            independence_tolerance: INDEPENDENCE_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {:<22} {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Uniform query coordinates spanning the sample range plus a margin on
/// each side, so queries also land outside the data.
struct QuerySource {
    lo: (f64, f64),
    width: (f64, f64),
    seed: u64,
    next: u64,
}

impl QuerySource {
    fn new(samples: &SamplePairs, seed: u64) -> Self {
        let (min, max) = (samples.min(), samples.max());
        let pad = |lo: f64, hi: f64| ((hi - lo) * 0.1).max(1.0);
        let (p1, p2) = (pad(min.0, max.0), pad(min.1, max.1));
        Self {
            lo: (min.0 - p1, min.1 - p2),
            width: (max.0 - min.0 + 2.0 * p1, max.1 - min.1 + 2.0 * p2),
            seed: seed ^ QUERY_SALT,
            next: 0,
        }
    }

    fn unit(&mut self) -> f64 {
        let u = std_unif_cont(&BitStream::derive(self.seed, self.next), 52).value;
        self.next += 1;
        u
    }

    fn x1(&mut self) -> f64 {
        self.lo.0 + self.width.0 * self.unit()
    }

    fn x2(&mut self) -> f64 {
        self.lo.1 + self.width.1 * self.unit()
    }

    fn ordered(&mut self, draw: fn(&mut Self) -> f64) -> (f64, f64) {
        loop {
            let (a, b) = (draw(self), draw(self));
            if a != b {
                return if a < b { (a, b) } else { (b, a) };
            }
        }
    }
}

pub fn audit_cdf(samples: &SamplePairs, cfg: &AuditConfig) -> Result<AuditReport> {
    let n = samples.len();
    let mut q = QuerySource::new(samples, cfg.seed);
    let mut checks = Vec::new();

    let mut out_of_range = 0;
    let mut containment = 0;
    for _ in 0..cfg.point_queries {
        let (x1, x2) = (q.x1(), q.x2());
        let joint = samples.joint_count(x1, x2);
        if joint > n {
            out_of_range += 1;
        }
        if joint > samples.marginal_count_x1(x1).min(samples.marginal_count_x2(x2)) {
            containment += 1;
        }
    }
    checks.push(Check {
        name: "bounds",
        passed: out_of_range == 0,
        detail: format!("{out_of_range} of {} queries outside [0, 1]", cfg.point_queries),
    });

    let mut non_monotone = 0;
    for _ in 0..cfg.monotone_queries {
        let (a, b) = q.ordered(QuerySource::x1);
        let (c, d) = q.ordered(QuerySource::x2);
        let (fac, fbc, fbd) = (
            samples.joint_count(a, c),
            samples.joint_count(b, c),
            samples.joint_count(b, d),
        );
        if !(fac <= fbc && fbc <= fbd) {
            non_monotone += 1;
        }
    }
    checks.push(Check {
        name: "monotone",
        passed: non_monotone == 0,
        detail: format!("{non_monotone} of {} quadruples decreasing", cfg.monotone_queries),
    });

    let (min, max) = (samples.min(), samples.max());
    let top = samples.joint_count(max.0, max.1);
    checks.push(Check {
        name: "limit_pos_inf",
        passed: top == n,
        detail: format!("F(max x1, max x2) = {top}/{n}"),
    });
    let below1 = samples.joint_count(min.0.next_down(), max.1);
    let below2 = samples.joint_count(max.0, min.1.next_down());
    checks.push(Check {
        name: "limit_neg_inf",
        passed: below1 == 0 && below2 == 0,
        detail: format!("F(below min x1, .) = {below1}/{n}, F(., below min x2) = {below2}/{n}"),
    });

    checks.push(Check {
        name: "containment",
        passed: containment == 0,
        detail: format!("{containment} of {} queries with F > min(F1, F2)", cfg.point_queries),
    });

    let mut mismatched = 0;
    for _ in 0..cfg.rectangles {
        let (a, b) = q.ordered(QuerySource::x1);
        let (c, d) = q.ordered(QuerySource::x2);
        let rect = Rect::new(a, b, c, d)?;
        if samples.interval_count(rect) != samples.interval_count_via_cdf(rect) {
            mismatched += 1;
        }
    }
    checks.push(Check {
        name: "interval_identity",
        passed: mismatched == 0,
        detail: format!("{mismatched} of {} rectangles differ", cfg.rectangles),
    });

    let grid = samples.quantile_grid(&INDEPENDENCE_LEVELS);
    let report = samples.independence_check(&grid, cfg.independence_tolerance)?;
    checks.push(Check {
        name: "independence",
        passed: report.passed,
        detail: format!(
            "max |F - F1 F2| = {:.6} over {} grid points (tolerance {})",
            report.max_abs_deviation,
            grid.len(),
            report.tolerance
        ),
    });

    Ok(AuditReport { checks })
}
