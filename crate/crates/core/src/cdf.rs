//! Empirical joint and marginal CDFs over a finite set of sample pairs.
//!
//! Every probability here is `count / N` with the count taken exactly and the
//! division done once, so identities that hold between events (bounds,
//! monotonicity, the rectangle inclusion-exclusion rule) hold exactly on the
//! integer counts. Half-open conventions follow the event definitions:
//! CDFs use `x <= t`, rectangles are `(a, b] x (c, d]`.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::rv::RvPairSpec;

/// A non-empty list of finite `(x1, x2)` pairs, with optional provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePairs {
    pairs: Vec<(f64, f64)>,
    spec: Option<RvPairSpec>,
    seed: Option<u64>,
}

impl SamplePairs {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptySamples);
        }
        if let Some(row) = pairs.iter().position(|(x1, x2)| !x1.is_finite() || !x2.is_finite()) {
            return Err(Error::NonFinite { row });
        }
        Ok(Self {
            pairs,
            spec: None,
            seed: None,
        })
    }

    pub fn with_provenance(pairs: Vec<(f64, f64)>, spec: RvPairSpec, seed: u64) -> Result<Self> {
        let mut s = Self::new(pairs)?;
        s.spec = Some(spec);
        s.seed = Some(seed);
        Ok(s)
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn spec(&self) -> Option<&RvPairSpec> {
        self.spec.as_ref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn x1s(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn x2s(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    /// Coordinate-wise maxima.
    pub fn max(&self) -> (f64, f64) {
        self.pairs
            .iter()
            .fold((f64::MIN, f64::MIN), |(m1, m2), &(a, b)| (m1.max(a), m2.max(b)))
    }

    /// Coordinate-wise minima.
    pub fn min(&self) -> (f64, f64) {
        self.pairs
            .iter()
            .fold((f64::MAX, f64::MAX), |(m1, m2), &(a, b)| (m1.min(a), m2.min(b)))
    }

    pub fn means(&self) -> (f64, f64) {
        let n = self.len() as f64;
        let (s1, s2) = self.pairs.iter().fold((0.0, 0.0), |(s1, s2), &(a, b)| (s1 + a, s2 + b));
        (s1 / n, s2 / n)
    }

    /// Pearson correlation of the two coordinates. NaN if either is constant.
    pub fn pearson(&self) -> f64 {
        let (m1, m2) = self.means();
        let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
        for &(a, b) in &self.pairs {
            let (da, db) = (a - m1, b - m2);
            sxy += da * db;
            sxx += da * da;
            syy += db * db;
        }
        sxy / (sxx * syy).sqrt()
    }

    fn frac(&self, count: usize) -> f64 {
        count as f64 / self.len() as f64
    }

    pub fn joint_count(&self, x1: f64, x2: f64) -> usize {
        self.pairs.iter().filter(|&&(a, b)| a <= x1 && b <= x2).count()
    }

    pub fn marginal_count_x1(&self, x1: f64) -> usize {
        self.pairs.iter().filter(|p| p.0 <= x1).count()
    }

    pub fn marginal_count_x2(&self, x2: f64) -> usize {
        self.pairs.iter().filter(|p| p.1 <= x2).count()
    }

    /// `P(X1 <= x1, X2 <= x2)`.
    pub fn joint_cdf(&self, x1: f64, x2: f64) -> f64 {
        self.frac(self.joint_count(x1, x2))
    }

    /// `P(X1 <= x1)`. The unbounded second coordinate is simply dropped: on a
    /// finite sample the joint CDF is constant once its cutoff passes the
    /// largest `x2`.
    pub fn marginal_cdf_x1(&self, x1: f64) -> f64 {
        self.frac(self.marginal_count_x1(x1))
    }

    pub fn marginal_cdf_x2(&self, x2: f64) -> f64 {
        self.frac(self.marginal_count_x2(x2))
    }

    /// Number of samples in `(a, b] x (c, d]`, counted directly.
    pub fn interval_count(&self, rect: Rect) -> usize {
        let Rect { a, b, c, d } = rect;
        self.pairs
            .iter()
            .filter(|&&(x1, x2)| a < x1 && x1 <= b && c < x2 && x2 <= d)
            .count()
    }

    /// Same count by inclusion-exclusion over four joint-CDF corners:
    /// `F(b,d) - F(b,c) - F(a,d) + F(a,c)`.
    pub fn interval_count_via_cdf(&self, rect: Rect) -> usize {
        let Rect { a, b, c, d } = rect;
        let total = self.joint_count(b, d) as i64 - self.joint_count(b, c) as i64 - self.joint_count(a, d) as i64
            + self.joint_count(a, c) as i64;
        usize::try_from(total).expect("inclusion-exclusion count is non-negative")
    }

    pub fn interval_prob(&self, a: f64, b: f64, c: f64, d: f64) -> Result<f64> {
        Ok(self.frac(self.interval_count(Rect::new(a, b, c, d)?)))
    }

    pub fn interval_via_cdf(&self, a: f64, b: f64, c: f64, d: f64) -> Result<f64> {
        Ok(self.frac(self.interval_count_via_cdf(Rect::new(a, b, c, d)?)))
    }

    /// Largest `|F(x1, x2) - F1(x1) F2(x2)|` over `grid`.
    pub fn independence_check(&self, grid: &[(f64, f64)], tolerance: f64) -> Result<IndependenceReport> {
        if grid.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if !(tolerance > 0.0) {
            return Err(Error::domain("tolerance", tolerance, "must be > 0"));
        }
        let (worst_point, max_abs_deviation) = grid
            .iter()
            .map(|&(x1, x2)| {
                let joint = self.joint_cdf(x1, x2);
                let product = self.marginal_cdf_x1(x1) * self.marginal_cdf_x2(x2);
                ((x1, x2), (joint - product).abs())
            })
            .fold(
                ((f64::NAN, f64::NAN), -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        Ok(IndependenceReport {
            grid: grid.to_vec(),
            worst_point,
            max_abs_deviation,
            tolerance,
            passed: max_abs_deviation <= tolerance,
        })
    }

    /// Cross product of per-coordinate empirical quantiles at `levels`.
    pub fn quantile_grid(&self, levels: &[f64]) -> Vec<(f64, f64)> {
        let q1 = empirical_quantiles(self.x1s(), levels);
        let q2 = empirical_quantiles(self.x2s(), levels);
        q1.iter().flat_map(|&a| q2.iter().map(move |&b| (a, b))).collect()
    }

    /// CSV with header `x1,x2`. Floats use the shortest text that parses back
    /// to the same value.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["x1", "x2"])?;
        for pair in &self.pairs {
            w.serialize(pair)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let headers = r.headers()?;
        if headers != vec!["x1", "x2"] {
            return Err(Error::Usage(format!(
                "expected CSV header `x1,x2`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let pairs = r.deserialize().collect::<std::result::Result<Vec<(f64, f64)>, _>>()?;
        Self::new(pairs)
    }
}

/// Half-open rectangle `(a, b] x (c, d]` with `a < b`, `c < d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Rect {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::domain("a", a, "lower x1 bound must be below b"));
        }
        if !(c < d) {
            return Err(Error::domain("c", c, "lower x2 bound must be below d"));
        }
        Ok(Self { a, b, c, d })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndependenceReport {
    pub grid: Vec<(f64, f64)>,
    pub worst_point: (f64, f64),
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Lower empirical quantile: the `ceil(p * n)`-th smallest value.
pub fn empirical_quantiles(mut values: Vec<f64>, levels: &[f64]) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    levels
        .iter()
        .map(|&p| {
            let rank = ((p * n as f64).ceil() as usize).clamp(1, n);
            values[rank - 1]
        })
        .collect()
}

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of
/// `values` and `reference`.
///
/// `reference` must be a proper CDF: it is checked to tend to 0 and 1 at
/// the infinities and to be non-decreasing within [0, 1] at the sample points.
pub fn ks_statistic<F: Fn(f64) -> f64>(values: &[f64], reference: F) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySamples);
    }
    if let Some(row) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { row });
    }
    const LIMIT_TOL: f64 = 1e-9;
    let lo = reference(f64::NEG_INFINITY);
    let hi = reference(f64::INFINITY);
    if !(lo.abs() <= LIMIT_TOL && (hi - 1.0).abs() <= LIMIT_TOL) {
        return Err(Error::Reference(format!(
            "limits at -inf/+inf are {lo}/{hi}, expected 0/1"
        )));
    }

    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut prev = 0.0;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = reference(x);
        if !(0.0..=1.0).contains(&f) || f < prev {
            return Err(Error::Reference(format!(
                "value {f} at x = {x} breaks monotonicity or [0, 1]"
            )));
        }
        prev = f;
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// Asymptotic p-value of a KS distance `d` over `n` samples, with Stephens'
/// small-sample correction.
pub fn ks_p_value(d: f64, n: usize) -> f64 {
    let sqrt_n = (n as f64).sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=200 {
        let k = f64::from(k);
        let term = sign * (-2.0 * k * k * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 * sum.abs() {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub p_value: f64,
}

impl KsOutcome {
    /// Not rejected at level `alpha`.
    pub fn passes(&self, alpha: f64) -> bool {
        self.p_value >= alpha
    }
}

pub fn ks_test<F: Fn(f64) -> f64>(values: &[f64], reference: F) -> Result<KsOutcome> {
    let statistic = ks_statistic(values, reference)?;
    Ok(KsOutcome {
        statistic,
        p_value: ks_p_value(statistic, values.len()),
    })
}
