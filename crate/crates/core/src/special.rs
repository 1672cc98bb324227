//! Standard normal density, upper-tail probability `Q` and `erfc`.
//!
//! `Q(x)` is the integral of the density from `x` upward, evaluated by
//! adaptive Gauss-Kronrod quadrature over a finite window. `erfc` is defined
//! from `Q` rather than computed separately, so the two always agree.

use std::collections::BinaryHeap;
use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `1 / sqrt(2 pi)`.
pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Width of the integration window above `x`. The density beyond 40
/// is below 1e-348, i.e. zero in f64.
pub const TAIL_WINDOW: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tolerance: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tolerance: 1e-13,
            max_depth: 60,
        }
    }
}

/// Standard normal density.
pub fn phi(t: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * t * t).exp()
}

// 15-point Kronrod nodes on [-1, 1] (non-negative half) and weights; the
// odd-indexed nodes are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Kronrod estimate and `|Kronrod - Gauss|` on `[a, b]`.
fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Cap on the number of subintervals kept by [`integrate`].
const MAX_SUBINTERVALS: usize = 4096;

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error).is_eq()
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss-Kronrod (7/15) integral of `f` over `[a, b]`.
///
/// The subinterval with the largest error estimate is bisected until the
/// summed estimate is within `abs_tolerance`. Fails with
/// [`Error::Convergence`] (carrying the best estimate) once a piece would
/// exceed `max_depth` bisections or the subinterval cap is hit.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(cfg.abs_tolerance > 0.0) {
        return Err(Error::domain("abs_tolerance", cfg.abs_tolerance, "must be > 0"));
    }
    if a == b {
        return Ok(0.0);
    }
    let (value, error) = gauss_kronrod(&f, a, b);
    let mut heap = BinaryHeap::from([Piece {
        a,
        b,
        value,
        error,
        depth: 0,
    }]);
    let totals = |heap: &BinaryHeap<Piece>| heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    loop {
        let (value, error) = totals(&heap);
        if error <= cfg.abs_tolerance {
            return Ok(value);
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if worst.depth >= cfg.max_depth || heap.len() + 2 > MAX_SUBINTERVALS || mid <= worst.a || mid >= worst.b {
            return Err(Error::Convergence {
                a,
                b,
                estimate: value,
                error,
            });
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gauss_kronrod(&f, lo, hi);
            heap.push(Piece {
                a: lo,
                b: hi,
                value,
                error,
                depth: worst.depth + 1,
            });
        }
    }
}

/// `integral_a^b phi(t) dt`.
pub fn q_from_quadrature(a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(a <= b) {
        return Err(Error::domain("a", a, "must be <= b"));
    }
    integrate(phi, a, b, cfg)
}

/// Lower bound on `Q(x)` for `x >= 0`: `phi(x) (sqrt(4 + x^2) - x) / 2`.
fn tail_lower_bound(x: f64) -> f64 {
    phi(x) * 2.0 / ((4.0 + x * x).sqrt() + x)
}

/// `P(Z > x)` for a standard normal `Z`.
///
/// For `x >= 0` integrates the density over `[x, x + 40]`; what lies above
/// the window is under `phi(40) / 40`, far below the smallest f64. Negative
/// arguments use `Q(x) = 1 - Q(-x)`. The tolerance
/// is tightened in the upper tail so the result stays accurate relative to
/// `Q(x)` itself until `Q` reaches the subnormal range near `x = 37.5`.
pub fn q_function(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 0.0;
    }
    if x == f64::NEG_INFINITY {
        return 1.0;
    }
    // Left half by reflection: integrating up from a negative x would cancel
    // against 1 and lose the last few ulps near Q = 1.
    if x < 0.0 {
        return 1.0 - q_function(-x);
    }
    let cfg = QuadratureConfig {
        abs_tolerance: (1e-14 * tail_lower_bound(x).min(1.0)).max(1e-320),
        max_depth: 60,
    };
    match q_from_quadrature(x, x + TAIL_WINDOW, &cfg) {
        Ok(q) => q,
        Err(Error::Convergence { estimate, .. }) => estimate,
        Err(e) => unreachable!("finite window is always valid: {e}"),
    }
}

/// Standard normal CDF, `1 - Q(x)`.
pub fn normal_cdf(x: f64) -> f64 {
    1.0 - q_function(x)
}

/// `erfc(x) = 2 Q(sqrt(2) x)`.
pub fn erfc(x: f64) -> f64 {
    2.0 * q_function(SQRT_2 * x)
}

/// `P(X > z)` for `X ~ N(mu, sigma^2)`.
pub fn gaussian_upper_tail(z: f64, mu: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::domain("sigma", sigma, "must be > 0"));
    }
    Ok(q_function((z - mu) / sigma))
}
