//! Adaptive Gauss–Kronrod quadrature and the integral form of the Kingman
//! identity.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};

// 15-point Kronrod abscissae (nonnegative half) and weights; the odd
// entries are the 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
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
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

pub const DEFAULT_MAX_INTERVALS: usize = 4000;

/// Kronrod estimate and `|K15 − G7|` on `[a, b]`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (idx, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kronrod += w * pair;
        if idx % 2 == 1 {
            gauss += WG[idx / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

/// Integrates `f` over `[a, b]`, bisecting the interval with the largest
/// error estimate until the total estimate drops below `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, max_intervals: usize) -> Result<Quadrature> {
    let (value, error) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let mut total_err = error;
    loop {
        if total_err <= tol {
            break;
        }
        if heap.len() >= max_intervals {
            return Err(Error::QuadratureNonconvergence {
                error: total_err,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("nonempty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval can no longer be split in floating point
            return Err(Error::QuadratureNonconvergence {
                error: total_err,
                intervals: heap.len() + 1,
            });
        }
        let (lv, le) = gk15(&f, worst.a, mid);
        let (rv, re) = gk15(&f, mid, worst.b);
        total_err += le + re - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Piece { a: mid, b: worst.b, value: rv, error: re });
    }
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Quadrature {
        value,
        error,
        intervals: heap.len(),
    })
}

/// `y(v) = v + v²/2 + … + v^l/l`.
fn partial_log(v: f64, l: usize) -> f64 {
    let mut acc = 0.0;
    let mut pw = 1.0;
    for m in 1..=l {
        pw *= v;
        acc += pw / m as f64;
    }
    acc
}

/// `Σ_{m>l} v^m/m`, summed directly to avoid cancellation for small `v`.
fn log_tail(v: f64, l: usize) -> f64 {
    let mut pw = v.powi(l as i32);
    let mut acc = 0.0;
    let mut m = l;
    loop {
        m += 1;
        pw *= v;
        let term = pw / m as f64;
        acc += term;
        if term <= acc * 1e-18 || m > 10_000 {
            return acc;
        }
    }
}

/// Outcome of the integral check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntegralCheck {
    pub value: f64,
    pub target: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

impl IntegralCheck {
    pub fn deviation(&self) -> f64 {
        (self.value - self.target).abs()
    }
}

/// `∫₀¹ (1−v)^{t−1} v^l e^{t·y(v)} [−ln(1−v) − y(v)]^k dv` against `k!/t^{k+1}`.
///
/// Integrated in `u = (1−v)^t`, which absorbs the factor `(1−v)^{t−1}`
/// and leaves only a logarithmic endpoint singularity at `u = 0`.
pub fn integral_check(k: usize, l: usize, t: f64, tol: f64) -> Result<IntegralCheck> {
    if l == 0 {
        return Err(Error::UnsupportedParameter("l = 0 is not covered; need l >= 1".into()));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::DegenerateParameter(format!("t = {t} must be > 0")));
    }
    let integrand = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let ln_u = u.ln();
        // v = 1 − u^{1/t}, −ln(1−v) = −ln(u)/t
        let v = -(ln_u / t).exp_m1();
        let y = partial_log(v, l);
        let gap = if v < 0.5 { log_tail(v, l) } else { -ln_u / t - y };
        let body = v.powi(l as i32) * (t * y).exp();
        let gap_k = gap.powi(k as i32);
        body * gap_k / t
    };
    let q = integrate(integrand, 0.0, 1.0, tol, DEFAULT_MAX_INTERVALS)?;
    let target = (1..=k).map(|x| x as f64).product::<f64>() / t.powi(k as i32 + 1);
    Ok(IntegralCheck {
        value: q.value,
        target,
        error_estimate: q.error,
        intervals: q.intervals,
    })
}
