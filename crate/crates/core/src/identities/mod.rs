//! Box-entry identities: printed summands grouped by level, the generic
//! box-probability machinery they are checked against, and convergence
//! reports.

mod generic;
mod hypergeometric;
mod quadrature;
mod terms;

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::arith::{ExactScalar, GaussianExact};
use crate::error::{Error, Result};
use crate::measures::{CentralMeasure, MeasureSpec};
use crate::partitions::{partitions_with_length, Cell};

pub use generic::{box_probability_term, upper_hook_set};
pub use hypergeometric::{closed_form_261, hook21_parameters, hyp3f2_partial_sum, hyp3f2_terms};
pub use quadrature::{integral_check, integrate, IntegralCheck, Quadrature, DEFAULT_MAX_INTERVALS};
pub use terms::{
    f_k, g_k, kingman_level, plancherel_young_size, special_case_term, term_kingman_t,
    term_plancherel_young, term_theta_plancherel_hook, term_z_measure_hook, SpecialCase,
};

/// One of the summation identities, with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum IdentitySpec {
    /// Plancherel measure on the Young graph, box `(k+1, l+1)`.
    PlancherelYoungBox { k: usize, l: usize },
    /// θ-Plancherel measure, box `(k+1, 1)`.
    ThetaPlancherelHook { k: usize, theta: ExactScalar },
    /// z-measure, box `(k+1, 1)`.
    ZMeasureHook { k: usize, theta: ExactScalar, z: GaussianExact },
    /// Kingman t-measure, box `(k+1, l+1)`.
    KingmanT { k: usize, l: usize, t: ExactScalar },
    /// Listed closed forms for small boxes under the θ-Plancherel measure.
    SpecialCase { case: SpecialCase, theta: ExactScalar },
    /// Plancherel on the Young graph, box `(k+1, 1)`, indexed by strict `p`.
    FkForm { k: usize },
    /// Plancherel on the Young graph, box `(k+1, 1)`, indexed by the hook set.
    GkForm { k: usize },
    /// The generic series `Σ_n P(T(cell) = n)` for any measure and box.
    BoxProbability { measure: MeasureSpec, cell: Cell },
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::DegenerateParameter(msg.to_string()))
    }
}

impl IdentitySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            IdentitySpec::PlancherelYoungBox { k, l } => need(k + l >= 1, "k + l must be at least 1"),
            IdentitySpec::ThetaPlancherelHook { k, theta } => {
                need(*k >= 1, "k must be at least 1")?;
                MeasureSpec::plancherel(theta.clone()).map(|_| ())
            }
            IdentitySpec::ZMeasureHook { k, theta, z } => {
                need(*k >= 1, "k must be at least 1")?;
                MeasureSpec::z_measure(theta.clone(), z.clone()).map(|_| ())
            }
            IdentitySpec::KingmanT { l, t, .. } => {
                if *l == 0 {
                    return Err(Error::UnsupportedParameter("l = 0 is not covered; need l >= 1".into()));
                }
                MeasureSpec::kingman_t(t.clone()).map(|_| ())
            }
            IdentitySpec::SpecialCase { theta, .. } => MeasureSpec::plancherel(theta.clone()).map(|_| ()),
            IdentitySpec::FkForm { k } | IdentitySpec::GkForm { k } => need(*k >= 1, "k must be at least 1"),
            IdentitySpec::BoxProbability { measure, .. } => measure.validate(),
        }
    }

    /// The measure and box whose entry distribution this identity sums.
    pub fn pairing(&self) -> (MeasureSpec, Cell) {
        let one = ExactScalar::one();
        match self {
            IdentitySpec::PlancherelYoungBox { k, l } => (
                MeasureSpec::PlancherelJack { theta: one },
                Cell::new(k + 1, l + 1),
            ),
            IdentitySpec::ThetaPlancherelHook { k, theta } => (
                MeasureSpec::PlancherelJack { theta: theta.clone() },
                Cell::new(k + 1, 1),
            ),
            IdentitySpec::ZMeasureHook { k, theta, z } => (
                MeasureSpec::ZMeasure {
                    theta: theta.clone(),
                    z: z.clone(),
                },
                Cell::new(k + 1, 1),
            ),
            IdentitySpec::KingmanT { k, l, t } => {
                (MeasureSpec::KingmanT { t: t.clone() }, Cell::new(k + 1, l + 1))
            }
            IdentitySpec::SpecialCase { case, theta } => {
                (MeasureSpec::PlancherelJack { theta: theta.clone() }, case.cell())
            }
            IdentitySpec::FkForm { k } | IdentitySpec::GkForm { k } => {
                (MeasureSpec::PlancherelJack { theta: one }, Cell::new(k + 1, 1))
            }
            IdentitySpec::BoxProbability { measure, cell } => (measure.clone(), *cell),
        }
    }

    /// Kebab-case family name, as used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            IdentitySpec::PlancherelYoungBox { .. } => "plancherel-young-box",
            IdentitySpec::ThetaPlancherelHook { .. } => "theta-plancherel-hook",
            IdentitySpec::ZMeasureHook { .. } => "z-measure-hook",
            IdentitySpec::KingmanT { .. } => "kingman-t",
            IdentitySpec::SpecialCase { .. } => "special-case",
            IdentitySpec::FkForm { .. } => "fk-form",
            IdentitySpec::GkForm { .. } => "gk-form",
            IdentitySpec::BoxProbability { .. } => "box-probability",
        }
    }
}

impl fmt::Display for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name();
        match self {
            IdentitySpec::PlancherelYoungBox { k, l } => write!(f, "{name}(k={k}, l={l})"),
            IdentitySpec::ThetaPlancherelHook { k, theta } => write!(f, "{name}(k={k}, theta={theta})"),
            IdentitySpec::ZMeasureHook { k, theta, z } => write!(f, "{name}(k={k}, theta={theta}, z={z})"),
            IdentitySpec::KingmanT { k, l, t } => write!(f, "{name}(k={k}, l={l}, t={t})"),
            IdentitySpec::SpecialCase { case, theta } => write!(f, "{name}(box={case}, theta={theta})"),
            IdentitySpec::FkForm { k } | IdentitySpec::GkForm { k } => write!(f, "{name}(k={k})"),
            IdentitySpec::BoxProbability { measure, cell } => write!(f, "{name}({measure}, box={cell})"),
        }
    }
}

/// Strictly decreasing positive sequences of length `k` summing to `m`.
fn strict_sequences(m: usize, k: usize) -> Vec<Vec<usize>> {
    let base = k * (k + 1) / 2;
    if m < base {
        return Vec::new();
    }
    // subtracting the staircase (k−1, …, 0) leaves a partition with k parts
    partitions_with_length(m - k * k.saturating_sub(1) / 2, k)
        .into_iter()
        .map(|nu| {
            nu.parts()
                .iter()
                .enumerate()
                .map(|(r, &x)| x + (k - 1 - r))
                .collect()
        })
        .collect()
}

/// All nonnegative `k`-tuples (ordered) summing to `m`.
fn compositions(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if m == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if k == 1 {
            prefix.push(m);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for x in 0..=m {
            prefix.push(x);
            rec(m - x, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, &mut Vec::new(), &mut out);
    out
}

/// Nonnegative `r` of length `l` with `Σ j·r_j = m`.
fn weighted_tuples(m: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, j: usize, l: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j > l {
            if m == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for x in 0..=m / j {
            prefix.push(x);
            rec(m - j * x, j + 1, l, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, 1, l, &mut Vec::new(), &mut out);
    out
}

/// Evaluates identities level by level. Holds the paired measure so the
/// generic box probabilities share one set of caches.
pub struct IdentityEvaluator {
    spec: IdentitySpec,
    measure: CentralMeasure,
    cell: Cell,
}

impl IdentityEvaluator {
    pub fn new(spec: IdentitySpec) -> Result<Self> {
        spec.validate()?;
        let (m, cell) = spec.pairing();
        Ok(IdentityEvaluator {
            measure: CentralMeasure::new(m)?,
            spec,
            cell,
        })
    }

    pub fn spec(&self) -> &IdentitySpec {
        &self.spec
    }

    pub fn measure(&self) -> &CentralMeasure {
        &self.measure
    }

    pub fn cell(&self) -> Cell {
        self.cell
    }

    /// Sum of the printed summands whose diagram has `n` boxes.
    pub fn level_mass(&self, n: usize) -> Result<ExactScalar> {
        if n == 0 {
            return Ok(ExactScalar::zero());
        }
        let mut total = ExactScalar::zero();
        match &self.spec {
            IdentitySpec::PlancherelYoungBox { k, l } => {
                let (k, l) = (*k, *l);
                let shift = (k + l) as i64 - (k as i64 - l as i64).pow(2);
                let m = n as i64 - 1 - shift / 2;
                if m < 0 {
                    return Ok(total);
                }
                let m = m as usize;
                for a in 0..=m {
                    let ps = strict_sequences(a, k);
                    if ps.is_empty() {
                        continue;
                    }
                    let qs = strict_sequences(m - a, l);
                    for p in &ps {
                        for q in &qs {
                            total += term_plancherel_young(k, l, p, q)?;
                        }
                    }
                }
            }
            IdentitySpec::ThetaPlancherelHook { k, theta } => {
                for a in partitions_with_length(n - 1, *k) {
                    total += term_theta_plancherel_hook(*k, theta, a.parts())?;
                }
            }
            IdentitySpec::ZMeasureHook { k, theta, z } => {
                for mu in partitions_with_length(n - 1, *k) {
                    total += term_z_measure_hook(*k, theta, z, mu.parts())?;
                }
            }
            IdentitySpec::KingmanT { k, l, t } => {
                let base = k * l + k + l + 1;
                if n < base {
                    return Ok(total);
                }
                let rest = n - base;
                for s_sum in 0..=rest {
                    let rs = weighted_tuples(rest - s_sum, *l);
                    for s in compositions(s_sum, *k) {
                        for r in &rs {
                            total += term_kingman_t(*k, *l, t, r, &s)?;
                        }
                    }
                }
            }
            IdentitySpec::SpecialCase { case, theta } => {
                for idx in case.indices_at_level(n) {
                    total += special_case_term(*case, theta, &idx)?;
                }
            }
            IdentitySpec::FkForm { k } => {
                let m = n - 1 + k * (k - 1) / 2;
                for p in strict_sequences(m, *k) {
                    total += f_k(*k, &p)?;
                }
            }
            IdentitySpec::GkForm { k } => {
                for mu in partitions_with_length(n - 1, *k) {
                    total += g_k(*k, mu.parts())?;
                }
            }
            IdentitySpec::BoxProbability { .. } => {
                total = box_probability_term(&self.measure, self.cell, n)?;
            }
        }
        Ok(total)
    }

    /// `P(T(cell) = n)` from the measure directly.
    pub fn generic_mass(&self, n: usize) -> Result<ExactScalar> {
        box_probability_term(&self.measure, self.cell, n)
    }

    pub fn evaluate(&self, max_level: usize) -> Result<ConvergenceReport> {
        let start = Instant::now();
        let masses = (1..=max_level)
            .map(|n| self.level_mass(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(ConvergenceReport::from_masses(
            self.spec.clone(),
            masses,
            start.elapsed(),
        ))
    }
}

impl fmt::Debug for IdentityEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityEvaluator")
            .field("spec", &self.spec)
            .field("cell", &self.cell)
            .finish_non_exhaustive()
    }
}

pub fn evaluate_identity(spec: &IdentitySpec, max_level: usize) -> Result<ConvergenceReport> {
    IdentityEvaluator::new(spec.clone())?.evaluate(max_level)
}

/// `Σ_{n≤N} P(T(cell) = n)` for any measure and box.
pub fn box_probability_cumulative(measure: &MeasureSpec, cell: Cell, max_level: usize) -> Result<ConvergenceReport> {
    evaluate_identity(
        &IdentitySpec::BoxProbability {
            measure: measure.clone(),
            cell,
        },
        max_level,
    )
}

/// One level of a convergence report.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub level: usize,
    pub mass: ExactScalar,
    pub cumulative: ExactScalar,
    pub residual: ExactScalar,
}

/// Level masses, partial sums and residuals of an identity.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub identity: IdentitySpec,
    pub rows: Vec<ReportRow>,
    pub max_level: usize,
    pub wall_time: Duration,
}

impl PartialEq for ConvergenceReport {
    fn eq(&self, other: &Self) -> bool {
        self.identity == other.identity && self.rows == other.rows && self.max_level == other.max_level
    }
}

#[derive(Serialize)]
struct JsonRow {
    level: usize,
    level_mass: String,
    cumulative: String,
    residual: String,
    level_mass_float: f64,
    cumulative_float: f64,
    residual_float: f64,
}

#[derive(Serialize)]
struct JsonReport {
    identity: String,
    box_row: usize,
    box_col: usize,
    measure: String,
    max_level: usize,
    final_sum: String,
    final_residual: String,
    final_residual_float: f64,
    monotone: bool,
    rows: Vec<JsonRow>,
}

impl ConvergenceReport {
    pub fn from_masses(identity: IdentitySpec, masses: Vec<ExactScalar>, wall_time: Duration) -> Self {
        let mut cumulative = ExactScalar::zero();
        let one = ExactScalar::one();
        let rows = masses
            .into_iter()
            .enumerate()
            .map(|(idx, mass)| {
                cumulative += &mass;
                ReportRow {
                    level: idx + 1,
                    residual: &one - &cumulative,
                    cumulative: cumulative.clone(),
                    mass,
                }
            })
            .collect::<Vec<_>>();
        ConvergenceReport {
            identity,
            max_level: rows.len(),
            rows,
            wall_time,
        }
    }

    pub fn final_sum(&self) -> ExactScalar {
        self.rows
            .last()
            .map(|r| r.cumulative.clone())
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn final_residual(&self) -> ExactScalar {
        ExactScalar::one() - self.final_sum()
    }

    /// Level masses are nonnegative and partial sums never exceed 1.
    pub fn is_monotone(&self) -> bool {
        self.rows
            .iter()
            .all(|r| !r.mass.is_negative() && !r.residual.is_negative())
    }

    /// Whether the residual is within `tol`, compared exactly against the
    /// binary value of `tol`. A NaN or infinite tolerance never passes.
    pub fn passes(&self, tol: f64) -> bool {
        match ExactScalar::from_f64(tol) {
            Some(tol) => self.final_residual().abs() <= tol,
            None => false,
        }
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "level",
            "level_mass_exact",
            "level_mass_float",
            "cumulative_float",
            "residual_float",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.level.to_string(),
                r.mass.to_string(),
                format!("{:e}", r.mass.to_f64()),
                format!("{:e}", r.cumulative.to_f64()),
                format!("{:e}", r.residual.to_f64()),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    /// JSON with exact values as `"p/q"` strings. Wall time is left out so
    /// that reruns produce identical bytes.
    pub fn to_json_string(&self) -> String {
        let (measure, cell) = self.identity.pairing();
        let report = JsonReport {
            identity: self.identity.to_string(),
            box_row: cell.row,
            box_col: cell.col,
            measure: measure.to_string(),
            max_level: self.max_level,
            final_sum: self.final_sum().to_string(),
            final_residual: self.final_residual().to_string(),
            final_residual_float: self.final_residual().to_f64(),
            monotone: self.is_monotone(),
            rows: self
                .rows
                .iter()
                .map(|r| JsonRow {
                    level: r.level,
                    level_mass: r.mass.to_string(),
                    cumulative: r.cumulative.to_string(),
                    residual: r.residual.to_string(),
                    level_mass_float: r.mass.to_f64(),
                    cumulative_float: r.cumulative.to_f64(),
                    residual_float: r.residual.to_f64(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&report).expect("report serializes")
    }

    /// Fixed-width table for terminals.
    pub fn to_table(&self) -> String {
        let mut s = format!("{}\n", self.identity);
        s.push_str(&format!(
            "{:>6}  {:>14}  {:>22}  {:>14}\n",
            "level", "mass", "cumulative", "residual"
        ));
        for r in &self.rows {
            s.push_str(&format!(
                "{:>6}  {:>14.6e}  {:>22.16}  {:>14.6e}\n",
                r.level,
                r.mass.to_f64(),
                r.cumulative.to_f64(),
                r.residual.to_f64()
            ));
        }
        s.push_str(&format!("final residual: {}\n", self.final_residual()));
        s
    }
}
