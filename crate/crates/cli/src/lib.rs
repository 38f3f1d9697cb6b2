//! Argument parsing and dispatch for the `tabsum` binary.
//!
//! [`run`] parses a command line and [`execute`] carries it out, returning a
//! [`RunReport`] instead of printing, so tests can drive the whole front end
//! in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tabsum::graph::{kappa, Multiplicity};
use tabsum::identities::{integral_check, IntegralCheck};
use tabsum::sampler::{compare_empirical_analytic, ComparisonRow};
use tabsum::{
    evaluate_identity, CentralMeasure, Cell, Error, ExactScalar, GaussianExact, Graph, IdentitySpec, MeasureSpec,
    Partition, Sampler, SpecialCase,
};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    ToleranceFailure = 1,
    InvalidParameters = 2,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// What a command produced. `stdout` is what the binary prints; when
/// `--output` is given the formatted payload goes to that file and `stdout`
/// holds a one-line summary.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub request: String,
    pub status: Status,
    pub passed: Option<bool>,
    pub stdout: String,
    pub stderr: String,
}

impl RunReport {
    fn invalid(request: String, message: String) -> Self {
        RunReport {
            request,
            status: Status::InvalidParameters,
            passed: None,
            stdout: String::new(),
            stderr: message,
        }
    }
}

#[derive(Parser, Debug, Clone)]
#[command(name = "tabsum", version, about = "Central measures on the Young lattice and box-entry identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Number of weighted paths from the empty diagram.
    Dims(DimsArgs),
    /// Edge multiplicity between two diagrams.
    Kappa(KappaArgs),
    /// Harmonic function, dimension and level probability of a diagram.
    Phi(PhiArgs),
    /// Sums an identity level by level and checks the residual.
    Verify(VerifyArgs),
    /// Monte Carlo box-entry times against exact probabilities.
    Sample(SampleArgs),
    /// Quadrature check of the integral form of the Kingman identity.
    Integral(IntegralArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Jack,
    Kingman,
    Young,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Plancherel,
    ZMeasure,
    KingmanT,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityName {
    PlancherelYoungBox,
    ThetaPlancherelHook,
    ZMeasureHook,
    KingmanT,
    SpecialCase,
    FkForm,
    GkForm,
    BoxProbability,
}

fn parse_scalar(s: &str) -> Result<ExactScalar, String> {
    s.parse::<ExactScalar>().map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> Result<GaussianExact, String> {
    s.parse::<GaussianExact>().map_err(|e| e.to_string())
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn parse_cell(s: &str) -> Result<Cell, String> {
    s.parse::<Cell>().map_err(|e| e.to_string())
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() && x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("tolerance must be finite and nonnegative, got {s}"))
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value = "jack")]
    pub family: Family,
    #[arg(long, value_parser = parse_scalar, default_value = "1")]
    pub theta: ExactScalar,
}

impl FamilyArgs {
    fn multiplicity(&self) -> Result<Multiplicity, Error> {
        match self.family {
            Family::Jack => Multiplicity::jack(self.theta.clone()),
            Family::Kingman => Ok(Multiplicity::Kingman),
            Family::Young => Ok(Multiplicity::Young),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct MeasureArgs {
    #[arg(long, value_enum, default_value = "plancherel")]
    pub measure: MeasureKind,
    #[arg(long, value_parser = parse_scalar, default_value = "1")]
    pub theta: ExactScalar,
    #[arg(long, value_parser = parse_complex)]
    pub z: Option<GaussianExact>,
    #[arg(long, value_parser = parse_scalar)]
    pub t: Option<ExactScalar>,
}

fn required<T: Clone>(value: &Option<T>, flag: &str, what: &str) -> Result<T, Error> {
    value
        .clone()
        .ok_or_else(|| Error::DegenerateParameter(format!("{what} needs --{flag}")))
}

impl MeasureArgs {
    fn spec(&self) -> Result<MeasureSpec, Error> {
        match self.measure {
            MeasureKind::Plancherel => MeasureSpec::plancherel(self.theta.clone()),
            MeasureKind::ZMeasure => MeasureSpec::z_measure(self.theta.clone(), required(&self.z, "z", "z-measure")?),
            MeasureKind::KingmanT => MeasureSpec::kingman_t(required(&self.t, "t", "kingman-t")?),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct DimsArgs {
    #[arg(long, value_parser = parse_partition)]
    pub partition: Partition,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct KappaArgs {
    #[arg(long, value_parser = parse_partition)]
    pub mu: Partition,
    #[arg(long, value_parser = parse_partition)]
    pub lambda: Partition,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct PhiArgs {
    #[arg(long, value_parser = parse_partition)]
    pub partition: Partition,
    #[command(flatten)]
    pub measure: MeasureArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub identity: IdentityName,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Box of a special case or of box-probability, as "i,j".
    #[arg(long = "case", value_parser = parse_cell)]
    pub case: Option<Cell>,
    #[arg(long = "box", value_parser = parse_cell)]
    pub cell: Option<Cell>,
    #[command(flatten)]
    pub measure: MeasureArgs,
    #[arg(long, default_value_t = 25)]
    pub max_level: usize,
    #[arg(long, value_parser = parse_tol, default_value = "1e-6")]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl VerifyArgs {
    fn identity(&self) -> Result<IdentitySpec, Error> {
        let name = self.identity.to_possible_value().expect("no skipped variants");
        let what = name.get_name();
        let k = || required(&self.k, "k", what);
        let l = || required(&self.l, "l", what);
        let theta = self.measure.theta.clone();
        let spec = match self.identity {
            IdentityName::PlancherelYoungBox => IdentitySpec::PlancherelYoungBox { k: k()?, l: l()? },
            IdentityName::ThetaPlancherelHook => IdentitySpec::ThetaPlancherelHook { k: k()?, theta },
            IdentityName::ZMeasureHook => IdentitySpec::ZMeasureHook {
                k: k()?,
                theta,
                z: required(&self.measure.z, "z", what)?,
            },
            IdentityName::KingmanT => IdentitySpec::KingmanT {
                k: k()?,
                l: l()?,
                t: required(&self.measure.t, "t", what)?,
            },
            IdentityName::SpecialCase => {
                let cell = required(&self.case, "case", what)?;
                let case = SpecialCase::ALL
                    .into_iter()
                    .find(|c| c.cell() == cell)
                    .ok_or_else(|| {
                        let known: Vec<String> = SpecialCase::ALL.iter().map(|c| format!("\"{c}\"")).collect();
                        Error::UnsupportedParameter(format!("no special case for box {cell}; known: {}", known.join(" ")))
                    })?;
                IdentitySpec::SpecialCase { case, theta }
            }
            IdentityName::FkForm => IdentitySpec::FkForm { k: k()? },
            IdentityName::GkForm => IdentitySpec::GkForm { k: k()? },
            IdentityName::BoxProbability => IdentitySpec::BoxProbability {
                measure: self.measure.spec()?,
                cell: required(&self.cell, "box", what)?,
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args, Debug, Clone)]
pub struct SampleArgs {
    #[arg(long = "box", value_parser = parse_cell)]
    pub cell: Cell,
    #[command(flatten)]
    pub measure: MeasureArgs,
    /// Path length; defaults to --max-level.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, default_value_t = 25)]
    pub max_level: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct IntegralArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long, value_parser = parse_scalar)]
    pub t: ExactScalar,
    #[arg(long, value_parser = parse_tol, default_value = "1e-6")]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> RunReport
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let request = args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    match Cli::try_parse_from(&args) {
        Ok(cli) => execute(&cli),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => RunReport {
            request,
            status: Status::Success,
            passed: None,
            stdout: e.to_string(),
            stderr: String::new(),
        },
        Err(e) => RunReport::invalid(request, e.render().to_string()),
    }
}

/// A rendered payload plus the verdict, before output routing.
struct Rendered {
    body: String,
    summary: String,
    passed: Option<bool>,
}

fn status_of(err: &Error) -> Status {
    match err {
        Error::QuadratureNonconvergence { .. } => Status::ToleranceFailure,
        _ => Status::InvalidParameters,
    }
}

pub fn execute(cli: &Cli) -> RunReport {
    let request = describe(&cli.command);
    let (out, rendered) = match &cli.command {
        Command::Dims(a) => (&a.out, dims(a)),
        Command::Kappa(a) => (&a.out, kappa_cmd(a)),
        Command::Phi(a) => (&a.out, phi_cmd(a)),
        Command::Verify(a) => (&a.out, verify(a)),
        Command::Sample(a) => (&a.out, sample(a)),
        Command::Integral(a) => (&a.out, integral(a)),
    };
    let rendered = match rendered {
        Ok(r) => r,
        Err(e) => {
            return RunReport {
                request,
                status: status_of(&e),
                passed: None,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let status = match rendered.passed {
        Some(false) => Status::ToleranceFailure,
        _ => Status::Success,
    };
    let stdout = match &out.output {
        None => rendered.body,
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered.body.as_bytes()) {
                return RunReport::invalid(request, format!("error: cannot write {}: {e}\n", path.display()));
            }
            format!("{}\nwrote {}\n", rendered.summary, path.display())
        }
    };
    RunReport {
        request,
        status,
        passed: rendered.passed,
        stdout,
        stderr: String::new(),
    }
}

fn describe(cmd: &Command) -> String {
    match cmd {
        Command::Dims(a) => format!("dims {}", a.partition),
        Command::Kappa(a) => format!("kappa {} -> {}", a.mu, a.lambda),
        Command::Phi(a) => format!("phi {}", a.partition),
        Command::Verify(a) => format!("verify {:?}", a.identity),
        Command::Sample(a) => format!("sample box {}", a.cell),
        Command::Integral(a) => format!("integral k={} l={} t={}", a.k, a.l, a.t),
    }
}

fn csv_lines(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

/// Label, exact value and float value in the requested format.
fn render_values(format: Format, title: &str, values: &[(&str, String, f64)]) -> String {
    match format {
        Format::Table => {
            let mut s = format!("{title}\n");
            for (name, exact, float) in values {
                let _ = writeln!(s, "{name:>12} = {exact}  (≈ {float:e})");
            }
            s
        }
        Format::Csv => csv_lines(
            &["quantity", "exact", "float"],
            &values
                .iter()
                .map(|(n, e, f)| vec![n.to_string(), e.clone(), format!("{f:e}")])
                .collect::<Vec<_>>(),
        ),
        Format::Json => {
            let mut map = serde_json::Map::new();
            map.insert("title".into(), json!(title));
            for (name, exact, float) in values {
                map.insert((*name).into(), json!(exact));
                map.insert(format!("{name}_float"), json!(float));
            }
            pretty(serde_json::Value::Object(map))
        }
    }
}

fn dims(a: &DimsArgs) -> Result<Rendered, Error> {
    let spec = a.family.multiplicity()?;
    let d = Graph::new(spec.clone()).dim(&a.partition);
    let title = format!("{spec}, partition {}", a.partition);
    Ok(Rendered {
        summary: format!("dim = {d}"),
        body: render_values(a.out.format, &title, &[("dim", d.to_string(), d.to_f64())]),
        passed: None,
    })
}

fn kappa_cmd(a: &KappaArgs) -> Result<Rendered, Error> {
    let spec = a.family.multiplicity()?;
    let v = kappa(&spec, &a.mu, &a.lambda)?;
    let title = format!("{spec}, edge {} -> {}", a.mu, a.lambda);
    Ok(Rendered {
        summary: format!("kappa = {v}"),
        body: render_values(a.out.format, &title, &[("kappa", v.to_string(), v.to_f64())]),
        passed: None,
    })
}

fn phi_cmd(a: &PhiArgs) -> Result<Rendered, Error> {
    let m = CentralMeasure::new(a.measure.spec()?)?;
    let phi = m.phi(&a.partition);
    let dim = m.dim(&a.partition);
    let prob = &dim * &phi;
    let title = format!("{}, partition {}", m.spec(), a.partition);
    Ok(Rendered {
        summary: format!("phi = {phi}"),
        body: render_values(
            a.out.format,
            &title,
            &[
                ("phi", phi.to_string(), phi.to_f64()),
                ("dim", dim.to_string(), dim.to_f64()),
                ("probability", prob.to_string(), prob.to_f64()),
            ],
        ),
        passed: None,
    })
}

fn verify(a: &VerifyArgs) -> Result<Rendered, Error> {
    let spec = a.identity()?;
    let report = evaluate_identity(&spec, a.max_level)?;
    let passed = report.passes(a.tol);
    let verdict = format!(
        "{}: residual {} (≈ {:e}) against tolerance {:e}",
        if passed { "PASS" } else { "FAIL" },
        report.final_residual(),
        report.final_residual().to_f64(),
        a.tol
    );
    let body = match a.out.format {
        Format::Table => format!("{}{verdict}\n", report.to_table()),
        Format::Csv => report.to_csv_string(),
        Format::Json => {
            let mut v: serde_json::Value = serde_json::from_str(&report.to_json_string()).expect("report json");
            v["tolerance"] = json!(a.tol);
            v["passed"] = json!(passed);
            pretty(v)
        }
    };
    Ok(Rendered {
        body,
        summary: verdict,
        passed: Some(passed),
    })
}

fn sample(a: &SampleArgs) -> Result<Rendered, Error> {
    let spec = a.measure.spec()?;
    let steps = a.steps.unwrap_or(a.max_level);
    let sampler = Sampler::new(spec.clone())?;
    let hist = sampler.entry_distribution(a.cell, steps, a.trials, a.seed);
    let rows: Vec<ComparisonRow> = compare_empirical_analytic(&hist, sampler.measure())?;
    let max_z = rows.iter().map(|r| r.z_score.abs()).fold(0.0, f64::max);
    let summary = format!(
        "box {} under {spec}: {} of {} trials reached it within {steps} steps, max |z| = {max_z:.3}",
        a.cell,
        hist.reached(),
        hist.trials
    );
    let body = match a.out.format {
        Format::Table => {
            let mut s = format!("{summary}\nseed {}\n", a.seed);
            let _ = writeln!(
                s,
                "{:>6}  {:>8}  {:>12}  {:>12}  {:>8}",
                "level", "count", "empirical", "exact", "z"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>6}  {:>8}  {:>12.6}  {:>12.6}  {:>8.3}",
                    r.level, r.count, r.empirical, r.analytic_float, r.z_score
                );
            }
            let _ = writeln!(s, "not reached: {}", hist.not_reached);
            s
        }
        Format::Csv => csv_lines(
            &["level", "count", "empirical", "exact", "exact_float", "z_score"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.level.to_string(),
                        r.count.to_string(),
                        format!("{:e}", r.empirical),
                        r.analytic.to_string(),
                        format!("{:e}", r.analytic_float),
                        format!("{:e}", r.z_score),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => pretty(json!({
            "measure": spec.to_string(),
            "box": a.cell.to_string(),
            "steps": steps,
            "trials": hist.trials,
            "seed": a.seed,
            "not_reached": hist.not_reached,
            "rows": rows,
        })),
    };
    Ok(Rendered {
        body,
        summary,
        passed: None,
    })
}

fn integral(a: &IntegralArgs) -> Result<Rendered, Error> {
    let t = a.t.to_f64();
    // ask the quadrature for a margin below the comparison tolerance
    let quad_tol = (a.tol / 10.0).max(1e-13);
    let chk: IntegralCheck = integral_check(a.k, a.l, t, quad_tol)?;
    let passed = chk.deviation() <= a.tol;
    let summary = format!(
        "{}: integral {:.15e} vs {}!/t^{} = {:.15e}, deviation {:e}",
        if passed { "PASS" } else { "FAIL" },
        chk.value,
        a.k,
        a.k + 1,
        chk.target,
        chk.deviation()
    );
    let body = match a.out.format {
        Format::Table => format!(
            "k = {}, l = {}, t = {}\n{summary}\nerror estimate {:e} over {} intervals\n",
            a.k, a.l, a.t, chk.error_estimate, chk.intervals
        ),
        Format::Csv => csv_lines(
            &["k", "l", "t", "value", "target", "deviation", "error_estimate", "intervals"],
            &[vec![
                a.k.to_string(),
                a.l.to_string(),
                a.t.to_string(),
                format!("{:e}", chk.value),
                format!("{:e}", chk.target),
                format!("{:e}", chk.deviation()),
                format!("{:e}", chk.error_estimate),
                chk.intervals.to_string(),
            ]],
        ),
        Format::Json => pretty(json!({
            "k": a.k,
            "l": a.l,
            "t": a.t.to_string(),
            "value": chk.value,
            "target": chk.target,
            "deviation": chk.deviation(),
            "error_estimate": chk.error_estimate,
            "intervals": chk.intervals,
            "tolerance": a.tol,
            "passed": passed,
        })),
    };
    Ok(Rendered {
        body,
        summary,
        passed: Some(passed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &str) -> RunReport {
        run(std::iter::once("tabsum").chain(args.split_whitespace()))
    }

    #[test]
    fn dims_of_21() {
        let r = go("dims --partition 2,1 --theta 1");
        assert_eq!(r.status, Status::Success);
        assert!(r.stdout.contains("dim = 2 "), "{}", r.stdout);
    }

    #[test]
    fn bad_inputs_are_status_2() {
        assert_eq!(go("dims --partition 3,4").status, Status::InvalidParameters);
        assert_eq!(go("dims --partition 2,1 --theta 0").status, Status::InvalidParameters);
        assert_eq!(go("dims --partition 2,1 --bogus 1").status, Status::InvalidParameters);
        assert_eq!(go("verify --identity kingman-t --k 1 --t 1").status, Status::InvalidParameters);
        assert_eq!(go("verify --identity kingman-t --k 1 --l 0 --t 1").status, Status::InvalidParameters);
        assert_eq!(go("verify --identity special-case --case 5,5").status, Status::InvalidParameters);
        assert_eq!(go("verify --identity fk-form --k 1 --tol nan").status, Status::InvalidParameters);
    }

    #[test]
    fn help_is_success() {
        assert_eq!(go("--help").status, Status::Success);
    }

    #[test]
    fn kappa_and_phi() {
        let r = go("kappa --mu 1 --lambda 2 --family jack --theta 1/2 --format json");
        assert_eq!(r.status, Status::Success);
        let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["kappa"], "1");
        let r = go("phi --partition 1,1 --measure plancherel --theta 1 --format csv");
        assert!(r.stdout.contains("probability,1/2,"), "{}", r.stdout);
    }
}
