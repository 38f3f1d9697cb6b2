//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test -p tabsum --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use tabsum::graph::{dim_kappa, dim_kappa_by_paths, kappa_jack, kappa_kingman, Multiplicity};
use tabsum::identities::{
    closed_form_261, evaluate_identity, f_k, g_k, hook21_parameters, hyp3f2_partial_sum,
    integral_check, term_theta_plancherel_hook, IdentityEvaluator, IdentitySpec, SpecialCase,
};
use tabsum::measures::{CentralMeasure, MeasureSpec};
use tabsum::partitions::{
    big_h_prime_theta, big_h_prime_theta_alt, big_h_theta, big_h_theta_alt, dim_kingman, dim_theta_hook,
    partitions_bounded, partitions_of, Cell, DEFAULT_TABLEAU_CAP,
};
use tabsum::sampler::{compare_empirical_analytic, Sampler};
use tabsum::{factorial, ExactScalar, GaussianExact};

fn q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::new(n, d)
}

fn c(s: &str) -> GaussianExact {
    s.parse().unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn harmonicity() -> Outcome {
    let mut specs = Vec::new();
    for th in [q(1, 2), q(1, 1), q(2, 1)] {
        specs.push(MeasureSpec::PlancherelJack { theta: th });
    }
    for (th, z) in [(q(1, 1), "i"), (q(1, 1), "3/2+1/2i"), (q(1, 2), "1/3+i")] {
        specs.push(MeasureSpec::ZMeasure { theta: th, z: c(z) });
    }
    for t in [q(1, 2), q(1, 1), q(3, 1)] {
        specs.push(MeasureSpec::KingmanT { t });
    }
    let mut checked = 0;
    let mut failures = Vec::new();
    for spec in &specs {
        let m = CentralMeasure::new(spec.clone()).unwrap();
        for n in 0..=6 {
            for mu in partitions_of(n) {
                checked += 1;
                if !m.check_harmonicity(&mu) {
                    failures.push(format!("{spec} at {mu}"));
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{checked} (measure, mu) pairs, {} failures {:?}", failures.len(), failures),
    )
}

fn dimensions() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for th in [q(1, 3), q(1, 2), q(1, 1), q(2, 1)] {
        let spec = Multiplicity::Jack(th.clone());
        for n in 0..=7 {
            for mu in partitions_of(n) {
                checked += 1;
                let rec = dim_kappa(&spec, &mu);
                let paths = dim_kappa_by_paths(&spec, &mu, DEFAULT_TABLEAU_CAP).unwrap();
                let hook = dim_theta_hook(&mu, &th);
                let alt_ok = big_h_theta(&mu, &th) == big_h_theta_alt(&mu, &th)
                    && big_h_prime_theta(&mu, &th) == big_h_prime_theta_alt(&mu, &th);
                if rec != paths || rec != hook || !alt_ok {
                    failures.push(format!("theta={th} mu={mu}"));
                }
            }
        }
    }
    for n in 0..=7 {
        for mu in partitions_of(n) {
            checked += 1;
            let rec = dim_kappa(&Multiplicity::Kingman, &mu);
            let paths = dim_kappa_by_paths(&Multiplicity::Kingman, &mu, DEFAULT_TABLEAU_CAP).unwrap();
            if rec != paths || rec != ExactScalar::from(dim_kingman(&mu)) {
                failures.push(format!("kingman mu={mu}"));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{checked} diagrams, {} failures {:?}", failures.len(), failures),
    )
}

fn oracle_grid() -> Vec<IdentitySpec> {
    let thetas = [q(1, 2), q(1, 1), q(2, 1)];
    let ts = [q(1, 2), q(1, 1), q(3, 1)];
    let zs = [c("i"), c("3/2+1/2i")];
    let mut specs = Vec::new();
    for k in 0..=3 {
        for l in 0..=2 {
            if k + l >= 1 {
                specs.push(IdentitySpec::PlancherelYoungBox { k, l });
            }
            if l >= 1 {
                for t in &ts {
                    specs.push(IdentitySpec::KingmanT { k, l, t: t.clone() });
                }
            }
        }
    }
    for k in 1..=3 {
        for th in &thetas {
            specs.push(IdentitySpec::ThetaPlancherelHook { k, theta: th.clone() });
            for z in &zs {
                specs.push(IdentitySpec::ZMeasureHook {
                    k,
                    theta: th.clone(),
                    z: z.clone(),
                });
            }
        }
    }
    for case in SpecialCase::ALL {
        for th in &thetas {
            specs.push(IdentitySpec::SpecialCase { case, theta: th.clone() });
        }
    }
    specs
}

fn printed_vs_generic() -> Outcome {
    let specs = oracle_grid();
    let mut checked = 0;
    let mut failures = Vec::new();
    for spec in &specs {
        let ev = IdentityEvaluator::new(spec.clone()).unwrap();
        for n in 1..=12 {
            checked += 1;
            let printed = ev.level_mass(n).unwrap();
            let generic = ev.generic_mass(n).unwrap();
            if printed != generic {
                failures.push(format!("{spec} n={n}: {printed} vs {generic}"));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} identities x 12 levels = {checked} exact comparisons, {} failures {:?}",
            specs.len(),
            failures.len(),
            failures
        ),
    )
}

fn convergence() -> Outcome {
    let clauses: [(IdentitySpec, usize, f64); 4] = [
        (IdentitySpec::ThetaPlancherelHook { k: 1, theta: q(2, 1) }, 30, 1e-12),
        (IdentitySpec::ThetaPlancherelHook { k: 2, theta: q(1, 2) }, 50, 1e-4),
        (IdentitySpec::KingmanT { k: 1, l: 1, t: q(1, 1) }, 60, 1e-4),
        (
            IdentitySpec::ZMeasureHook {
                k: 1,
                theta: q(1, 1),
                z: c("i"),
            },
            60,
            1e-4,
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (spec, n, tol) in clauses {
        let r = evaluate_identity(&spec, n).unwrap();
        let resid = r.final_residual().to_f64();
        let ok = resid < tol && r.is_monotone();
        pass &= ok;
        parts.push(format!(
            "{spec} N={n}: residual {resid:.3e} (< {tol:e}: {}, monotone: {})",
            if resid < tol { "yes" } else { "NO" },
            r.is_monotone()
        ));
    }
    Outcome::new(pass, parts.join("; "))
}

fn telescoping() -> Outcome {
    let r = evaluate_identity(&IdentitySpec::PlancherelYoungBox { k: 1, l: 0 }, 21).unwrap();
    let mut failures = Vec::new();
    for big_p in 1..=20usize {
        // p ≤ P is levels up to P + 1
        let s = &r.rows[big_p].cumulative;
        let expected = q(1, 1) - ExactScalar::from(factorial(big_p + 1)).recip();
        if *s != expected {
            failures.push(big_p);
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("P = 1..20 exact, failures at {failures:?}"),
    )
}

fn weakly_decreasing(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for n in k..=k * max {
        for p in partitions_bounded(n, max, k) {
            if p.length() == k {
                out.push(p.parts().to_vec());
            }
        }
    }
    out
}

fn prop_fk_gk() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 1..=4 {
        for mu in weakly_decreasing(k, 8) {
            checked += 1;
            let p: Vec<usize> = mu.iter().enumerate().map(|(j, &m)| m + k - 1 - j).collect();
            let g = g_k(k, &mu).unwrap();
            if f_k(k, &p).unwrap() != g || term_theta_plancherel_hook(k, &q(1, 1), &mu).unwrap() != g {
                failures.push(format!("k={k} mu={mu:?}"));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{checked} index tuples, {} failures {:?}", failures.len(), failures),
    )
}

fn hypergeometric() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for z in ["i", "3/2+1/2i"] {
        let th = q(1, 1);
        let z = c(z);
        let (a, b) = hook21_parameters(&th, &z);
        let sum = hyp3f2_partial_sum([&a[0], &a[1], &a[2]], [&b[0], &b[1]], 500)
            .unwrap()
            .into_real()
            .expect("real parameters pairs give a real sum");
        let closed = closed_form_261(&th, &z).unwrap();
        let gap = (&closed - &sum).to_f64().abs();
        let ok = gap < 1e-8;
        pass &= ok;
        parts.push(format!(
            "(theta=1, z={z}): closed form {closed}, S_500 = {:.10}, gap {gap:.3e}",
            sum.to_f64()
        ));
    }
    let two = closed_form_261(&q(1, 1), &c("i")).unwrap() == q(2, 1);
    pass &= two;
    parts.push(format!("closed form at (1, i) equals 2: {two}"));
    Outcome::new(pass, parts.join("; "))
}

fn integral() -> Outcome {
    let tol = 1e-12;
    let mut pass = true;
    let mut worst: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    let mut base_worst: f64 = 0.0;
    for t in [1.5, 2.0, 3.0] {
        for l in 1..=2 {
            let mut prev = None;
            for k in 0..=3 {
                let chk = integral_check(k, l, t, tol).unwrap();
                worst = worst.max(chk.deviation());
                if k == 0 {
                    base_worst = base_worst.max((chk.value - 1.0 / t).abs());
                }
                if let Some(p) = prev {
                    let ratio: f64 = chk.value / p;
                    worst_ratio = worst_ratio.max((ratio - k as f64 / t).abs());
                }
                prev = Some(chk.value);
            }
        }
    }
    pass &= worst < 1e-8 && base_worst < 1e-8 && worst_ratio < 1e-6;
    Outcome::new(
        pass,
        format!(
            "max |I - k!/t^(k+1)| = {worst:.2e}, max |a_0 - 1/t| = {base_worst:.2e}, max |a_k/a_(k-1) - k/t| = {worst_ratio:.2e}"
        ),
    )
}

fn monte_carlo() -> Outcome {
    let sampler = Sampler::new(MeasureSpec::PlancherelJack { theta: q(1, 1) }).unwrap();
    let hist = sampler.entry_distribution(Cell::new(2, 1), 20, 100_000, 0);
    let rows = compare_empirical_analytic(&hist, sampler.measure()).unwrap();
    let mut pass = true;
    let mut worst: f64 = 0.0;
    for n in 2..=8 {
        let row = rows.iter().find(|r| r.level == n);
        match row {
            Some(r) => {
                let expected = q(n as i64 - 1, 1) / ExactScalar::from(factorial(n));
                pass &= r.analytic == expected && r.z_score.abs() < 4.0;
                worst = worst.max(r.z_score.abs());
            }
            None => pass = false,
        }
    }
    pass &= !hist.counts.contains_key(&1);
    let f2 = hist.frequency(2);
    Outcome::new(
        pass,
        format!("T=1e5, N=20, seed 0: freq(n=2) = {f2:.4}, max |z| over n<=8 = {worst:.2}"),
    )
}

fn kingman_limit() -> Outcome {
    let th = q(1, 1_000_000);
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    let mut positive = true;
    for n in 1..=7 {
        for lambda in partitions_of(n) {
            for cell in lambda.removable_cells() {
                let mu = lambda.without_cell(cell).unwrap();
                let j = kappa_jack(&mu, &lambda, &th).unwrap();
                let k = kappa_kingman(&mu, &lambda).unwrap() as f64;
                positive &= j.is_positive();
                worst = worst.max((j.to_f64() - k).abs());
                checked += 1;
            }
        }
    }
    Outcome::new(
        worst < 1e-4 && positive,
        format!("{checked} edges, max |kappa_jack(1e-6) - kappa_kingman| = {worst:.2e}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("harmonicity, |mu| <= 6, full grid", harmonicity),
        ("dimension oracles, |mu| <= 7", dimensions),
        ("printed summands = generic box probabilities, n <= 12", printed_vs_generic),
        ("convergence to 1", convergence),
        ("telescoping partial sums, P <= 20", telescoping),
        ("f_k = g_k and theta = 1 reduction", prop_fk_gk),
        ("3F2 closed form at N = 500 within 1e-8", hypergeometric),
        ("integral identity", integral),
        ("Monte Carlo entry distribution of (2,1)", monte_carlo),
        ("Kingman limit of Jack multiplicities", kingman_limit),
    ];
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        if !out.pass {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {name} ({secs:.1}s): {}",
            if out.pass { "PASS" } else { "FAIL" },
            idx + 1,
            out.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
