//! Monte Carlo growth of random tableaux.
//!
//! Randomness comes from ChaCha8. A single path with seed `s` uses
//! `ChaCha8Rng::seed_from_u64(s)`; trial `i` of a histogram run uses
//! `seed_from_u64(trial_seed(s, i))`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::ExactScalar;
use crate::error::Result;
use crate::identities::box_probability_term;
use crate::measures::{CentralMeasure, MeasureSpec};
use crate::partitions::{Cell, Partition};

/// Seed of trial `trial` in a run seeded with `seed`: one round of the
/// SplitMix64 finalizer applied to `seed + (trial + 1)·γ`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathSample {
    pub diagrams: Vec<Partition>,
    pub seed: u64,
    pub measure: MeasureSpec,
}

/// Successors of a diagram with cumulative probabilities.
type StepTable = Arc<[(Partition, f64)]>;

/// Draws successive diagrams from a measure, caching the float transition
/// tables it has built.
pub struct Sampler {
    measure: CentralMeasure,
    steps: RwLock<HashMap<Partition, StepTable>>,
}

impl Sampler {
    pub fn new(spec: MeasureSpec) -> Result<Self> {
        Ok(Sampler {
            measure: CentralMeasure::new(spec)?,
            steps: RwLock::new(HashMap::new()),
        })
    }

    pub fn measure(&self) -> &CentralMeasure {
        &self.measure
    }

    /// Successors of `mu` with cumulative probabilities, built from the exact
    /// transition probabilities after checking they sum to one.
    fn table(&self, mu: &Partition) -> StepTable {
        if let Some(t) = self.steps.read().expect("step cache").get(mu) {
            return t.clone();
        }
        let exact = self.measure.transitions_from(mu).expect("validated measure");
        let total: ExactScalar = exact.iter().map(|(_, p)| p).sum();
        assert!(total.is_one(), "transition probabilities from {mu} sum to {total}");
        let mut acc = ExactScalar::zero();
        let table: Arc<[(Partition, f64)]> = exact
            .into_iter()
            .map(|(lambda, p)| {
                acc += p;
                (lambda, acc.to_f64())
            })
            .collect();
        self.steps
            .write()
            .expect("step cache")
            .insert(mu.clone(), table.clone());
        table
    }

    fn step<R: Rng>(&self, mu: &Partition, rng: &mut R) -> Partition {
        let table = self.table(mu);
        let u: f64 = rng.random();
        table
            .iter()
            .find(|(_, c)| u < *c)
            .unwrap_or_else(|| table.last().expect("every diagram has a successor"))
            .0
            .clone()
    }

    pub fn grow_path(&self, steps: usize, seed: u64) -> PathSample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut diagrams = Vec::with_capacity(steps + 1);
        diagrams.push(Partition::empty());
        for _ in 0..steps {
            let next = self.step(diagrams.last().expect("nonempty"), &mut rng);
            diagrams.push(next);
        }
        PathSample {
            diagrams,
            seed,
            measure: self.measure.spec().clone(),
        }
    }

    /// Step at which `cell` enters one path, if within `steps`.
    fn entry_time(&self, cell: Cell, steps: usize, seed: u64) -> Option<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mu = Partition::empty();
        for n in 1..=steps {
            mu = self.step(&mu, &mut rng);
            if mu.contains(cell) {
                return Some(n);
            }
        }
        None
    }

    /// Trials are split into contiguous blocks run on separate threads; each
    /// trial has its own seed, so the result does not depend on the split.
    pub fn entry_distribution(&self, cell: Cell, steps: usize, trials: u64, seed: u64) -> EntryHistogram {
        let workers = std::thread::available_parallelism()
            .map(|n| n.get() as u64)
            .unwrap_or(1)
            .clamp(1, 16)
            .min(trials.max(1));
        let block = trials.div_ceil(workers);
        let parts: Vec<EntryHistogram> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        let mut hist = EntryHistogram::new(cell, steps);
                        for trial in (w * block)..((w + 1) * block).min(trials) {
                            hist.record(self.entry_time(cell, steps, trial_seed(seed, trial)));
                        }
                        hist
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sampling thread"))
                .collect()
        });
        let mut hist = EntryHistogram::new(cell, steps);
        for part in &parts {
            hist.merge(part);
        }
        hist
    }
}

pub fn grow_path(measure: &MeasureSpec, steps: usize, seed: u64) -> Result<PathSample> {
    Ok(Sampler::new(measure.clone())?.grow_path(steps, seed))
}

pub fn entry_distribution(
    measure: &MeasureSpec,
    cell: Cell,
    steps: usize,
    trials: u64,
    seed: u64,
) -> Result<EntryHistogram> {
    Ok(Sampler::new(measure.clone())?.entry_distribution(cell, steps, trials, seed))
}

/// Empirical distribution of the step at which a box enters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryHistogram {
    pub cell: Cell,
    pub counts: BTreeMap<usize, u64>,
    pub not_reached: u64,
    pub trials: u64,
    pub steps: usize,
}

impl EntryHistogram {
    pub fn new(cell: Cell, steps: usize) -> Self {
        EntryHistogram {
            cell,
            counts: BTreeMap::new(),
            not_reached: 0,
            trials: 0,
            steps,
        }
    }

    pub fn record(&mut self, entry: Option<usize>) {
        self.trials += 1;
        match entry {
            Some(n) => *self.counts.entry(n).or_insert(0) += 1,
            None => self.not_reached += 1,
        }
    }

    /// Combines two histograms over the same box and horizon.
    pub fn merge(&mut self, other: &EntryHistogram) {
        assert_eq!(self.cell, other.cell, "merging histograms of different boxes");
        assert_eq!(self.steps, other.steps, "merging histograms of different horizons");
        for (&n, &c) in &other.counts {
            *self.counts.entry(n).or_insert(0) += c;
        }
        self.not_reached += other.not_reached;
        self.trials += other.trials;
    }

    pub fn reached(&self) -> u64 {
        self.trials - self.not_reached
    }

    pub fn frequency(&self, n: usize) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.counts.get(&n).copied().unwrap_or(0) as f64 / self.trials as f64
    }

    pub fn to_csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["level", "count", "frequency"]).expect("in-memory csv");
        for (&n, &c) in &self.counts {
            w.write_record([n.to_string(), c.to_string(), format!("{:e}", self.frequency(n))])
                .expect("in-memory csv");
        }
        w.write_record([
            "not_reached".to_string(),
            self.not_reached.to_string(),
            format!("{:e}", self.not_reached as f64 / self.trials.max(1) as f64),
        ])
        .expect("in-memory csv");
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("histogram serializes")
    }
}

/// Empirical against exact probability at one level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub level: usize,
    pub count: u64,
    pub empirical: f64,
    #[serde(serialize_with = "as_string")]
    pub analytic: ExactScalar,
    pub analytic_float: f64,
    pub z_score: f64,
}

fn as_string<S: serde::Serializer>(x: &ExactScalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Binomial z-score of each observed level against the exact box-entry
/// probability.
pub fn compare_empirical_analytic(hist: &EntryHistogram, measure: &CentralMeasure) -> Result<Vec<ComparisonRow>> {
    if hist.trials == 0 {
        return Ok(Vec::new());
    }
    let trials = hist.trials as f64;
    hist.counts
        .iter()
        .map(|(&n, &count)| {
            let analytic = box_probability_term(measure, hist.cell, n)?;
            let p = analytic.to_f64();
            let empirical = count as f64 / trials;
            let var = p * (1.0 - p) / trials;
            let z_score = if var > 0.0 {
                (empirical - p) / var.sqrt()
            } else if empirical == p {
                0.0
            } else {
                f64::INFINITY.copysign(empirical - p)
            };
            Ok(ComparisonRow {
                level: n,
                count,
                empirical,
                analytic,
                analytic_float: p,
                z_score,
            })
        })
        .collect()
}
