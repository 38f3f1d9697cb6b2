//! Central measures: the harmonic functions φ, transition probabilities and
//! level distributions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_integer::Integer;

use crate::arith::{factorial, ExactScalar, GaussianExact, Pochhammer};
use crate::error::{Error, Result};
use crate::graph::{Graph, Multiplicity};
use crate::partitions::{big_h_prime_theta, content_theta, partitions_of, Partition};

/// Largest level `level_distribution` will enumerate.
pub const DEFAULT_LEVEL_CAP: usize = 40;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MeasureSpec {
    PlancherelJack { theta: ExactScalar },
    ZMeasure { theta: ExactScalar, z: GaussianExact },
    KingmanT { t: ExactScalar },
}

impl MeasureSpec {
    pub fn plancherel(theta: ExactScalar) -> Result<Self> {
        let m = MeasureSpec::PlancherelJack { theta };
        m.validate()?;
        Ok(m)
    }

    pub fn z_measure(theta: ExactScalar, z: GaussianExact) -> Result<Self> {
        let m = MeasureSpec::ZMeasure { theta, z };
        m.validate()?;
        Ok(m)
    }

    pub fn kingman_t(t: ExactScalar) -> Result<Self> {
        let m = MeasureSpec::KingmanT { t };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::PlancherelJack { theta } => positive("theta", theta),
            MeasureSpec::ZMeasure { theta, z } => {
                positive("theta", theta)?;
                if is_degenerate_z(theta, z) {
                    return Err(Error::DegenerateParameter(format!(
                        "z = {z} lies in Z + Z*theta for theta = {theta}"
                    )));
                }
                Ok(())
            }
            MeasureSpec::KingmanT { t } => positive("t", t),
        }
    }

    /// The edge multiplicities paired with this measure.
    pub fn multiplicity(&self) -> Multiplicity {
        match self {
            MeasureSpec::PlancherelJack { theta } | MeasureSpec::ZMeasure { theta, .. } => {
                if theta.is_one() {
                    Multiplicity::Young
                } else {
                    Multiplicity::Jack(theta.clone())
                }
            }
            MeasureSpec::KingmanT { .. } => Multiplicity::Kingman,
        }
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::PlancherelJack { theta } => write!(f, "plancherel(theta={theta})"),
            MeasureSpec::ZMeasure { theta, z } => write!(f, "z-measure(theta={theta}, z={z})"),
            MeasureSpec::KingmanT { t } => write!(f, "kingman-t(t={t})"),
        }
    }
}

fn positive(name: &str, x: &ExactScalar) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::DegenerateParameter(format!("{name} = {x} must be > 0")))
    }
}

/// True when `z ∈ ℤ + ℤθ`. With `θ = p/q` in lowest terms this happens
/// exactly when `z` is real and `qz` is an integer.
pub fn is_degenerate_z(theta: &ExactScalar, z: &GaussianExact) -> bool {
    if !z.im.is_zero() {
        return false;
    }
    // qz = q·a/b is integral iff b | q·a, and gcd(a, b) = 1, so iff b | q.
    theta.denom().is_multiple_of(z.re.denom())
}

pub fn phi_plancherel(lambda: &Partition, theta: &ExactScalar) -> ExactScalar {
    theta.pow(lambda.size() as i32) / big_h_prime_theta(lambda, theta)
}

pub fn phi_z(lambda: &Partition, theta: &ExactScalar, z: &GaussianExact) -> Result<ExactScalar> {
    MeasureSpec::ZMeasure {
        theta: theta.clone(),
        z: z.clone(),
    }
    .validate()?;
    let zbar = z.conj();
    let mut prod = GaussianExact::one();
    let mut prod_bar = GaussianExact::one();
    for cell in lambda.cells() {
        let c = content_theta(cell, theta);
        prod = &prod * &(z + &c);
        prod_bar = &prod_bar * &(&zbar + &c);
    }
    let numer = (&prod * &prod_bar)
        .into_real()
        .expect("conjugate pairing leaves no imaginary part");
    let base = z.norm_sq() / theta;
    let denom = base.pochhammer(lambda.size()) * big_h_prime_theta(lambda, theta);
    let value = numer / denom;
    assert!(!value.is_negative(), "phi_z must be nonnegative");
    Ok(value)
}

pub fn psi_t(lambda: &Partition, t: &ExactScalar) -> ExactScalar {
    let mut numer = ExactScalar::one();
    for &part in lambda.parts() {
        numer *= ExactScalar::from(factorial(part - 1));
    }
    let mut denom = ExactScalar::one();
    let mut parts = lambda.parts().to_vec();
    parts.dedup();
    for part in parts {
        denom *= ExactScalar::from(factorial(lambda.multiplicity(part)));
    }
    numer / denom * t.pow(lambda.length() as i32) / t.pochhammer(lambda.size())
}

pub fn phi(measure: &MeasureSpec, lambda: &Partition) -> Result<ExactScalar> {
    match measure {
        MeasureSpec::PlancherelJack { theta } => {
            measure.validate()?;
            Ok(phi_plancherel(lambda, theta))
        }
        MeasureSpec::ZMeasure { theta, z } => phi_z(lambda, theta, z),
        MeasureSpec::KingmanT { t } => {
            measure.validate()?;
            Ok(psi_t(lambda, t))
        }
    }
}

/// Weights `dim(λ)·φ(λ)` over the partitions of one level.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelDistribution {
    pub level: usize,
    pub weights: BTreeMap<Partition, ExactScalar>,
}

impl LevelDistribution {
    pub fn total(&self) -> ExactScalar {
        self.weights.values().sum()
    }

    pub fn get(&self, lambda: &Partition) -> Option<&ExactScalar> {
        self.weights.get(lambda)
    }
}

/// A validated measure together with its graph and a memo table for φ.
pub struct CentralMeasure {
    spec: MeasureSpec,
    graph: Graph,
    phis: RwLock<HashMap<Partition, ExactScalar>>,
}

impl CentralMeasure {
    pub fn new(spec: MeasureSpec) -> Result<Self> {
        spec.validate()?;
        Ok(CentralMeasure {
            graph: Graph::new(spec.multiplicity()),
            spec,
            phis: RwLock::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &MeasureSpec {
        &self.spec
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn phi(&self, lambda: &Partition) -> ExactScalar {
        if let Some(v) = self.phis.read().expect("phi cache").get(lambda) {
            return v.clone();
        }
        let v = phi(&self.spec, lambda).expect("spec validated on construction");
        self.phis
            .write()
            .expect("phi cache")
            .insert(lambda.clone(), v.clone());
        v
    }

    pub fn kappa(&self, mu: &Partition, lambda: &Partition) -> Result<ExactScalar> {
        self.graph.kappa(mu, lambda)
    }

    pub fn dim(&self, lambda: &Partition) -> ExactScalar {
        self.graph.dim(lambda)
    }

    /// `κ(μ, λ) φ(λ) / φ(μ)`.
    pub fn transition(&self, mu: &Partition, lambda: &Partition) -> Result<ExactScalar> {
        let k = self.kappa(mu, lambda)?;
        let from = self.phi(mu);
        if from.is_zero() {
            return Err(Error::ZeroDenominator(format!("phi({mu}) = 0")));
        }
        Ok(k * self.phi(lambda) / from)
    }

    /// All successors of `mu` with their transition probabilities, in
    /// row-ascending order of the added box.
    pub fn transitions_from(&self, mu: &Partition) -> Result<Vec<(Partition, ExactScalar)>> {
        mu.addable_cells()
            .into_iter()
            .map(|cell| {
                let lambda = mu.with_cell(cell)?;
                let p = self.transition(mu, &lambda)?;
                Ok((lambda, p))
            })
            .collect()
    }

    pub fn level_distribution(&self, n: usize) -> Result<LevelDistribution> {
        self.level_distribution_capped(n, DEFAULT_LEVEL_CAP)
    }

    pub fn level_distribution_capped(&self, n: usize, cap: usize) -> Result<LevelDistribution> {
        if n > cap {
            return Err(Error::CapExceeded { size: n, cap });
        }
        let weights = partitions_of(n)
            .into_iter()
            .map(|lambda| {
                let w = self.dim(&lambda) * self.phi(&lambda);
                (lambda, w)
            })
            .collect();
        Ok(LevelDistribution { level: n, weights })
    }

    /// Exact check of `φ(μ) = Σ_{λ↘μ} κ(μ, λ) φ(λ)`.
    pub fn check_harmonicity(&self, mu: &Partition) -> bool {
        let mut total = ExactScalar::zero();
        for cell in mu.addable_cells() {
            let lambda = mu.with_cell(cell).expect("addable cell");
            total += self.kappa(mu, &lambda).expect("edge") * self.phi(&lambda);
        }
        total == self.phi(mu)
    }
}

impl fmt::Debug for CentralMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CentralMeasure")
            .field("spec", &self.spec)
            .finish_non_exhaustive()
    }
}

pub fn transition(measure: &MeasureSpec, mu: &Partition, lambda: &Partition) -> Result<ExactScalar> {
    CentralMeasure::new(measure.clone())?.transition(mu, lambda)
}

pub fn level_distribution(measure: &MeasureSpec, n: usize) -> Result<LevelDistribution> {
    CentralMeasure::new(measure.clone())?.level_distribution(n)
}

pub fn check_harmonicity(measure: &MeasureSpec, mu: &Partition) -> Result<bool> {
    Ok(CentralMeasure::new(measure.clone())?.check_harmonicity(mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::new(n, d)
    }

    fn c(s: &str) -> GaussianExact {
        s.parse().unwrap()
    }

    #[test]
    fn degenerate_z() {
        assert!(is_degenerate_z(&q(1, 1), &c("3")));
        assert!(is_degenerate_z(&q(1, 2), &c("5/2")));
        assert!(is_degenerate_z(&q(2, 3), &c("-1/3")));
        assert!(!is_degenerate_z(&q(1, 2), &c("1/3")));
        assert!(!is_degenerate_z(&q(1, 1), &c("1/2")));
        assert!(!is_degenerate_z(&q(1, 1), &c("i")));
        assert!(matches!(
            MeasureSpec::z_measure(q(1, 1), c("2")),
            Err(Error::DegenerateParameter(_))
        ));
        assert!(MeasureSpec::plancherel(q(0, 1)).is_err());
        assert!(MeasureSpec::kingman_t(q(-1, 1)).is_err());
    }

    #[test]
    fn phi_examples() {
        let th = q(7, 3);
        assert_eq!(phi_plancherel(&Partition::empty(), &th), q(1, 1));
        assert_eq!(phi_plancherel(&p("1"), &th), q(1, 1));
        assert_eq!(phi_plancherel(&p("1,1"), &th), q(1, 2));

        assert_eq!(phi_z(&Partition::empty(), &q(1, 1), &c("i")), Ok(q(1, 1)));
        assert_eq!(phi_z(&p("1"), &th, &c("3/2+1/2i")), Ok(q(1, 1)));
        assert_eq!(phi_z(&p("1,1"), &q(1, 1), &c("i")), Ok(q(1, 2)));
        assert!(phi_z(&p("1"), &q(1, 1), &c("0")).is_err());

        let t = q(5, 2);
        assert_eq!(psi_t(&Partition::empty(), &t), q(1, 1));
        assert_eq!(psi_t(&p("1"), &t), q(1, 1));
        let one = q(1, 1);
        let two = q(2, 1);
        assert_eq!(psi_t(&p("2,1"), &t), &t * &t / (&t * &(&t + &one) * (&t + &two)));

        let km = MeasureSpec::KingmanT { t: t.clone() };
        assert_eq!(phi(&km, &Partition::empty()), Ok(q(1, 1)));
        assert_eq!(phi(&km, &p("2")), Ok((&t + &one).recip()));
        let pl = MeasureSpec::PlancherelJack { theta: q(1, 1) };
        assert_eq!(phi(&pl, &p("2,1")), Ok(q(1, 3)));
    }

    #[test]
    fn transition_examples() {
        let t = q(3, 7);
        let one = q(1, 1);
        let km = MeasureSpec::KingmanT { t: t.clone() };
        let pl = MeasureSpec::PlancherelJack { theta: q(1, 1) };
        let zm = MeasureSpec::ZMeasure { theta: q(1, 2), z: c("1/3+i") };
        for m in [&km, &pl, &zm] {
            assert_eq!(transition(m, &Partition::empty(), &p("1")), Ok(one.clone()));
        }
        assert_eq!(transition(&pl, &p("1"), &p("2")), Ok(q(1, 2)));
        assert_eq!(transition(&km, &p("1"), &p("1,1")), Ok(&t / &(&t + &one)));
        assert!(matches!(
            transition(&pl, &p("1"), &p("3")),
            Err(Error::NotAnEdge { .. })
        ));
    }

    #[test]
    fn level_examples() {
        let pl = MeasureSpec::PlancherelJack { theta: q(1, 1) };
        let d0 = level_distribution(&pl, 0).unwrap();
        assert_eq!(d0.weights.len(), 1);
        assert_eq!(d0.get(&Partition::empty()), Some(&q(1, 1)));
        let d2 = level_distribution(&pl, 2).unwrap();
        assert_eq!(d2.get(&p("2")), Some(&q(1, 2)));
        assert_eq!(d2.get(&p("1,1")), Some(&q(1, 2)));

        let t = q(2, 5);
        let one = q(1, 1);
        let km = MeasureSpec::KingmanT { t: t.clone() };
        let d2 = level_distribution(&km, 2).unwrap();
        assert_eq!(d2.get(&p("2")), Some(&(&t + &one).recip()));
        assert_eq!(d2.get(&p("1,1")), Some(&(&t / &(&t + &one))));
        assert_eq!(d2.total(), one);

        let m = CentralMeasure::new(pl).unwrap();
        assert!(matches!(
            m.level_distribution_capped(5, 4),
            Err(Error::CapExceeded { size: 5, cap: 4 })
        ));
    }

    #[test]
    fn harmonicity_examples() {
        let km = MeasureSpec::KingmanT { t: q(9, 4) };
        assert_eq!(check_harmonicity(&km, &p("1")), Ok(true));
        let zm = MeasureSpec::ZMeasure { theta: q(1, 1), z: c("i") };
        assert_eq!(phi(&zm, &p("2")), Ok(q(1, 2)));
        assert_eq!(check_harmonicity(&zm, &p("1")), Ok(true));
        let pl = MeasureSpec::PlancherelJack { theta: q(4, 9) };
        assert_eq!(check_harmonicity(&pl, &Partition::empty()), Ok(true));
        assert_eq!(check_harmonicity(&pl, &p("3,1,1")), Ok(true));
    }
}
