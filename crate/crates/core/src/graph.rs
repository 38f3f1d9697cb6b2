//! Edge multiplicities on the Young graph and the associated dimension
//! functions.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::arith::ExactScalar;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_standard_tableaux, Cell, Partition};

/// Which family of edge multiplicities is in force.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Multiplicity {
    /// Pieri coefficients of Jack functions with parameter θ > 0.
    Jack(ExactScalar),
    /// The θ → 0 degeneration: monomial symmetric functions.
    Kingman,
    /// Every edge has multiplicity 1 (Jack at θ = 1).
    Young,
}

impl Multiplicity {
    pub fn jack(theta: ExactScalar) -> Result<Self> {
        if !theta.is_positive() {
            return Err(Error::DegenerateParameter(format!("theta = {theta} must be > 0")));
        }
        Ok(Multiplicity::Jack(theta))
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Jack(t) => write!(f, "jack(theta={t})"),
            Multiplicity::Kingman => f.write_str("kingman"),
            Multiplicity::Young => f.write_str("young"),
        }
    }
}

/// A pair `lower ↗ upper`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    lower: Partition,
    upper: Partition,
    cell: Cell,
}

impl Edge {
    pub fn new(lower: Partition, upper: Partition) -> Result<Self> {
        match Partition::added_cell(&lower, &upper) {
            Some(cell) => Ok(Edge { lower, upper, cell }),
            None => Err(Error::NotAnEdge { lower, upper }),
        }
    }

    pub fn lower(&self) -> &Partition {
        &self.lower
    }

    pub fn upper(&self) -> &Partition {
        &self.upper
    }

    /// The box `upper ∖ lower`.
    pub fn cell(&self) -> Cell {
        self.cell
    }
}

fn edge_cell(mu: &Partition, lambda: &Partition) -> Result<Cell> {
    Partition::added_cell(mu, lambda).ok_or_else(|| Error::NotAnEdge {
        lower: mu.clone(),
        upper: lambda.clone(),
    })
}

/// Jack edge multiplicity: a product over the boxes `(k, j)` above the added
/// box `(i, j)`, with arm and leg taken in `mu`.
pub fn kappa_jack(mu: &Partition, lambda: &Partition, theta: &ExactScalar) -> Result<ExactScalar> {
    let Cell { row: i, col: j } = edge_cell(mu, lambda)?;
    let col_len = mu.column(j);
    let mut acc = ExactScalar::one();
    for k in 1..i {
        let a = ExactScalar::from(mu.row(k) - j);
        let l = col_len - k;
        let th = |m: usize| ExactScalar::from(m) * theta;
        let a1 = &a + ExactScalar::one();
        let num = (&a + th(l + 2)) * (&a1 + th(l));
        let den = (&a + th(l + 1)) * (&a1 + th(l + 1));
        acc = acc * num / den;
    }
    Ok(acc)
}

/// Kingman edge multiplicity: how many rows of `lambda` have the length of
/// the row that received the new box.
pub fn kappa_kingman(mu: &Partition, lambda: &Partition) -> Result<usize> {
    let cell = edge_cell(mu, lambda)?;
    Ok(lambda.multiplicity(lambda.row(cell.row)))
}

pub fn kappa(spec: &Multiplicity, mu: &Partition, lambda: &Partition) -> Result<ExactScalar> {
    match spec {
        Multiplicity::Jack(theta) => kappa_jack(mu, lambda, theta),
        Multiplicity::Kingman => kappa_kingman(mu, lambda).map(ExactScalar::from),
        Multiplicity::Young => edge_cell(mu, lambda).map(|_| ExactScalar::one()),
    }
}

/// A multiplicity family together with a memo table of κ-dimensions.
///
/// The table is behind a lock, so a `Graph` can be shared between threads.
pub struct Graph {
    spec: Multiplicity,
    dims: RwLock<HashMap<Partition, ExactScalar>>,
}

impl Graph {
    pub fn new(spec: Multiplicity) -> Self {
        let mut dims = HashMap::new();
        dims.insert(Partition::empty(), ExactScalar::one());
        Graph {
            spec,
            dims: RwLock::new(dims),
        }
    }

    pub fn spec(&self) -> &Multiplicity {
        &self.spec
    }

    pub fn kappa(&self, mu: &Partition, lambda: &Partition) -> Result<ExactScalar> {
        kappa(&self.spec, mu, lambda)
    }

    /// κ-dimension via `dim(λ) = Σ_{μ↗λ} dim(μ) κ(μ, λ)`.
    pub fn dim(&self, lambda: &Partition) -> ExactScalar {
        if let Some(d) = self.dims.read().expect("dimension cache").get(lambda) {
            return d.clone();
        }
        let mut total = ExactScalar::zero();
        for corner in lambda.removable_cells() {
            let mu = lambda.without_cell(corner).expect("removable corner");
            let k = self.kappa(&mu, lambda).expect("corner removal is an edge");
            total += self.dim(&mu) * k;
        }
        self.dims
            .write()
            .expect("dimension cache")
            .insert(lambda.clone(), total.clone());
        total
    }

    /// κ-dimension as a sum over all paths `∅ ↗ ... ↗ λ` of the product of
    /// edge multiplicities. Brute force; errors above `cap`.
    pub fn dim_by_paths(&self, lambda: &Partition, cap: usize) -> Result<ExactScalar> {
        let mut total = ExactScalar::zero();
        for tableau in enumerate_standard_tableaux(lambda, cap)? {
            let path = tableau.path();
            let mut weight = ExactScalar::one();
            for w in path.windows(2) {
                weight *= self.kappa(&w[0], &w[1])?;
            }
            total += weight;
        }
        Ok(total)
    }

    /// `dim(μ) κ(μ, λ) / dim(λ)`.
    pub fn cotransition(&self, mu: &Partition, lambda: &Partition) -> Result<ExactScalar> {
        let k = self.kappa(mu, lambda)?;
        let d = self.dim(lambda);
        if d.is_zero() {
            return Err(Error::ZeroDenominator(format!("dim({lambda}) = 0")));
        }
        Ok(self.dim(mu) * k / d)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("spec", &self.spec).finish_non_exhaustive()
    }
}

pub fn dim_kappa(spec: &Multiplicity, lambda: &Partition) -> ExactScalar {
    Graph::new(spec.clone()).dim(lambda)
}

pub fn dim_kappa_by_paths(spec: &Multiplicity, lambda: &Partition, cap: usize) -> Result<ExactScalar> {
    Graph::new(spec.clone()).dim_by_paths(lambda, cap)
}

pub fn cotransition(spec: &Multiplicity, mu: &Partition, lambda: &Partition) -> Result<ExactScalar> {
    Graph::new(spec.clone()).cotransition(mu, lambda)
}
