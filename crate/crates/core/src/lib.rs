//! Central measures on the Young lattice with Jack and Kingman edge
//! multiplicities, and exact level-wise verification of box-entry
//! summation identities.

pub mod arith;
pub mod error;
pub mod graph;
pub mod identities;
pub mod measures;
pub mod partitions;
pub mod sampler;

pub use arith::{factorial, norm_sq, pochhammer, BinaryFloat, ExactScalar, GaussianExact, Pochhammer};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, Multiplicity};
pub use partitions::{Cell, Partition, StandardTableau};
pub use measures::{CentralMeasure, LevelDistribution, MeasureSpec};
pub use identities::{evaluate_identity, ConvergenceReport, IdentityEvaluator, IdentitySpec, SpecialCase};
pub use sampler::{EntryHistogram, PathSample, Sampler};
