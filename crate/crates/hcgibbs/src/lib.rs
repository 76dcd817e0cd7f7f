//! Finite-volume p-adic Gibbs measures for the three-state hard-core model on
//! Cayley trees of order `k`.
//!
//! A configuration assigns each vertex one of the states `{0, 1, 2}`; it is
//! admissible when no edge carries the state sums 0 or 3, i.e. two vacant
//! endpoints and the ordered pairs (1,2)/(2,1) are forbidden. Weights are
//! p-adic: an activity `lambda` in `E_p` multiplies per occupied vertex, and a
//! boundary law assigns each vertex a pair `(z1', z2')` in `E_p^2` whose
//! induced factors weight the outer shell. Laws satisfying the tree
//! compatibility equation generate consistent families of finite-volume
//! measures; this crate builds such laws in closed form (translation-invariant
//! and period-2 solvers, Hensel lifting for the diagonal branch), evaluates
//! and normalizes the measures by exhaustive admissible enumeration, checks
//! consistency and the partition-function recursion by brute force, and
//! classifies boundedness and phase-transition behavior.

mod config;
mod error;
pub mod gibbs;
pub mod solvers;
mod tree;
mod util;

pub use config::{
    enumerate_admissible, is_admissible, occupied_count, occupied_count_with, AdmissibleIter,
    Configuration, RootConvention, DEFAULT_ENUM_CAP,
};
pub use error::HcError;
pub use tree::{build_tree, build_tree_with_cap, TreeLayout, DEFAULT_VERTEX_CAP};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, HcError>;
