//! Finite-volume Gibbs distributions for the hard-core model: weights,
//! normalization, consistency checking, the partition-function recursion, and
//! boundedness classification.

mod law;
mod measure;
mod norms;
mod params;
mod recursion;

pub use law::{BoundaryLaw, Gauge, LawForm};
pub use measure::{
    check_consistency, hamiltonian, measure, partition_function, unnormalized_weight,
    ConsistencyReport, MeasureValue,
};
pub use norms::{
    boundedness_norms, detect_transition, pow_rational, BoundednessReport, Transition,
};
pub use params::{Activity, ModelParams, PRECISION_GUARD};
pub use recursion::{
    local_factor, verify_compatibility, verify_partition_recursion, CompatibilityReport,
    RecursionReport,
};
