//! Construction of translation-invariant and period-2 boundary laws, plus
//! regime classification for the activity.

mod injective;
mod periodic;
mod ti;

pub use injective::{f_injectivity_check, f_map_pair, sample_ep, InjectivityReport};
pub use periodic::{
    f_map, solve_periodic, sqrt_one_minus_lambda_exists, sqrt_one_minus_lambda_region,
    verify_per_system, PerSystemReport, PeriodicOutcome, PeriodicSolution,
};
pub use ti::{
    classify_ti, fixed_point_residual, lambda_region_ti, solve_ti_diagonal, solve_ti_offdiagonal,
    uniqueness_precheck, EmptyReason, OffDiagonal, OffDiagonalPair, Precheck, TiClassification,
    TiVerdict, TiWitness,
};
