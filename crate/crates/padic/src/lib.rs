//! Exact p-adic arithmetic with explicit precision tracking.
//!
//! A nonzero element of `Q_p` is stored in canonical form `u * p^v` where the
//! mantissa `u` is a unit known to `N` base-p digits, so the stored value means
//! `u * p^v + O(p^(v+N))`. The p-adic norm of such a value is exactly `p^(-v)`,
//! independent of the precision cap. Exact zero and "zero to precision" are
//! distinct kinds: the first arises only from constructors and exact identities,
//! the second from cancellation, and consumers that sum many terms need to tell
//! them apart.
//!
//! On top of the ring operations the crate provides square roots (existence per
//! the classical criterion on the valuation and leading digits, computed by
//! Newton lifting), Hensel lifting for integral polynomials under the
//! strengthened hypothesis `|F(a0)| < |F'(a0)|^2`, the p-adic logarithm and
//! exponential with sound series truncation, quadratic-residue tests, and the
//! multiplicative neighborhood `E_p = { x : |x|=1, |x-1| < p^(-1/(p-1)) }` in
//! which `exp_p`/`log_p` are mutually inverse.

mod ep;
mod error;
mod hensel;
mod number;
mod residue;
mod series;
mod sqrt;

pub use ep::{in_ep, Ball, EpElement, Radius};
pub use error::PadicError;
pub use hensel::{hensel_lift, poly_derivative, poly_eval};
pub use number::{Norm, PadicNumber, Prime, Valuation};
pub use residue::{is_quadratic_residue, sqrt_mod_p};
pub use series::{exp_p, log_p};
pub use sqrt::{sqrt, SqrtOutcome};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, PadicError>;
