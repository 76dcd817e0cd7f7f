//! The multiplicative neighborhood `E_p` of 1, and p-adic balls.
//!
//! `E_p = { x : |x|_p = 1 and |x - 1|_p < p^(-1/(p-1)) }` is where `exp_p` and
//! `log_p` are mutually inverse, and every quantity entering a Gibbs weight is
//! required to live there. The fractional radius is never held as a float: as
//! a membership test it is exactly `x = 1 (mod p)` for odd p and `x = 1
//! (mod 4)` for p = 2.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::PadicError;
use crate::number::{PadicNumber, Valuation};
use crate::series::exp_domain_min_valuation;
use crate::Result;

/// Decides membership in `E_p`.
///
/// Errors when the stored precision cannot determine the leading digit
/// (or the two leading digits, for p = 2).
pub fn in_ep(x: &PadicNumber) -> Result<bool> {
    match x.valuation() {
        Valuation::Infinite => Ok(false),
        Valuation::AtLeast(bound) => {
            if bound >= 1 {
                Ok(false) // |x| < 1, not a unit
            } else {
                Err(PadicError::InsufficientPrecision("membership in E_p"))
            }
        }
        Valuation::Finite(v) => {
            if v != 0 {
                return Ok(false);
            }
            let lead = if x.prime().is_odd() { 1 } else { 2 };
            match x.mantissa_mod(lead) {
                Some(m) => Ok(m == 1u32.into()),
                None => Err(PadicError::InsufficientPrecision("membership in E_p")),
            }
        }
    }
}

/// A `PadicNumber` certified to lie in `E_p`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpElement(PadicNumber);

impl EpElement {
    pub fn new(x: PadicNumber) -> Result<Self> {
        if in_ep(&x)? {
            Ok(EpElement(x))
        } else {
            Err(PadicError::OutOfDomain("E_p"))
        }
    }

    pub fn value(&self) -> &PadicNumber {
        &self.0
    }

    pub fn into_inner(self) -> PadicNumber {
        self.0
    }
}

impl fmt::Display for EpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Radius of a p-adic ball: a power of p, or the series convergence threshold
/// `p^(-1/(p-1))` kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Radius {
    /// `r = p^exp`.
    Pow(i64),
    /// `r = p^(-1/(p-1))`.
    ConvergenceThreshold,
}

/// The open ball `B(a, r) = { x : |x - a| < r }`.
#[derive(Debug, Clone)]
pub struct Ball {
    pub center: PadicNumber,
    pub radius: Radius,
}

impl Ball {
    pub fn new(center: PadicNumber, radius: Radius) -> Self {
        Ball { center, radius }
    }

    /// Membership test, decidable whenever the operands' precision pins the
    /// difference's valuation against the radius.
    pub fn contains(&self, x: &PadicNumber) -> Result<bool> {
        let d = x.sub(&self.center);
        let min_v = match self.radius {
            // |d| < p^e  <=>  v(d) > -e
            Radius::Pow(e) => -e + 1,
            Radius::ConvergenceThreshold => exp_domain_min_valuation(d.prime()),
        };
        match d.valuation() {
            Valuation::Infinite => Ok(true),
            Valuation::Finite(v) => Ok(v >= min_v),
            Valuation::AtLeast(bound) => {
                if bound >= min_v {
                    Ok(true)
                } else {
                    Err(PadicError::InsufficientPrecision("ball membership"))
                }
            }
        }
    }
}
