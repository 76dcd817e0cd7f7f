//! Boundedness of the measure family and phase-transition classification.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use padic::{Norm, Prime};

use crate::config::enumerate_admissible;
use crate::error::HcError;
use crate::gibbs::law::BoundaryLaw;
use crate::gibbs::measure::{measure, partition_function};
use crate::gibbs::params::ModelParams;
use crate::gibbs::recursion::verify_compatibility;
use crate::tree::TreeLayout;
use crate::Result;

/// `p^e` as an exact rational.
pub fn pow_rational(p: u64, e: i64) -> BigRational {
    let pe = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(pe)
    } else {
        BigRational::new(BigInt::one(), pe)
    }
}

/// Norm profile of a compatible measure family at volume `n`.
#[derive(Debug, Clone)]
pub struct BoundednessReport {
    /// `|Z_n|` from the closed form: the product of local-factor norms over
    /// `V_(n-1)`, each `1` for odd p and `2^-k` for p = 2.
    pub znorm: BigRational,
    /// The common `|mu(sigma)|`, the reciprocal profile.
    pub munorm: BigRational,
    pub bounded: bool,
    /// `|Z_n|` of the actually enumerated normalizer, when the volume is
    /// within the cap. For p = 2 (and p = 3) this differs from the profile by
    /// the root's boundary factors, which the closed form does not count.
    pub measured_znorm: Option<Norm>,
    /// The measured common measure norm, same caveat.
    pub measured_munorm: Option<Norm>,
}

/// Evaluates the boundedness profile of the family generated by `law`.
///
/// The law must satisfy the compatibility equation on the layout (checked to
/// the model tolerance). The profile is the closed-form product over
/// `V_(n-1)` of local-factor norms; measured norms of the enumerated
/// normalizer and of one measure value are reported alongside when feasible.
/// Boundedness of the family is equivalent to `p != 2`.
pub fn boundedness_norms(
    m: &ModelParams,
    law: &BoundaryLaw,
    layout: &TreeLayout,
    n: u32,
) -> Result<BoundednessReport> {
    assert!(n >= 1, "norm profile needs volume at least 1");
    assert!(layout.depth() >= n, "layout too shallow");
    let compat = verify_compatibility(m, law, layout)?;
    if !compat.passes(m.tolerance_exp()) {
        let vertex = compat
            .residuals
            .iter()
            .find(|(_, r)| !r.is_zero_to(m.tolerance_exp()))
            .map(|(x, _)| *x)
            .unwrap_or(0);
        return Err(HcError::CompatibilityViolated { vertex });
    }

    let p = m.prime();
    let inner = layout.ball_size(n - 1) as i64;
    let (znorm, munorm, bounded) = if p.is_odd() {
        (BigRational::one(), BigRational::one(), true)
    } else {
        let e = m.order() as i64 * inner;
        (pow_rational(2, -e), pow_rational(2, e), false)
    };

    let within_cap = layout.ball_size(n) <= m.enum_cap();
    let (measured_znorm, measured_munorm) = if within_cap {
        let z = partition_function(m, law, layout, n)?;
        let sample = enumerate_admissible(layout, n, &[], m.enum_cap())?
            .next()
            .expect("admissible configurations exist");
        let mu = measure(m, law, layout, n, &sample)?;
        (Some(z.norm()), Some(mu.value.norm()))
    } else {
        (None, None)
    };

    Ok(BoundednessReport {
        znorm,
        munorm,
        bounded,
        measured_znorm,
        measured_munorm,
    })
}

/// Phase-transition verdict over a set of constructed measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transition {
    None,
    Quasi,
}

impl std::fmt::Display for Transition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Transition::None => write!(f, "none"),
            Transition::Quasi => write!(f, "quasi"),
        }
    }
}

/// Classifies the transition given how many distinct translation-invariant
/// and periodic measures were constructed.
///
/// Every measure of the family is bounded exactly when `p != 2`, so two or
/// more measures at odd p give a quasi transition (two bounded measures),
/// while no pairing of bounded against unbounded can occur at all: a strong
/// transition is impossible, and for p = 2 there is no bounded measure to
/// report.
pub fn detect_transition(p: Prime, ti_measures: usize, periodic_measures: usize) -> Transition {
    if !p.is_odd() {
        return Transition::None;
    }
    if ti_measures + periodic_measures >= 2 {
        Transition::Quasi
    } else {
        Transition::None
    }
}
