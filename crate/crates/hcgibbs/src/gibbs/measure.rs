//! Weights, normalization, measure values and the consistency check.

use padic::{log_p, Norm, PadicNumber};

use crate::config::{enumerate_admissible, is_admissible, occupied_count, Configuration};
use crate::error::HcError;
use crate::gibbs::law::BoundaryLaw;
use crate::gibbs::params::ModelParams;
use crate::tree::TreeLayout;
use crate::util::worse;
use crate::Result;

/// `lambda^e`.
fn lambda_pow(m: &ModelParams, e: usize) -> PadicNumber {
    m.lambda().padic().pow(e as u32)
}

/// The Hamiltonian value `#occupied * log_p(lambda)`.
///
/// Vacant vertices contribute `log_p(1) = 0`. Exactly-rational activity 1
/// gives exact zero.
pub fn hamiltonian(m: &ModelParams, config: &Configuration) -> Result<PadicNumber> {
    let occupied = occupied_count(config);
    if m.lambda().is_exactly_one() || occupied == 0 {
        return Ok(PadicNumber::zero(m.prime()));
    }
    Ok(log_p(m.lambda().padic())?.scale(occupied as i64))
}

/// `lambda^#occupied * prod_{x in W_volume} z_{state(x),x}` over the ball
/// `V_volume`; the configuration must be admissible.
pub fn unnormalized_weight(
    m: &ModelParams,
    law: &BoundaryLaw,
    layout: &TreeLayout,
    volume: u32,
    config: &Configuration,
) -> Result<PadicNumber> {
    let want = layout.ball_size(volume);
    if config.len() != want {
        return Err(HcError::WrongConfigurationSize {
            got: config.len(),
            want,
        });
    }
    if !is_admissible(layout, config) {
        return Err(HcError::Inadmissible);
    }
    let mut w = lambda_pow(m, occupied_count(config));
    for x in layout.level_range(volume) {
        w = w.mul(&law.state_weight(m, layout, x, config.state(x))?);
    }
    Ok(w)
}

/// The normalizer `Z_volume`: the sum of unnormalized weights over all
/// admissible configurations of the ball.
pub fn partition_function(
    m: &ModelParams,
    law: &BoundaryLaw,
    layout: &TreeLayout,
    volume: u32,
) -> Result<PadicNumber> {
    let mut z = PadicNumber::zero(m.prime());
    for config in enumerate_admissible(layout, volume, &[], m.enum_cap())? {
        z = z.add(&unnormalized_weight(m, law, layout, volume, &config)?);
    }
    Ok(z)
}

/// A normalized finite-volume measure value.
#[derive(Debug, Clone)]
pub struct MeasureValue {
    pub value: PadicNumber,
    pub volume: u32,
}

pub fn measure(
    m: &ModelParams,
    law: &BoundaryLaw,
    layout: &TreeLayout,
    volume: u32,
    config: &Configuration,
) -> Result<MeasureValue> {
    let z = partition_function(m, law, layout, volume)?;
    if z.is_zero_like() {
        return Err(HcError::PartitionZeroLike);
    }
    let w = unnormalized_weight(m, law, layout, volume, config)?;
    Ok(MeasureValue {
        value: w.div(&z)?,
        volume,
    })
}

/// Result of marginalizing volume `n` down to volume `n - 1`.
#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub volume: u32,
    /// Number of inner configurations checked.
    pub checked: usize,
    /// The worst marginalization defect encountered.
    pub max_defect: PadicNumber,
}

impl ConsistencyReport {
    pub fn max_defect_norm(&self) -> Norm {
        self.max_defect.norm()
    }

    /// All defects vanish to `p^(-abs_exp)`.
    pub fn passes(&self, abs_exp: i64) -> bool {
        self.max_defect.is_zero_to(abs_exp)
    }
}

/// Checks that summing the volume-`n` measure over the outer shell reproduces
/// the volume-`n-1` measure, configuration by configuration.
pub fn check_consistency(
    m: &ModelParams,
    law: &BoundaryLaw,
    layout: &TreeLayout,
    n: u32,
) -> Result<ConsistencyReport> {
    assert!(n >= 1, "consistency compares volume n with n - 1");
    assert!(layout.depth() >= n, "layout too shallow for volume n");
    let z_outer = partition_function(m, law, layout, n)?;
    let z_inner = partition_function(m, law, layout, n - 1)?;
    if z_outer.is_zero_like() || z_inner.is_zero_like() {
        return Err(HcError::PartitionZeroLike);
    }

    let mut checked = 0usize;
    let mut max_defect = PadicNumber::zero(m.prime());
    for inner in enumerate_admissible(layout, n - 1, &[], m.enum_cap())? {
        let fixed: Vec<Option<u8>> = inner.states().iter().map(|&s| Some(s)).collect();
        let mut marginal_weight = PadicNumber::zero(m.prime());
        for outer in enumerate_admissible(layout, n, &fixed, m.enum_cap())? {
            marginal_weight = marginal_weight.add(&unnormalized_weight(m, law, layout, n, &outer)?);
        }
        let marginal = marginal_weight.div(&z_outer)?;
        let expected = unnormalized_weight(m, law, layout, n - 1, &inner)?.div(&z_inner)?;
        let defect = marginal.sub(&expected);
        if worse(&defect, &max_defect) {
            max_defect = defect;
        }
        checked += 1;
    }
    Ok(ConsistencyReport {
        volume: n,
        checked,
        max_defect,
    })
}
