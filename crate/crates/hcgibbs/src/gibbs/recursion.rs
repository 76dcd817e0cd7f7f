//! Compatibility residuals, local factors and the partition recursion
//! `Z_(n+1) = A_n * Z_n`.

use padic::{Norm, PadicNumber};

use crate::error::HcError;
use crate::gibbs::law::BoundaryLaw;
use crate::gibbs::measure::partition_function;
use crate::gibbs::params::ModelParams;
use crate::tree::TreeLayout;
use crate::util::worse;
use crate::Result;

/// Residual of the compatibility equation at a non-root vertex `x`:
/// `z_i'(x) - lambda * prod_{y in S(x)} (1 + z_i'(y)) / (z1'(y) + z2'(y))`.
pub fn compatibility_residual(
    m: &ModelParams,
    law: &BoundaryLaw,
    layout: &TreeLayout,
    x: usize,
) -> Result<(PadicNumber, PadicNumber)> {
    let one = PadicNumber::one(m.prime(), m.digits());
    let mut rhs = (m.lambda().padic().clone(), m.lambda().padic().clone());
    for y in layout.children(x) {
        let (z1, z2) = law.z_prime(layout, y)?;
        let denom = z1.add(&z2);
        rhs.0 = rhs.0.mul(&one.add(&z1)).div(&denom)?;
        rhs.1 = rhs.1.mul(&one.add(&z2)).div(&denom)?;
    }
    let (w1, w2) = law.z_prime(layout, x)?;
    Ok((w1.sub(&rhs.0), w2.sub(&rhs.1)))
}

#[derive(Debug, Clone)]
pub struct CompatibilityReport {
    /// Worst residual per inspected vertex.
    pub residuals: Vec<(usize, PadicNumber)>,
    pub max_residual: PadicNumber,
}

impl CompatibilityReport {
    pub fn max_residual_norm(&self) -> Norm {
        self.max_residual.norm()
    }

    pub fn passes(&self, abs_exp: i64) -> bool {
        self.max_residual.is_zero_to(abs_exp)
    }
}

/// Evaluates the compatibility residual at every vertex that has its children
/// inside the layout. The root is skipped: its pair is induced, so its
/// residual vanishes identically.
pub fn verify_compatibility(
    m: &ModelParams,
    law: &BoundaryLaw,
    layout: &TreeLayout,
) -> Result<CompatibilityReport> {
    let mut residuals = Vec::new();
    let mut max_residual = PadicNumber::zero(m.prime());
    for level in 1..layout.depth() {
        for x in layout.level_range(level) {
            let (r1, r2) = compatibility_residual(m, law, layout, x)?;
            let worst = if worse(&r1, &r2) { r1 } else { r2 };
            if worse(&worst, &max_residual) {
                max_residual = worst.clone();
            }
            residuals.push((x, worst));
        }
    }
    Ok(CompatibilityReport {
        residuals,
        max_residual,
    })
}

/// The local factor `a_z(x) = prod_{y in S(x)} z_{0,y} (z1'(y) + z2'(y)) / z_{0,x}`.
///
/// Requires the law to satisfy the compatibility equation at `x` (checked to
/// the model tolerance for non-root vertices; the induced root always does).
pub fn local_factor(
    m: &ModelParams,
    law: &BoundaryLaw,
    layout: &TreeLayout,
    x: usize,
) -> Result<PadicNumber> {
    assert!(
        !layout.children(x).is_empty(),
        "local factor needs the children of x inside the layout"
    );
    if x != 0 {
        let (r1, r2) = compatibility_residual(m, law, layout, x)?;
        let tol = m.tolerance_exp();
        if !r1.is_zero_to(tol) || !r2.is_zero_to(tol) {
            return Err(HcError::CompatibilityViolated { vertex: x });
        }
    }
    let mut acc = law.gauge_at(m.prime(), m.digits(), x)?.inv()?;
    for y in layout.children(x) {
        let (z1, z2) = law.z_prime(layout, y)?;
        acc = acc
            .mul(&law.gauge_at(m.prime(), m.digits(), y)?)
            .mul(&z1.add(&z2));
    }
    Ok(acc)
}

/// The shell product `A_n = prod_{x in W_n} a_z(x)`.
pub fn shell_factor(
    m: &ModelParams,
    law: &BoundaryLaw,
    layout: &TreeLayout,
    n: u32,
) -> Result<PadicNumber> {
    let mut acc = PadicNumber::one(m.prime(), m.digits());
    for x in layout.level_range(n) {
        acc = acc.mul(&local_factor(m, law, layout, x)?);
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct RecursionReport {
    pub volume: u32,
    pub lhs: PadicNumber,
    pub rhs: PadicNumber,
    pub difference: PadicNumber,
}

impl RecursionReport {
    pub fn difference_norm(&self) -> Norm {
        self.difference.norm()
    }

    pub fn passes(&self, abs_exp: i64) -> bool {
        self.difference.is_zero_to(abs_exp)
    }
}

/// Checks `Z_(n+1) = A_n * Z_n` with the left side fully enumerated on
/// `V_(n+1)` and the right side assembled from local factors.
pub fn verify_partition_recursion(
    m: &ModelParams,
    law: &BoundaryLaw,
    layout: &TreeLayout,
    n: u32,
) -> Result<RecursionReport> {
    assert!(
        layout.depth() > n,
        "recursion at volume n needs a layout of depth n + 1"
    );
    let lhs = partition_function(m, law, layout, n + 1)?;
    let z_n = partition_function(m, law, layout, n)?;
    let a_n = shell_factor(m, law, layout, n)?;
    let rhs = a_n.mul(&z_n);
    let difference = lhs.sub(&rhs);
    Ok(RecursionReport {
        volume: n,
        lhs,
        rhs,
        difference,
    })
}
