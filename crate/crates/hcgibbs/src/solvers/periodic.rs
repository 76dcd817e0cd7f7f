//! Period-2 (sublattice-alternating) solutions for order `k = 2`.
//!
//! Diagonal period-2 laws are 2-cycles of `f(z) = lambda ((1+z)/(2z))^2`.
//! Removing the fixed points from `f(f(z)) = z` leaves the quadratic
//! `lambda z^2 - 2(2 - lambda) z + lambda = 0` with roots
//! `z± = (2 - lambda ± 2 sqrt(1 - lambda)) / lambda`, so a genuine 2-cycle
//! exists exactly when `1 - lambda` is a nonzero square.

use padic::{sqrt, EpElement, Norm, PadicNumber, SqrtOutcome, Valuation};

use crate::error::HcError;
use crate::gibbs::{BoundaryLaw, ModelParams};
use crate::util::worse;
use crate::Result;

/// The one-step tree map on the diagonal, `f(z) = lambda ((1+z)/(2z))^k`.
pub fn f_map(m: &ModelParams, z: &PadicNumber) -> Result<PadicNumber> {
    let one = PadicNumber::one(m.prime(), m.digits());
    let ratio = one.add(z).div(&z.scale(2))?;
    Ok(m.lambda().padic().mul(&ratio.pow(m.order())))
}

/// Digit-pattern predicate for `sqrt(1 - lambda)` to exist and be nonzero:
/// `1 - lambda` must have even positive valuation `2n` with a leading digit
/// that is a quadratic residue (odd p), resp. a unit congruent to 1 mod 8
/// (p = 2, where membership in `E_2` already forces valuation at least 2).
pub fn sqrt_one_minus_lambda_region(m: &ModelParams) -> Result<bool> {
    let p = m.prime();
    let u = m.lambda().one_minus_lambda();
    match u.valuation() {
        Valuation::Infinite => Ok(false),
        Valuation::AtLeast(_) => Err(HcError::Undecidable(
            "1 - lambda vanishes to working precision",
        )),
        Valuation::Finite(v) => {
            if v % 2 != 0 || v < 2 {
                return Ok(false);
            }
            if p.is_odd() {
                let d = u.digit(0).expect("nonzero values expose digits");
                Ok(padic::is_quadratic_residue(&d.into(), p)?)
            } else {
                match u.mantissa_mod(3) {
                    Some(r) => Ok(r == 1u32.into()),
                    None => Err(HcError::Undecidable(
                        "p = 2 squareness needs three digits of 1 - lambda",
                    )),
                }
            }
        }
    }
}

/// Direct route to the same predicate: ask the square-root solver whether
/// `1 - lambda` is a nonzero square. Must agree with the digit pattern.
pub fn sqrt_one_minus_lambda_exists(m: &ModelParams) -> Result<bool> {
    let u = m.lambda().one_minus_lambda();
    if u.is_exact_zero() {
        return Ok(false);
    }
    if u.is_zero_like() {
        return Err(HcError::Undecidable(
            "1 - lambda vanishes to working precision",
        ));
    }
    Ok(sqrt(&u)?.exists())
}

/// A verified period-2 law: the even sublattice carries the diagonal pair
/// `(z+, z+)`, the odd one `(z-, z-)`; the swapped companion is the same
/// cycle entered at the other phase.
#[derive(Debug, Clone)]
pub struct PeriodicSolution {
    pub z_plus: EpElement,
    pub z_minus: EpElement,
}

impl PeriodicSolution {
    pub fn law(&self) -> BoundaryLaw {
        BoundaryLaw::period_two(
            (self.z_plus.clone(), self.z_plus.clone()),
            (self.z_minus.clone(), self.z_minus.clone()),
        )
    }

    pub fn swapped(&self) -> PeriodicSolution {
        PeriodicSolution {
            z_plus: self.z_minus.clone(),
            z_minus: self.z_plus.clone(),
        }
    }

    pub fn swapped_law(&self) -> BoundaryLaw {
        self.swapped().law()
    }
}

#[derive(Debug, Clone)]
pub enum PeriodicOutcome {
    /// No genuine 2-cycle; the reason is the failed predicate.
    Empty(&'static str),
    Solution(PeriodicSolution),
}

/// Solves for the period-2 pair at `k = 2` and verifies the cycle:
/// `z± in E_p`, `f(z+) = z-`, `f(z-) = z+`, `f(z±) != z±`, and the Vieta
/// identities `z+ z- = 1`, `lambda (z+ + z-) = 2 (2 - lambda)`.
pub fn solve_periodic(m: &ModelParams) -> Result<PeriodicOutcome> {
    let p = m.prime();
    if m.order() != 2 {
        return Err(HcError::UnsupportedRegime(
            "period-2 closed form is for order k = 2",
        ));
    }
    let u = m.lambda().one_minus_lambda();
    if u.is_exact_zero() {
        return Ok(PeriodicOutcome::Empty(
            "1 - lambda = 0: the cycle collapses",
        ));
    }
    if u.is_zero_like() {
        return Err(HcError::Undecidable(
            "1 - lambda vanishes to working precision",
        ));
    }
    let root = match sqrt(&u)? {
        SqrtOutcome::NoRoot => return Ok(PeriodicOutcome::Empty("1 - lambda is not a square")),
        SqrtOutcome::Roots(r, _) => r,
    };

    let digits = m.digits();
    let lambda = m.lambda().padic();
    let two_minus_lambda = PadicNumber::from_integer(2, p, digits).sub(lambda);
    let z_plus = two_minus_lambda.add(&root.scale(2)).div(lambda)?;
    let z_minus = two_minus_lambda.sub(&root.scale(2)).div(lambda)?;

    let tol = m.tolerance_exp();
    let cycle_a = f_map(m, &z_plus)?.sub(&z_minus);
    let cycle_b = f_map(m, &z_minus)?.sub(&z_plus);
    let fixed = f_map(m, &z_plus)?.sub(&z_plus);
    let one = PadicNumber::one(p, digits);
    let vieta_prod = z_plus.mul(&z_minus).sub(&one);
    let vieta_sum = lambda
        .mul(&z_plus.add(&z_minus))
        .sub(&two_minus_lambda.scale(2));
    if !cycle_a.is_zero_to(tol)
        || !cycle_b.is_zero_to(tol)
        || !vieta_prod.is_zero_to(tol)
        || !vieta_sum.is_zero_to(tol)
    {
        return Err(HcError::Undecidable(
            "period-2 cycle checks failed at working precision",
        ));
    }
    if fixed.is_zero_like() {
        return Err(HcError::Undecidable(
            "period-2 roots collapse onto a fixed point",
        ));
    }

    Ok(PeriodicOutcome::Solution(PeriodicSolution {
        z_plus: EpElement::new(z_plus)?,
        z_minus: EpElement::new(z_minus)?,
    }))
}

/// Residuals of the alternating two-level system at a candidate solution.
#[derive(Debug, Clone)]
pub struct PerSystemReport {
    /// Residuals of the four equations, worst first after sorting by the
    /// caller; order here: z1, z2 from the odd level, t1, t2 from the even.
    pub residuals: [PadicNumber; 4],
    pub max_residual: PadicNumber,
    /// Whether the inequality constraints z_i != t_i hold.
    pub distinct: bool,
    /// `|z+ - z-|`.
    pub separation: Norm,
}

impl PerSystemReport {
    pub fn passes(&self, abs_exp: i64) -> bool {
        self.distinct && self.max_residual.is_zero_to(abs_exp)
    }
}

/// Substitutes `(z1, z2) = (z+, z+)`, `(t1, t2) = (z-, z-)` into the
/// two-level system and reports all four residuals plus the distinctness
/// constraint.
pub fn verify_per_system(m: &ModelParams, sol: &PeriodicSolution) -> Result<PerSystemReport> {
    let z = sol.z_plus.value();
    let t = sol.z_minus.value();
    let (za, zb) = cross_level_residual(m, z, t)?;
    let (ta, tb) = cross_level_residual(m, t, z)?;
    let residuals = [za, zb, ta, tb];
    let max_residual = residuals
        .iter()
        .cloned()
        .reduce(|a, b| if worse(&b, &a) { b } else { a })
        .expect("four residuals");
    let sep = z.sub(t);
    Ok(PerSystemReport {
        residuals,
        max_residual,
        distinct: !sep.is_zero_like(),
        separation: sep.norm(),
    })
}

/// Residuals of `z_i = lambda ((1 + t_i)/(t1 + t2))^k` for the diagonal
/// substitution `z_i = z`, `t_i = t`.
fn cross_level_residual(
    m: &ModelParams,
    z: &PadicNumber,
    t: &PadicNumber,
) -> Result<(PadicNumber, PadicNumber)> {
    let one = PadicNumber::one(m.prime(), m.digits());
    let ratio = one.add(t).div(&t.scale(2))?;
    let rhs = m.lambda().padic().mul(&ratio.pow(m.order()));
    Ok((z.sub(&rhs), z.sub(&rhs)))
}
