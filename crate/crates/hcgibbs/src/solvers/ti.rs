//! Translation-invariant solutions of the tree fixed-point equation
//! `z_i = lambda ((1 + z_i) / (z1 + z2))^k`.

use num_bigint::BigInt;
use num_traits::One;

use padic::{
    hensel_lift, is_quadratic_residue, sqrt, EpElement, Norm, PadicNumber, Prime, SqrtOutcome,
    Valuation,
};

use crate::error::HcError;
use crate::gibbs::ModelParams;
use crate::util::worst_of;
use crate::Result;

/// Verdict of the sufficient uniqueness conditions for the full order/prime
/// range: a single translation-invariant measure is guaranteed when `p = 2`
/// with `4 | k`, or when p is odd and does not divide `k^2 - 4`. The
/// conditions are sufficient only, so everything else is `Undetermined`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precheck {
    Unique,
    Undetermined,
}

pub fn uniqueness_precheck(p: Prime, k: u32) -> Precheck {
    let unique = if p.is_odd() {
        let disc = (k as i128) * (k as i128) - 4;
        disc.rem_euclid(p.get() as i128) != 0
    } else {
        k.is_multiple_of(4)
    };
    if unique {
        Precheck::Unique
    } else {
        Precheck::Undetermined
    }
}

/// Residuals of the fixed-point equation at a candidate pair.
pub fn fixed_point_residual(
    m: &ModelParams,
    z1: &PadicNumber,
    z2: &PadicNumber,
) -> Result<(PadicNumber, PadicNumber)> {
    let one = PadicNumber::one(m.prime(), m.digits());
    let denom = z1.add(z2);
    let r1 = z1.sub(
        &m.lambda()
            .padic()
            .mul(&one.add(z1).div(&denom)?.pow(m.order())),
    );
    let r2 = z2.sub(
        &m.lambda()
            .padic()
            .mul(&one.add(z2).div(&denom)?.pow(m.order())),
    );
    Ok((r1, r2))
}

fn binomial(k: u32, j: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        acc = acc * BigInt::from(k - i) / BigInt::from(i + 1);
    }
    acc
}

/// The diagonal solution `z1 = z2 = t`: the unique root of
/// `2^k t^(k+1) - lambda (1 + t)^k` near 1, produced by Hensel lifting from
/// the seed `t = 1`.
///
/// For `k = 2` and odd `p > 3` the classical hypothesis holds automatically
/// (`F(1) = 4(1-lambda)` vanishes mod p while `F'(1) = 8 + 4(1-lambda)` does
/// not); other orders and `p = 2` are served opportunistically whenever the
/// strengthened hypothesis `|F(1)| < |F'(1)|^2` holds, e.g. `p = 2` with
/// `lambda = 1 (mod 32)` at `k = 2`. An exactly-rational activity of 1 yields
/// exactly `t = 1`.
pub fn solve_ti_diagonal(m: &ModelParams) -> Result<EpElement> {
    let p = m.prime();
    let digits = m.digits();
    let k = m.order();
    let lambda = m.lambda().padic();

    let mut coeffs: Vec<PadicNumber> = (0..=k)
        .map(|j| {
            let c = -binomial(k, j);
            PadicNumber::from_rational(&c, &BigInt::one(), p, digits).map(|b| b.mul(lambda))
        })
        .collect::<std::result::Result<_, _>>()?;
    coeffs.push(PadicNumber::from_rational(
        &BigInt::from(2).pow(k),
        &BigInt::one(),
        p,
        digits,
    )?);

    let root = hensel_lift(&coeffs, &PadicNumber::one(p, digits))?;
    Ok(EpElement::new(root)?)
}

/// Membership of the activity in the three-solution region: `16*lambda - 16`
/// must have positive even valuation `2n` with a leading digit `d` such that
/// `d / 3` is a quadratic residue mod p.
///
/// Requires `p > 3`. An exactly-rational activity decides membership at any
/// depth; a digit-list activity that is 1 to working precision cannot be
/// decided and errors.
pub fn lambda_region_ti(m: &ModelParams) -> Result<bool> {
    let p = m.prime();
    if p.get() <= 3 {
        return Err(HcError::UnsupportedRegime(
            "the three-solution region is defined for p > 3",
        ));
    }
    let w = m.lambda().sixteen_lambda_minus_sixteen();
    match w.valuation() {
        Valuation::Infinite => Ok(false),
        Valuation::AtLeast(_) => Err(HcError::Undecidable(
            "16*lambda - 16 vanishes to working precision",
        )),
        Valuation::Finite(v) => {
            if v < 2 || v % 2 != 0 {
                return Ok(false);
            }
            let d = w.digit(0).expect("nonzero values expose digits");
            // d/3 is a residue iff 3d is: they differ by the square 9.
            let a = BigInt::from(3 * d as u128 % p.get() as u128);
            Ok(is_quadratic_residue(&a, p)?)
        }
    }
}

/// Why the off-diagonal solver returned no pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmptyReason {
    /// The discriminant vanishes exactly (activity 1): the pair degenerates
    /// onto the diagonal solution.
    DegenerateDiagonal,
    /// `2(lambda - 4 + sqrt(lambda(lambda+8)))` is not a square.
    NotASquare,
}

#[derive(Debug, Clone)]
pub struct OffDiagonalPair {
    pub z_plus: EpElement,
    pub z_minus: EpElement,
    /// Worst fixed-point residual across both components.
    pub residual: PadicNumber,
}

#[derive(Debug, Clone)]
pub enum OffDiagonal {
    Empty(EmptyReason),
    Pair(OffDiagonalPair),
}

/// The off-diagonal pair for `k = 2`, `p > 3`.
///
/// Pipeline: `s1 = sqrt(lambda)` on the branch congruent to 1 and
/// `s2 = sqrt(lambda + 8)` on the branch congruent to 3, so that the sum
/// branch `z1 + z2 = (lambda + s1 s2)/2` is the one with `|z1 + z2 - 2| < 1`;
/// the discriminant `D = 2(lambda - 4 + s1 s2)` then decides existence, and
/// `z = (s1 + s2)(2 s1 +- sqrt(D))/8` gives the two components. The two
/// solutions of the system are `(z+, z-)` and its swap.
pub fn solve_ti_offdiagonal(m: &ModelParams) -> Result<OffDiagonal> {
    let p = m.prime();
    if m.order() != 2 {
        return Err(HcError::UnsupportedRegime(
            "off-diagonal closed form is for order k = 2",
        ));
    }
    if p.get() <= 3 {
        return Err(HcError::UnsupportedRegime(
            "off-diagonal closed form requires p > 3",
        ));
    }
    let digits = m.digits();
    let lambda = m.lambda().padic();
    let int = |n: i64| PadicNumber::from_integer(n, p, digits);

    let s1 = sqrt(lambda)?
        .root_congruent_to(1)
        .cloned()
        .ok_or(HcError::Undecidable("sqrt(lambda) branch"))?;
    let s2 = sqrt(&lambda.add(&int(8)))?
        .root_congruent_to(3)
        .cloned()
        .ok_or(HcError::Undecidable("sqrt(lambda + 8) branch"))?;
    let s = s1.mul(&s2);

    let disc = lambda.sub(&int(4)).add(&s).scale(2);
    if disc.is_zero_like() {
        if m.lambda().is_exactly_one() {
            return Ok(OffDiagonal::Empty(EmptyReason::DegenerateDiagonal));
        }
        return Err(HcError::Undecidable(
            "discriminant vanishes to working precision",
        ));
    }
    let root = match sqrt(&disc)? {
        SqrtOutcome::NoRoot => return Ok(OffDiagonal::Empty(EmptyReason::NotASquare)),
        SqrtOutcome::Roots(r, _) => r,
    };

    let front = s1.add(&s2);
    let eighth = int(8).inv()?;
    let z_plus = front.mul(&s1.scale(2).add(&root)).mul(&eighth);
    let z_minus = front.mul(&s1.scale(2).sub(&root)).mul(&eighth);

    let (r1, r2) = fixed_point_residual(m, &z_plus, &z_minus)?;
    let residual = worst_of(r1, r2);
    Ok(OffDiagonal::Pair(OffDiagonalPair {
        z_plus: EpElement::new(z_plus)?,
        z_minus: EpElement::new(z_minus)?,
        residual,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TiVerdict {
    Unique,
    ThreeTi,
    Unknown,
}

impl std::fmt::Display for TiVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TiVerdict::Unique => write!(f, "unique"),
            TiVerdict::ThreeTi => write!(f, "three-ti"),
            TiVerdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// A verified translation-invariant solution.
#[derive(Debug, Clone)]
pub struct TiWitness {
    pub z1: EpElement,
    pub z2: EpElement,
    pub residual_norm: Norm,
}

#[derive(Debug, Clone)]
pub struct TiClassification {
    pub verdict: TiVerdict,
    pub witnesses: Vec<TiWitness>,
    /// Outcome of the valuation/digit region predicate, when applicable.
    pub region_member: Option<bool>,
    /// Whether the region predicate agreed with direct discriminant
    /// squareness. The direct test decides the verdict.
    pub region_agrees: bool,
}

fn witness(m: &ModelParams, z1: EpElement, z2: EpElement) -> Result<TiWitness> {
    let (r1, r2) = fixed_point_residual(m, z1.value(), z2.value())?;
    let r = worst_of(r1, r2);
    if !r.is_zero_to(m.tolerance_exp()) {
        return Err(HcError::CompatibilityViolated { vertex: 0 });
    }
    Ok(TiWitness {
        z1,
        z2,
        residual_norm: r.norm(),
    })
}

/// Full translation-invariant classification.
///
/// For `k = 2`, `p > 3` the verdict is `Unique` or `ThreeTi` with residual-
/// verified witnesses (diagonal alone, or diagonal plus the off-diagonal pair
/// and its swap). Outside that regime the diagonal is still attempted through
/// the strengthened Hensel route, and the verdict falls back to the
/// sufficient-condition precheck: `Unique` when it applies, `Unknown`
/// otherwise.
pub fn classify_ti(m: &ModelParams) -> Result<TiClassification> {
    let p = m.prime();
    let k = m.order();

    if k == 2 && p.get() > 3 {
        let diag = solve_ti_diagonal(m)?;
        let diagonal = witness(m, diag.clone(), diag)?;
        let region_member = lambda_region_ti(m)?;
        match solve_ti_offdiagonal(m)? {
            OffDiagonal::Pair(pair) => {
                let w1 = witness(m, pair.z_plus.clone(), pair.z_minus.clone())?;
                let w2 = witness(m, pair.z_minus, pair.z_plus)?;
                Ok(TiClassification {
                    verdict: TiVerdict::ThreeTi,
                    witnesses: vec![diagonal, w1, w2],
                    region_member: Some(region_member),
                    region_agrees: region_member,
                })
            }
            OffDiagonal::Empty(_) => Ok(TiClassification {
                verdict: TiVerdict::Unique,
                witnesses: vec![diagonal],
                region_member: Some(region_member),
                region_agrees: !region_member,
            }),
        }
    } else {
        let witnesses = match solve_ti_diagonal(m) {
            Ok(diag) => vec![witness(m, diag.clone(), diag)?],
            Err(_) => Vec::new(),
        };
        let verdict = match uniqueness_precheck(p, k) {
            Precheck::Unique => TiVerdict::Unique,
            Precheck::Undetermined => TiVerdict::Unknown,
        };
        Ok(TiClassification {
            verdict,
            witnesses,
            region_member: None,
            region_agrees: true,
        })
    }
}
