//! Square roots in `Q_p`.
//!
//! `x^2 = a` is solvable for nonzero `a = p^v * u` iff `v` is even and the
//! unit part is a square: for odd `p` the leading digit must be a quadratic
//! residue; for `p = 2` the unit must be `1 (mod 8)`, i.e. digits one and two
//! of the expansion vanish. Roots are produced by Newton lifting of a seed
//! residue and are returned as a pair `(r, -r)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::PadicError;
use crate::number::{inv_mod, PadicNumber, Prime, Valuation};
use crate::residue::sqrt_mod_p;
use crate::Result;

/// Existence verdict and, when solvable, both roots.
#[derive(Debug, Clone)]
pub enum SqrtOutcome {
    NoRoot,
    Roots(PadicNumber, PadicNumber),
}

impl SqrtOutcome {
    pub fn exists(&self) -> bool {
        matches!(self, SqrtOutcome::Roots(..))
    }

    /// Selects the root whose leading digit is `residue` (mod p).
    ///
    /// The two roots of a unit square have opposite leading digits for odd p,
    /// so this picks a branch the way closed-form expansions do.
    pub fn root_congruent_to(&self, residue: u64) -> Option<&PadicNumber> {
        match self {
            SqrtOutcome::NoRoot => None,
            SqrtOutcome::Roots(a, b) => [a, b]
                .into_iter()
                .find(|r| r.digit(0) == Some(residue % r.prime().get())),
        }
    }
}

/// Both square roots of `a`, or `NoRoot`, to the precision the input allows.
///
/// Exact zero yields the double root zero. A zero-to-precision input has no
/// decidable leading digits, which is reported as an error.
pub fn sqrt(a: &PadicNumber) -> Result<SqrtOutcome> {
    let p = a.prime();
    let (v, n) = match a.valuation() {
        Valuation::Infinite => {
            return Ok(SqrtOutcome::Roots(
                PadicNumber::zero(p),
                PadicNumber::zero(p),
            ))
        }
        Valuation::AtLeast(_) => {
            return Err(PadicError::InsufficientPrecision(
                "square root of a zero-to-precision value",
            ))
        }
        Valuation::Finite(v) => (v, a.digits_len().expect("nonzero has digits")),
    };
    if v % 2 != 0 {
        return Ok(SqrtOutcome::NoRoot);
    }
    let u = a.mantissa().expect("nonzero has a mantissa");
    let root = if p.is_odd() {
        match unit_sqrt_odd(u, p, n) {
            Some(r) => r,
            None => return Ok(SqrtOutcome::NoRoot),
        }
    } else {
        if n < 3 {
            return Err(PadicError::InsufficientPrecision(
                "square root needs the unit known mod 8 when p = 2",
            ));
        }
        if u % BigUint::from(8u32) != BigUint::one() {
            return Ok(SqrtOutcome::NoRoot);
        }
        unit_sqrt_two(u, p, n)
    };
    // For p = 2 perturbing a root by 2^(N-1) preserves the square mod 2^N,
    // so the root carries one digit less than the input.
    let digits = if p.is_odd() { n } else { n - 1 };
    let modulus = p.pow(digits);
    let r = PadicNumber::from_parts(p, v / 2, root % &modulus, digits)?;
    let neg = r.neg();
    Ok(SqrtOutcome::Roots(r, neg))
}

/// Newton lift of a Tonelli-Shanks seed to `digits` base-p digits, odd p.
fn unit_sqrt_odd(u: &BigUint, p: Prime, digits: u32) -> Option<BigUint> {
    let lead: u64 = (u % p.get()).try_into().expect("digit fits");
    let seed = sqrt_mod_p(lead, p)?;
    let modulus = p.pow(digits);
    let inv2 = inv_mod(&BigUint::from(2u32), &modulus).expect("2 is a unit");
    let mut r = BigUint::from(seed);
    for _ in 0..128 {
        if (&r * &r) % &modulus == u % &modulus {
            return Some(r);
        }
        let rinv = inv_mod(&r, &modulus).expect("root stays a unit");
        r = (&r + u * rinv % &modulus) % &modulus * &inv2 % &modulus;
    }
    unreachable!("Newton doubles agreement every step");
}

/// Newton lift for p = 2 of a unit `u = 1 (mod 8)`, working with guard digits.
fn unit_sqrt_two(u: &BigUint, p: Prime, digits: u32) -> BigUint {
    let work = digits + 8;
    let modulus = p.pow(work);
    let target = p.pow(digits + 2);
    let u = u % &modulus;
    let mut r = BigUint::one();
    for _ in 0..160 {
        if (&r * &r) % &target == &u % &target {
            return r;
        }
        let rinv = inv_mod(&r, &modulus).expect("odd values are units mod 2^w");
        let s = &r + &u * rinv % &modulus;
        debug_assert!((&s % 2u32).is_zero());
        r = (s >> 1) % &modulus;
    }
    unreachable!("Newton doubles agreement every step");
}
