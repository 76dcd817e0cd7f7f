//! Hensel lifting by Newton iteration.

use crate::error::PadicError;
use crate::number::{PadicNumber, Valuation};
use crate::Result;

/// Horner evaluation of a polynomial given by its coefficient list
/// `coeffs[i] * t^i`.
pub fn poly_eval(coeffs: &[PadicNumber], x: &PadicNumber) -> PadicNumber {
    let p = x.prime();
    let mut acc = PadicNumber::zero(p);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Coefficients of the formal derivative.
pub fn poly_derivative(coeffs: &[PadicNumber]) -> Vec<PadicNumber> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(i as i64))
        .collect()
}

fn integral(x: &PadicNumber) -> bool {
    x.valuation().at_least(0)
}

/// Lifts the seed `a0` to a root of the integral polynomial `coeffs` under the
/// strengthened hypothesis `|F(a0)| < |F'(a0)|^2`.
///
/// That hypothesis subsumes the classical one (`F(a0) = 0`, `F'(a0) != 0`
/// mod p, where `|F'(a0)| = 1`) and also covers seeds whose derivative has
/// positive valuation, which is what square-root-like liftings at p = 2 need.
/// Newton's step `a <- a - F(a)/F'(a)` then converges quadratically; iteration
/// stops once the residual is indistinguishable from zero at working
/// precision, and the result satisfies `|a - a0| < |F'(a0)|`.
pub fn hensel_lift(coeffs: &[PadicNumber], a0: &PadicNumber) -> Result<PadicNumber> {
    if !coeffs.iter().all(integral) || !integral(a0) {
        return Err(PadicError::NotIntegral);
    }
    let deriv = poly_derivative(coeffs);
    let fpa = poly_eval(&deriv, a0);
    let m = match fpa.valuation() {
        Valuation::Finite(m) => m,
        // A zero-like derivative cannot certify |F(a0)| < |F'(a0)|^2.
        _ => return Err(PadicError::HenselPrecondition),
    };
    let fa = poly_eval(coeffs, a0);
    if !fa.valuation().at_least(2 * m + 1) {
        return Err(PadicError::HenselPrecondition);
    }

    // Newton is self-correcting, so iterate on full-width lifts of the
    // approximation instead of letting the precision tracker compound the
    // division by F'. The honest claim comes from the final certificate:
    // |F(a)| <= p^-A with |F'(a)| = p^-m pins the root modulo p^(A - m).
    let width = a0.digits_len().unwrap_or(32);
    let mut a = a0.clone();
    let mut fa = fa;
    let mut steps = 0;
    while !fa.is_zero_like() {
        if steps >= 96 {
            return Err(PadicError::NoConvergence);
        }
        steps += 1;
        let fpa = poly_eval(&deriv, &a);
        a = widen(&a.sub(&fa.div(&fpa)?), width);
        fa = poly_eval(coeffs, &a);
    }
    let certificate = fa
        .abs_precision()
        .unwrap_or_else(|| a.abs_precision().unwrap_or(width as i64) + m);
    Ok(clamp_abs(&a, certificate - m))
}

/// Re-pads a nonzero value with zero digits up to `width`; any lift feeds the
/// next Newton step equally well.
fn widen(x: &PadicNumber, width: u32) -> PadicNumber {
    match (x.valuation(), x.mantissa()) {
        (Valuation::Finite(v), Some(mantissa)) if x.digits_len() != Some(width) => {
            PadicNumber::from_parts(x.prime(), v, mantissa.clone(), width)
                .expect("mantissa already reduced")
        }
        _ => x.clone(),
    }
}

/// Truncates so the claimed absolute precision does not exceed `abs`.
fn clamp_abs(x: &PadicNumber, abs: i64) -> PadicNumber {
    match x.valuation() {
        Valuation::Finite(v) if x.abs_precision() > Some(abs) && abs > v => {
            x.truncate((abs - v) as u32)
        }
        _ => x.clone(),
    }
}
