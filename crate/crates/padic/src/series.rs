//! The p-adic logarithm and exponential.
//!
//! `log_p(x) = sum (-1)^(n+1) (x-1)^n / n` converges on `|x - 1| < 1`;
//! `exp_p(x) = sum x^n / n!` converges on `|x| < p^(-1/(p-1))`, which as an
//! integer condition on the valuation reads `v >= 1` for odd p and `v >= 2`
//! for p = 2. Truncation is driven by sound lower bounds on future term
//! valuations, so every digit the result claims is honest.

use crate::error::PadicError;
use crate::number::{PadicNumber, Prime, Valuation};
use crate::Result;

/// Largest e with p^e <= n.
fn ilog_p(n: u64, p: u64) -> i64 {
    let mut e = 0;
    let mut acc = p;
    while acc <= n {
        e += 1;
        acc = acc.saturating_mul(p);
    }
    e
}

/// The valuation threshold for the convergence ball of `exp_p`:
/// `|x| < p^(-1/(p-1))` iff `v_p(x) >= 1` (odd p) resp. `>= 2` (p = 2).
pub(crate) fn exp_domain_min_valuation(p: Prime) -> i64 {
    if p.is_odd() {
        1
    } else {
        2
    }
}

/// `log_p(x)` for `|x - 1| < 1`.
pub fn log_p(x: &PadicNumber) -> Result<PadicNumber> {
    let p = x.prime();
    let y = x.sub(&PadicNumber::one(p, x.digits_len().unwrap_or(1)));
    if x.is_zero_like() || !y.valuation().at_least(1) {
        return Err(PadicError::OutOfDomain("log_p (requires |x-1| < 1)"));
    }
    log_one_plus(&y)
}

/// `log_p(1 + y)` for `|y| < 1`.
pub(crate) fn log_one_plus(y: &PadicNumber) -> Result<PadicNumber> {
    let p = y.prime();
    let v = match y.valuation() {
        Valuation::Infinite => return Ok(PadicNumber::zero(p)),
        Valuation::AtLeast(bound) => {
            // log(1 + O(p^b)) = O(p^b) for b >= 1.
            if bound < 1 {
                return Err(PadicError::OutOfDomain("log_p (requires |x-1| < 1)"));
            }
            return Ok(PadicNumber::zero_to_precision(p, bound));
        }
        Valuation::Finite(v) => v,
    };
    if v < 1 {
        return Err(PadicError::OutOfDomain("log_p (requires |x-1| < 1)"));
    }
    let abs_limit = y.abs_precision().expect("nonzero input") + 2;

    let mut sum = y.clone();
    let mut power = y.clone();
    let mut n: u64 = 1;
    loop {
        n += 1;
        // Future terms all have valuation >= n*v - log_p(n), which is
        // non-decreasing in n for v >= 1.
        if n as i64 * v - ilog_p(n, p.get()) > abs_limit {
            break;
        }
        power = power.mul(y);
        let term = power.div(&PadicNumber::from_integer(
            n as i64,
            p,
            64.max(power.digits_len().unwrap_or(64)),
        ))?;
        sum = if n.is_multiple_of(2) {
            sum.sub(&term)
        } else {
            sum.add(&term)
        };
    }
    Ok(sum)
}

/// `exp_p(x)` for `|x| < p^(-1/(p-1))`.
pub fn exp_p(x: &PadicNumber) -> Result<PadicNumber> {
    let p = x.prime();
    let min_v = exp_domain_min_valuation(p);
    let v = match x.valuation() {
        Valuation::Infinite => {
            return Ok(PadicNumber::one(p, 64));
        }
        Valuation::AtLeast(bound) => {
            if bound < min_v {
                return Err(PadicError::OutOfDomain("exp_p (convergence ball)"));
            }
            // exp(O(p^b)) = 1 + O(p^b).
            let one = PadicNumber::one(p, bound.max(1) as u32);
            return Ok(one.add(&PadicNumber::zero_to_precision(p, bound)));
        }
        Valuation::Finite(v) => v,
    };
    if v < min_v {
        return Err(PadicError::OutOfDomain("exp_p (convergence ball)"));
    }
    let abs_limit = x.abs_precision().expect("nonzero input") + 2;

    let one = PadicNumber::one(p, abs_limit.max(1) as u32);
    let mut sum = one.add(x);
    let mut term = x.clone();
    let mut n: u64 = 1;
    loop {
        n += 1;
        // v(x^n / n!) >= n*v - (n - 1)/(p - 1) for odd p, and >= n(v-1) + 1
        // for p = 2; both lower bounds are increasing in n on the domain.
        let future_min = if p.is_odd() {
            (n as i64 * (v * (p.get() as i64 - 1) - 1) + 1) / (p.get() as i64 - 1)
        } else {
            n as i64 * (v - 1) + 1
        };
        if future_min > abs_limit {
            break;
        }
        term = term.mul(x).div(&PadicNumber::from_integer(
            n as i64,
            p,
            64.max(term.digits_len().unwrap_or(64)),
        ))?;
        sum = sum.add(&term);
    }
    Ok(sum)
}
