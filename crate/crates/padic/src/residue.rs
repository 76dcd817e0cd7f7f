//! Quadratic residues and modular square roots.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::PadicError;
use crate::number::Prime;
use crate::Result;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the standard 12-base witness set).
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Euler's criterion: `a` is a nonzero quadratic residue modulo the odd
/// prime `p` iff `a^((p-1)/2) = 1 (mod p)`.
pub fn is_quadratic_residue(a: &BigInt, p: Prime) -> Result<bool> {
    if !p.is_odd() {
        return Err(PadicError::OutOfDomain(
            "is_quadratic_residue (p must be odd)",
        ));
    }
    let pm = BigInt::from(p.get());
    let mut r = a % &pm;
    if r.is_negative() {
        r += &pm;
    }
    if r.is_zero() {
        return Err(PadicError::OutOfDomain(
            "is_quadratic_residue (p divides a)",
        ));
    }
    let e = BigInt::from((p.get() - 1) / 2);
    Ok(r.modpow(&e, &pm).is_one())
}

/// A square root of `a` modulo the odd prime `p`, by Tonelli-Shanks.
///
/// Returns the smaller of the two roots for determinism; `None` when `a` is a
/// non-residue. `a` must not be divisible by `p`.
pub fn sqrt_mod_p(a: u64, p: Prime) -> Option<u64> {
    let pm = p.get();
    assert!(p.is_odd(), "sqrt_mod_p requires an odd prime");
    let a = a % pm;
    assert!(a != 0, "sqrt_mod_p requires a unit");
    if pow_mod(a, (pm - 1) / 2, pm) != 1 {
        return None;
    }
    let root = if pm % 4 == 3 {
        pow_mod(a, (pm + 1) / 4, pm)
    } else {
        tonelli_shanks(a, pm)
    };
    Some(root.min(pm - root))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    // Write p - 1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q & 1 == 0 {
        q >>= 1;
        s += 1;
    }
    // Any non-residue works as the base of the 2-power subgroup.
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
            debug_assert!(i < m);
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}
