//! Property tests for the arithmetic contracts: norm laws, digit round-trips,
//! precision soundness under recomputation, square-root existence against
//! exhaustive residue search, and the log/exp identities.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use padic::{
    exp_p, hensel_lift, log_p, poly_eval, sqrt, PadicNumber, Prime, SqrtOutcome, Valuation,
};

const PRIMES: [u64; 5] = [2, 3, 5, 7, 13];

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(PRIMES.to_vec()).prop_map(|p| Prime::new(p).unwrap())
}

/// A random nonzero value over a fixed prime: unit mantissa, bounded valuation.
fn nonzero_with(p: Prime, digits: u32) -> impl Strategy<Value = PadicNumber> {
    (
        -4i64..5,
        prop::collection::vec(0u64..u64::MAX, digits as usize),
    )
        .prop_map(move |(v, raw)| {
            let mut mantissa = BigUint::zero();
            for (i, r) in raw.iter().enumerate() {
                let d = if i == 0 {
                    1 + r % (p.get() - 1).max(1)
                } else {
                    r % p.get()
                };
                mantissa += BigUint::from(d) * p.pow(i as u32);
            }
            PadicNumber::from_parts(p, v, mantissa, digits).unwrap()
        })
}

fn pair(digits: u32) -> impl Strategy<Value = (PadicNumber, PadicNumber)> {
    prime().prop_flat_map(move |p| (nonzero_with(p, digits), nonzero_with(p, digits)))
}

fn exact_valuation(x: &PadicNumber) -> i64 {
    match x.valuation() {
        Valuation::Finite(v) => v,
        other => panic!("expected a nonzero value, got {other:?}"),
    }
}

/// p-adic valuation of a nonzero rational.
fn rational_valuation(r: &BigRational, p: u64) -> i64 {
    fn vp(mut n: BigUint, p: u64) -> i64 {
        let mut v = 0;
        while (&n % p).is_zero() {
            n /= p;
            v += 1;
        }
        v
    }
    vp(r.numer().magnitude().clone(), p) - vp(r.denom().magnitude().clone(), p)
}

fn pow_rat(p: u64, e: i64) -> BigRational {
    let pe = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(pe)
    } else {
        BigRational::new(BigInt::one(), pe)
    }
}

proptest! {
    #[test]
    fn norm_is_multiplicative((x, y) in pair(12)) {
        let xy = x.mul(&y);
        prop_assert_eq!(exact_valuation(&xy), exact_valuation(&x) + exact_valuation(&y));
    }

    #[test]
    fn strong_triangle_inequality((x, y) in pair(12)) {
        let s = x.add(&y);
        let floor = exact_valuation(&x).min(exact_valuation(&y));
        // |x+y| <= max(|x|,|y|), i.e. v(x+y) >= min(v(x), v(y)).
        prop_assert!(s.valuation().at_least(floor));
        // Equality when the norms differ.
        if exact_valuation(&x) != exact_valuation(&y) {
            prop_assert_eq!(exact_valuation(&s), floor);
        }
    }

    #[test]
    fn digits_resum_round_trip(
        p in prime(),
        num in -9999i64..10000,
        den in 1i64..500,
        digits in 4u32..24,
    ) {
        prop_assume!(num != 0);
        let x = PadicNumber::from_rational(&num.into(), &den.into(), p, digits).unwrap();
        let v = exact_valuation(&x);
        // Re-summed expansion minus the input must be divisible by p^(v+N).
        let mut resum = BigUint::zero();
        for (i, d) in x.digits().iter().enumerate() {
            resum += BigUint::from(*d) * p.pow(i as u32);
        }
        let approx = BigRational::from_integer(resum.into()) * pow_rat(p.get(), v);
        let diff = approx - BigRational::new(num.into(), den.into());
        if !diff.is_zero() {
            let agree = rational_valuation(&diff, p.get());
            prop_assert!(
                agree >= v + digits as i64,
                "agreement only to exponent {agree}"
            );
        }
    }

    /// Recomputing at double precision and truncating reproduces the result.
    #[test]
    fn precision_soundness((x, y) in pair(10), op in 0u8..3) {
        let wide_x = widen(&x, 20);
        let wide_y = widen(&y, 20);
        let (lo, hi) = match op {
            0 => (x.add(&y), wide_x.add(&wide_y)),
            1 => (x.mul(&y), wide_x.mul(&wide_y)),
            _ => (x.div(&y).unwrap(), wide_x.div(&wide_y).unwrap()),
        };
        match lo.valuation() {
            Valuation::Finite(v) => {
                prop_assert_eq!(exact_valuation(&hi), v);
                let trunc = hi.truncate(lo.digits_len().unwrap());
                prop_assert_eq!(trunc.mantissa(), lo.mantissa());
            }
            Valuation::AtLeast(bound) => prop_assert!(hi.is_zero_to(bound)),
            Valuation::Infinite => prop_assert!(hi.is_exact_zero()),
        }
    }

    #[test]
    fn sqrt_square_round_trip(x in prime().prop_flat_map(|p| nonzero_with(p, 12))) {
        let a = x.mul(&x);
        match sqrt(&a).unwrap() {
            SqrtOutcome::Roots(r, neg) => {
                prop_assert!(r.mul(&r).sub(&a).is_zero_like());
                prop_assert!(neg.mul(&neg).sub(&a).is_zero_like());
            }
            SqrtOutcome::NoRoot => prop_assert!(false, "square lost its root"),
        }
    }
}

/// Extends a value with zero digits; only used to feed higher-precision runs.
fn widen(x: &PadicNumber, digits: u32) -> PadicNumber {
    PadicNumber::from_parts(
        x.prime(),
        exact_valuation(x),
        x.mantissa().unwrap().clone(),
        digits,
    )
    .unwrap()
}

/// Existence verdicts agree with exhaustive search over residues for every
/// unit with a three-digit expansion.
#[test]
fn sqrt_existence_matches_residue_search() {
    for pv in [3u64, 5] {
        let p = Prime::new(pv).unwrap();
        let m3 = pv.pow(3);
        let m5 = pv.pow(5);
        let squares: std::collections::HashSet<u64> = (0..m5)
            .map(|x| (x as u128 * x as u128 % m5 as u128) as u64)
            .collect();
        for u in 1..m3 {
            if u % pv == 0 {
                continue;
            }
            let a = PadicNumber::from_rational(&u.into(), &BigInt::one(), p, 24).unwrap();
            assert_eq!(
                sqrt(&a).unwrap().exists(),
                squares.contains(&u),
                "p={pv} u={u}"
            );
        }
    }
    // p = 2: units are squares iff 1 mod 8; residues mod 2^5 decide that.
    let p = Prime::new(2).unwrap();
    let squares: std::collections::HashSet<u64> = (0..32u64).map(|x| x * x % 32).collect();
    for u in (1..8u64).step_by(2) {
        let a = PadicNumber::from_rational(&u.into(), &BigInt::one(), p, 24).unwrap();
        assert_eq!(sqrt(&a).unwrap().exists(), squares.contains(&u), "u={u}");
    }
}

/// The five log/exp identities on in-domain samples, all primes.
#[test]
fn log_exp_identities_sample() {
    for pv in PRIMES {
        let p = Prime::new(pv).unwrap();
        let digits = 48u32;
        let min_v = if pv == 2 { 2 } else { 1 };
        for seed in 0..40u64 {
            // x = p^v * unit with v in the convergence range.
            let v = min_v + (seed % 3) as i64;
            let unit = 1 + (seed.wrapping_mul(2654435761).wrapping_add(1)) % (pv.pow(6) - 1);
            let unit = if unit % pv == 0 { unit + 1 } else { unit };
            let x = PadicNumber::from_parts(p, v, unit.into(), digits).unwrap();

            let ex = exp_p(&x).unwrap();
            assert!(ex.norm().is_one(), "p={pv} |exp(x)| != 1");
            let one = PadicNumber::one(p, digits);
            assert_eq!(
                exact_valuation(&ex.sub(&one)),
                v,
                "p={pv} |exp(x)-1| != |x|"
            );
            let lx = log_p(&ex).unwrap();
            let guard = x.abs_precision().unwrap() - 8;
            assert!(lx.sub(&x).is_zero_to(guard), "p={pv} log(exp(x)) != x");

            let y = one.add(&x);
            let ly = log_p(&y).unwrap();
            assert_eq!(exact_valuation(&ly), v, "p={pv} |log(1+x)| != |x|");
            let back = exp_p(&ly).unwrap();
            assert!(
                back.sub(&y).is_zero_to(guard),
                "p={pv} exp(log(1+x)) != 1+x"
            );
        }
    }
}

/// Hensel lifts agree with brute-force roots modulo p^3 and stay congruent to
/// the seed when the derivative is a unit.
#[test]
fn hensel_agrees_with_brute_force() {
    let p = Prime::new(5).unwrap();
    let mk = |n: i64| PadicNumber::from_rational(&n.into(), &BigInt::one(), p, 20).unwrap();
    // 4t^3 - 6(t+1)^2, seed 1: F(1) = 4 - 24 = -20 = 0 mod 5, F'(1) = 12 - 24 = -12.
    let coeffs = vec![mk(-6), mk(-12), mk(-6), mk(4)];
    let root = hensel_lift(&coeffs, &mk(1)).unwrap();
    assert!(poly_eval(&coeffs, &root).is_zero_like());
    let m3 = 125u64;
    let got = u64::try_from(root.mantissa_mod(3).unwrap()).unwrap();
    let brute: Vec<u64> = (0..m3)
        .filter(|&t| {
            let f = (4 * t as i128 * t as i128 * t as i128 - 6 * (t as i128 + 1) * (t as i128 + 1))
                .rem_euclid(m3 as i128);
            f == 0 && t % 5 == 1
        })
        .collect();
    assert!(
        brute.contains(&got),
        "lift {got} not among brute-force roots {brute:?}"
    );
}
