//! Randomized support for the injectivity of the tree map
//! `F(z) = ((1+z1)/(z1+z2), (1+z2)/(z1+z2))` on `E_p^2`, the property that
//! confines periodic laws to period at most 2.

use num_bigint::BigUint;
use num_traits::Zero;
use rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;

use padic::{PadicNumber, Prime};

use crate::gibbs::ModelParams;
use crate::Result;

/// `F` applied to a pair.
pub fn f_map_pair(
    m: &ModelParams,
    z: &(PadicNumber, PadicNumber),
) -> Result<(PadicNumber, PadicNumber)> {
    let one = PadicNumber::one(m.prime(), m.digits());
    let denom = z.0.add(&z.1);
    Ok((one.add(&z.0).div(&denom)?, one.add(&z.1).div(&denom)?))
}

/// A uniformly random element of `E_p` to `digits` digits:
/// `1 + p * t` (odd p) or `1 + 4t` (p = 2).
pub fn sample_ep(rng: &mut impl Rng, p: Prime, digits: u32) -> PadicNumber {
    let step = if p.is_odd() { 1 } else { 2 };
    let mut tail = BigUint::zero();
    for _ in step..digits {
        tail = tail * p.get() + rng.next_u64() % p.get();
    }
    let mantissa = BigUint::from(1u32) + tail * p.pow(step);
    PadicNumber::from_parts(p, 0, mantissa, digits).expect("1 + p*t is a reduced unit")
}

#[derive(Debug, Clone)]
pub struct InjectivityReport {
    pub samples: usize,
    /// Unequal pairs that mapped to equal images (expected none).
    pub collisions: usize,
    /// Failures of the algebraic inversion `z_i = F_i(z) * S - 1` with
    /// `S = 2 / (F1 + F2 - 1)` (expected none).
    pub inversion_failures: usize,
}

impl InjectivityReport {
    pub fn clean(&self) -> bool {
        self.collisions == 0 && self.inversion_failures == 0
    }
}

/// Draws `samples` random unequal pairs `z != t` in `E_p^2`, checks
/// `F(z) != F(t)`, and verifies on each instance that `F` is invertible in
/// closed form: `F1 + F2 = 1 + 2/(z1 + z2)` recovers the sum, then each
/// component, so equal images force equal arguments.
pub fn f_injectivity_check(
    m: &ModelParams,
    samples: usize,
    seed: u64,
) -> Result<InjectivityReport> {
    let p = m.prime();
    let digits = m.digits();
    let tol = m.tolerance_exp();
    let mut rng = Pcg64Mcg::seed_from_u64(seed);
    let one = PadicNumber::one(p, digits);
    let two = PadicNumber::from_integer(2, p, digits);

    let mut collisions = 0usize;
    let mut inversion_failures = 0usize;
    let mut done = 0usize;
    while done < samples {
        let z = (
            sample_ep(&mut rng, p, digits),
            sample_ep(&mut rng, p, digits),
        );
        let t = (
            sample_ep(&mut rng, p, digits),
            sample_ep(&mut rng, p, digits),
        );
        if z.0.sub(&t.0).is_zero_like() && z.1.sub(&t.1).is_zero_like() {
            continue; // indistinguishable pair, resample
        }
        done += 1;

        let fz = f_map_pair(m, &z)?;
        let ft = f_map_pair(m, &t)?;
        if fz.0.sub(&ft.0).is_zero_like() && fz.1.sub(&ft.1).is_zero_like() {
            collisions += 1;
            continue;
        }

        // Inversion identity on the z instance.
        let sum = z.0.add(&z.1);
        let identity = fz.0.add(&fz.1).sub(&one).mul(&sum).sub(&two);
        let s_back = two.div(&fz.0.add(&fz.1).sub(&one))?;
        let z0_back = fz.0.mul(&s_back).sub(&one);
        let z1_back = fz.1.mul(&s_back).sub(&one);
        if !identity.is_zero_to(tol)
            || !z0_back.sub(&z.0).is_zero_to(tol)
            || !z1_back.sub(&z.1).is_zero_to(tol)
        {
            inversion_failures += 1;
        }
    }
    Ok(InjectivityReport {
        samples: done,
        collisions,
        inversion_failures,
    })
}
