//! The capped-precision p-adic number type and its ring operations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::PadicError;
use crate::residue::is_prime_u64;
use crate::Result;

/// A validated prime, used as the base of every [`PadicNumber`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(PadicError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    /// `p^e` as a big integer.
    pub fn pow(self, e: u32) -> BigUint {
        BigUint::from(self.0).pow(e)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The p-adic valuation of a stored value, as far as the precision cap can tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    /// `v_p(x) = v` exactly.
    Finite(i64),
    /// Only the bound `v_p(x) >= a` is known (zero-to-precision values).
    AtLeast(i64),
    /// `x` is exactly zero.
    Infinite,
}

impl Valuation {
    /// True when the stored information guarantees `v_p(x) >= e`.
    pub fn at_least(self, e: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= e,
            Valuation::AtLeast(a) => a >= e,
            Valuation::Infinite => true,
        }
    }

    /// The exact valuation, if one is known.
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }
}

/// A p-adic norm value `p^exp`, or an upper bound on one.
///
/// Norms are exact rationals; no tolerance is involved in comparing them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Norm {
    p: u64,
    class: NormClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormClass {
    /// `|x| = 0`.
    Zero,
    /// `|x| = p^exp` exactly.
    Exact(i64),
    /// `|x| <= p^exp`; the value is zero to precision and only a bound is known.
    AtMost(i64),
}

impl Norm {
    pub fn class(&self) -> NormClass {
        self.class
    }

    /// True when the norm is guaranteed to be `<= p^exp`.
    pub fn le_pow(&self, exp: i64) -> bool {
        match self.class {
            NormClass::Zero => true,
            NormClass::Exact(e) | NormClass::AtMost(e) => e <= exp,
        }
    }

    /// True when the norm is known to be exactly `p^exp`.
    pub fn is_pow(&self, exp: i64) -> bool {
        self.class == NormClass::Exact(exp)
    }

    pub fn is_one(&self) -> bool {
        self.is_pow(0)
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            NormClass::Zero => write!(f, "0"),
            NormClass::Exact(0) => write!(f, "1"),
            NormClass::Exact(e) => write!(f, "{}^{}", self.p, e),
            NormClass::AtMost(e) => write!(f, "<={}^{}", self.p, e),
        }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    /// The number 0, known exactly.
    ExactZero,
    /// A value known only to be `O(p^bound)`: every digit below `p^bound`
    /// has cancelled or was never known.
    ApproxZero { bound: i64 },
    /// `mantissa * p^valuation + O(p^(valuation + digits))` with
    /// `0 < mantissa < p^digits` and `p` not dividing `mantissa`.
    Nonzero {
        valuation: i64,
        mantissa: BigUint,
        digits: u32,
    },
}

/// An element of `Q_p` with a capped relative precision.
#[derive(Debug, Clone)]
pub struct PadicNumber {
    p: Prime,
    repr: Repr,
}

impl PadicNumber {
    // ----- constructors -----

    /// The exact zero of `Q_p`.
    pub fn zero(p: Prime) -> Self {
        PadicNumber {
            p,
            repr: Repr::ExactZero,
        }
    }

    /// A value known only to be `O(p^bound)`.
    pub fn zero_to_precision(p: Prime, bound: i64) -> Self {
        PadicNumber {
            p,
            repr: Repr::ApproxZero { bound },
        }
    }

    /// The unit 1 carried to `digits` base-p digits.
    pub fn one(p: Prime, digits: u32) -> Self {
        PadicNumber {
            p,
            repr: Repr::Nonzero {
                valuation: 0,
                mantissa: BigUint::one(),
                digits,
            },
        }
    }

    /// Builds `mantissa * p^valuation` from already-reduced parts.
    pub fn from_parts(p: Prime, valuation: i64, mantissa: BigUint, digits: u32) -> Result<Self> {
        if digits == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        if mantissa.is_zero() || mantissa >= p.pow(digits) || (&mantissa % p.get()).is_zero() {
            return Err(PadicError::NotAUnit);
        }
        Ok(PadicNumber {
            p,
            repr: Repr::Nonzero {
                valuation,
                mantissa,
                digits,
            },
        })
    }

    /// The p-adic expansion of `num/den` to `digits` relative digits.
    ///
    /// The valuation is `v_p(num) - v_p(den)` and the mantissa is the modular
    /// quotient of the unit parts, so the result is exact to the cap.
    pub fn from_rational(num: &BigInt, den: &BigInt, p: Prime, digits: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(PadicError::ZeroDenominator);
        }
        if digits == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        if num.is_zero() {
            return Ok(Self::zero(p));
        }
        let (vn, un) = strip_p(&num.magnitude().clone(), p);
        let (vd, ud) = strip_p(&den.magnitude().clone(), p);
        let modulus = p.pow(digits);
        let inv = inv_mod(&(&ud % &modulus), &modulus).expect("unit part is invertible");
        let mut u = (un % &modulus) * inv % &modulus;
        if num.sign() * den.sign() == Sign::Minus {
            u = &modulus - u;
        }
        Ok(PadicNumber {
            p,
            repr: Repr::Nonzero {
                valuation: vn as i64 - vd as i64,
                mantissa: u,
                digits,
            },
        })
    }

    pub fn from_integer(n: i64, p: Prime, digits: u32) -> Self {
        Self::from_rational(&BigInt::from(n), &BigInt::one(), p, digits)
            .expect("integer input cannot fail")
    }

    // ----- inspectors -----

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::ExactZero)
    }

    /// True for exact zero and for zero-to-precision values.
    pub fn is_zero_like(&self) -> bool {
        matches!(self.repr, Repr::ExactZero | Repr::ApproxZero { .. })
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::ExactZero => Valuation::Infinite,
            Repr::ApproxZero { bound } => Valuation::AtLeast(*bound),
            Repr::Nonzero { valuation, .. } => Valuation::Finite(*valuation),
        }
    }

    /// `|x|_p`, exact for nonzero and exact-zero values, an upper bound otherwise.
    pub fn norm(&self) -> Norm {
        let class = match &self.repr {
            Repr::ExactZero => NormClass::Zero,
            Repr::ApproxZero { bound } => NormClass::AtMost(-bound),
            Repr::Nonzero { valuation, .. } => NormClass::Exact(-valuation),
        };
        Norm {
            p: self.p.get(),
            class,
        }
    }

    /// True when the value is a unit (`|x| = 1`).
    pub fn is_unit(&self) -> bool {
        matches!(self.repr, Repr::Nonzero { valuation: 0, .. })
    }

    /// Relative precision in digits, for nonzero values.
    pub fn digits_len(&self) -> Option<u32> {
        match &self.repr {
            Repr::Nonzero { digits, .. } => Some(*digits),
            _ => None,
        }
    }

    /// The exponent `A` such that the value is pinned modulo `p^A`:
    /// `v + N` for nonzero values, the bound for zero-to-precision values,
    /// `None` (no finite limit) for exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::ExactZero => None,
            Repr::ApproxZero { bound } => Some(*bound),
            Repr::Nonzero {
                valuation, digits, ..
            } => Some(valuation + *digits as i64),
        }
    }

    pub fn mantissa(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Nonzero { mantissa, .. } => Some(mantissa),
            _ => None,
        }
    }

    /// Base-p digit `j` of the mantissa (digit 0 is the leading unit digit).
    pub fn digit(&self, j: u32) -> Option<u64> {
        match &self.repr {
            Repr::Nonzero {
                mantissa, digits, ..
            } if j < *digits => {
                let q = mantissa / self.p.pow(j);
                let d = &q % self.p.get();
                Some(d.try_into().expect("digit fits in u64"))
            }
            _ => None,
        }
    }

    /// All known mantissa digits, least significant first.
    pub fn digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Nonzero {
                mantissa, digits, ..
            } => {
                let mut out = Vec::with_capacity(*digits as usize);
                let mut rest = mantissa.clone();
                let p = BigUint::from(self.p.get());
                for _ in 0..*digits {
                    let (q, r) = rest.div_rem(&p);
                    out.push(r.try_into().expect("digit fits in u64"));
                    rest = q;
                }
                out
            }
            _ => Vec::new(),
        }
    }

    /// The mantissa reduced modulo `p^e` (requires `e` known digits).
    pub fn mantissa_mod(&self, e: u32) -> Option<BigUint> {
        match &self.repr {
            Repr::Nonzero {
                mantissa, digits, ..
            } if e <= *digits => Some(mantissa % self.p.pow(e)),
            _ => None,
        }
    }

    // ----- precision predicates -----

    /// True when the stored information guarantees `|x| <= p^(-abs_exp)`.
    pub fn is_zero_to(&self, abs_exp: i64) -> bool {
        self.valuation().at_least(abs_exp)
    }

    /// True when `|x - y| <= p^(-abs_exp)` is guaranteed.
    pub fn agrees_with(&self, other: &Self, abs_exp: i64) -> bool {
        self.sub(other).is_zero_to(abs_exp)
    }

    /// Drops relative precision to at most `digits`.
    pub fn truncate(&self, digits: u32) -> Self {
        match &self.repr {
            Repr::Nonzero {
                valuation,
                mantissa,
                digits: have,
            } if *have > digits && digits > 0 => PadicNumber {
                p: self.p,
                repr: Repr::Nonzero {
                    valuation: *valuation,
                    mantissa: mantissa % self.p.pow(digits),
                    digits,
                },
            },
            _ => self.clone(),
        }
    }

    // ----- arithmetic -----

    fn check_same_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "p-adic operands must share the same prime");
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Nonzero {
                valuation,
                mantissa,
                digits,
            } => PadicNumber {
                p: self.p,
                repr: Repr::Nonzero {
                    valuation: *valuation,
                    mantissa: self.p.pow(*digits) - mantissa,
                    digits: *digits,
                },
            },
            _ => self.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_same_prime(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::ExactZero, _) => rhs.clone(),
            (_, Repr::ExactZero) => self.clone(),
            (Repr::ApproxZero { bound: a }, Repr::ApproxZero { bound: b }) => {
                Self::zero_to_precision(self.p, (*a).min(*b))
            }
            (Repr::ApproxZero { bound }, Repr::Nonzero { .. }) => {
                add_fuzz_nonzero(self.p, *bound, rhs)
            }
            (Repr::Nonzero { .. }, Repr::ApproxZero { bound }) => {
                add_fuzz_nonzero(self.p, *bound, self)
            }
            (
                Repr::Nonzero {
                    valuation: vx,
                    mantissa: ux,
                    digits: nx,
                },
                Repr::Nonzero {
                    valuation: vy,
                    mantissa: uy,
                    digits: ny,
                },
            ) => {
                // The sum is pinned modulo p^A where A is the weaker of the
                // two absolute precisions; cancellation below that is honest
                // loss and produces a zero-to-precision value.
                let abs = (vx + *nx as i64).min(vy + *ny as i64);
                let base = (*vx).min(*vy);
                let len = (abs - base) as u32;
                let modulus = self.p.pow(len);
                let mut s = BigUint::zero();
                if vx - base < len as i64 {
                    s += ux * self.p.pow((vx - base) as u32) % &modulus;
                }
                if vy - base < len as i64 {
                    s += uy * self.p.pow((vy - base) as u32) % &modulus;
                }
                s %= &modulus;
                if s.is_zero() {
                    return Self::zero_to_precision(self.p, abs);
                }
                let (shift, unit) = strip_p(&s, self.p);
                PadicNumber {
                    p: self.p,
                    repr: Repr::Nonzero {
                        valuation: base + shift as i64,
                        mantissa: unit,
                        digits: len - shift,
                    },
                }
            }
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_same_prime(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::ExactZero, _) | (_, Repr::ExactZero) => Self::zero(self.p),
            (Repr::ApproxZero { bound: a }, Repr::ApproxZero { bound: b }) => {
                Self::zero_to_precision(self.p, a + b)
            }
            (Repr::ApproxZero { bound }, Repr::Nonzero { valuation, .. })
            | (Repr::Nonzero { valuation, .. }, Repr::ApproxZero { bound }) => {
                Self::zero_to_precision(self.p, bound + valuation)
            }
            (
                Repr::Nonzero {
                    valuation: vx,
                    mantissa: ux,
                    digits: nx,
                },
                Repr::Nonzero {
                    valuation: vy,
                    mantissa: uy,
                    digits: ny,
                },
            ) => {
                let digits = (*nx).min(*ny);
                let mantissa = ux * uy % self.p.pow(digits);
                PadicNumber {
                    p: self.p,
                    repr: Repr::Nonzero {
                        valuation: vx + vy,
                        mantissa,
                        digits,
                    },
                }
            }
        }
    }

    /// Multiplicative inverse. Fails for anything indistinguishable from zero.
    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Nonzero {
                valuation,
                mantissa,
                digits,
            } => {
                let modulus = self.p.pow(*digits);
                let mantissa = inv_mod(mantissa, &modulus).expect("mantissa is a unit");
                Ok(PadicNumber {
                    p: self.p,
                    repr: Repr::Nonzero {
                        valuation: -valuation,
                        mantissa,
                        digits: *digits,
                    },
                })
            }
            _ => Err(PadicError::DivisionByZeroLike),
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.check_same_prime(rhs);
        match (&self.repr, &rhs.repr) {
            (_, Repr::ExactZero) | (_, Repr::ApproxZero { .. }) => {
                Err(PadicError::DivisionByZeroLike)
            }
            (Repr::ExactZero, _) => Ok(Self::zero(self.p)),
            (Repr::ApproxZero { bound }, Repr::Nonzero { valuation, .. }) => {
                Ok(Self::zero_to_precision(self.p, bound - valuation))
            }
            _ => Ok(self.mul(&rhs.inv()?)),
        }
    }

    /// Integer power with a small nonnegative exponent.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let digits = self.digits_len().unwrap_or(1);
            return Self::one(self.p, digits);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales by an `i64` (exact small-integer multiplication).
    pub fn scale(&self, k: i64) -> Self {
        let digits = self.digits_len().unwrap_or(1).max(1);
        self.mul(&Self::from_integer(k, self.p, digits))
    }
}

/// The sum of `O(p^bound)` and a nonzero value.
fn add_fuzz_nonzero(p: Prime, bound: i64, x: &PadicNumber) -> PadicNumber {
    match &x.repr {
        Repr::Nonzero {
            valuation,
            mantissa,
            digits,
        } => {
            if *valuation >= bound {
                return PadicNumber::zero_to_precision(p, bound);
            }
            let abs = bound.min(valuation + *digits as i64);
            let len = (abs - valuation) as u32;
            PadicNumber {
                p,
                repr: Repr::Nonzero {
                    valuation: *valuation,
                    mantissa: mantissa % p.pow(len),
                    digits: len,
                },
            }
        }
        _ => unreachable!("caller guarantees a nonzero operand"),
    }
}

/// Splits `n` (nonzero) as `p^v * unit`.
fn strip_p(n: &BigUint, p: Prime) -> (u32, BigUint) {
    debug_assert!(!n.is_zero());
    let pb = BigUint::from(p.get());
    let mut v = 0u32;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&pb);
        if r.is_zero() {
            v += 1;
            rest = q;
        } else {
            return (v, rest);
        }
    }
}

/// Modular inverse via the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: &BigUint, modulus: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(modulus.clone());
    let ext = a.extended_gcd(&m);
    if !ext.gcd.is_one() {
        return None;
    }
    let mut x = ext.x % &m;
    if x.is_negative() {
        x += &m;
    }
    Some(x.magnitude().clone())
}

impl Add for &PadicNumber {
    type Output = PadicNumber;
    fn add(self, rhs: Self) -> PadicNumber {
        PadicNumber::add(self, rhs)
    }
}

impl Sub for &PadicNumber {
    type Output = PadicNumber;
    fn sub(self, rhs: Self) -> PadicNumber {
        PadicNumber::sub(self, rhs)
    }
}

impl Mul for &PadicNumber {
    type Output = PadicNumber;
    fn mul(self, rhs: Self) -> PadicNumber {
        PadicNumber::mul(self, rhs)
    }
}

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        PadicNumber::neg(self)
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::ExactZero => write!(f, "0"),
            Repr::ApproxZero { bound } => write!(f, "O({}^{})", self.p, bound),
            Repr::Nonzero { valuation, .. } => {
                let digits: Vec<String> = self.digits().iter().map(u64::to_string).collect();
                write!(f, "[{}]@{}", digits.join(","), valuation)
            }
        }
    }
}

// ----- serialization -----
//
// Nonzero values serialize as {p, valuation, digits, precision}; the two zero
// kinds keep only what they know.

#[derive(Serialize, Deserialize)]
struct Encoded {
    p: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    valuation: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    digits: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    precision: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    zero_to_precision: Option<i64>,
}

impl Serialize for PadicNumber {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let enc = match &self.repr {
            Repr::ExactZero => Encoded {
                p: self.p.get(),
                valuation: None,
                digits: None,
                precision: None,
                zero_to_precision: None,
            },
            Repr::ApproxZero { bound } => Encoded {
                p: self.p.get(),
                valuation: None,
                digits: None,
                precision: None,
                zero_to_precision: Some(*bound),
            },
            Repr::Nonzero {
                valuation, digits, ..
            } => Encoded {
                p: self.p.get(),
                valuation: Some(*valuation),
                digits: Some(self.digits()),
                precision: Some(*digits),
                zero_to_precision: None,
            },
        };
        enc.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PadicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let enc = Encoded::deserialize(de)?;
        let p = Prime::new(enc.p).map_err(D::Error::custom)?;
        if let Some(bound) = enc.zero_to_precision {
            return Ok(PadicNumber::zero_to_precision(p, bound));
        }
        match (enc.valuation, enc.digits) {
            (Some(v), Some(ds)) => {
                let precision = enc.precision.unwrap_or(ds.len() as u32);
                if ds.len() as u32 != precision {
                    return Err(D::Error::custom("digit count does not match precision"));
                }
                let mut mantissa = BigUint::zero();
                for &d in ds.iter().rev() {
                    if d >= p.get() {
                        return Err(D::Error::custom("digit out of range"));
                    }
                    mantissa = mantissa * p.get() + d;
                }
                PadicNumber::from_parts(p, v, mantissa, precision).map_err(D::Error::custom)
            }
            (None, None) => Ok(PadicNumber::zero(p)),
            _ => Err(D::Error::custom("valuation and digits must come together")),
        }
    }
}
