//! Model parameters: the activity and the tree order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use padic::{EpElement, PadicNumber, Prime};

use crate::config::DEFAULT_ENUM_CAP;
use crate::Result;

/// Digits of slack between working precision and the exponent at which
/// residuals are required to vanish.
pub const PRECISION_GUARD: i64 = 8;

/// The activity `lambda`, always a member of `E_p`.
///
/// When the activity was given as a rational the exact value is kept next to
/// the capped expansion: expressions such as `16*lambda - 16` and `1 - lambda`
/// can then be formed without cancellation, so region predicates stay
/// decidable arbitrarily close to (and exactly at) `lambda = 1`.
#[derive(Debug, Clone)]
pub struct Activity {
    value: EpElement,
    exact: Option<BigRational>,
}

impl Activity {
    pub fn from_rational(num: &BigInt, den: &BigInt, p: Prime, digits: u32) -> Result<Self> {
        let value = EpElement::new(PadicNumber::from_rational(num, den, p, digits)?)?;
        Ok(Activity {
            value,
            exact: Some(BigRational::new(num.clone(), den.clone())),
        })
    }

    pub fn from_integer(n: i64, p: Prime, digits: u32) -> Result<Self> {
        Self::from_rational(&BigInt::from(n), &BigInt::one(), p, digits)
    }

    /// An activity known only through its digit expansion.
    pub fn from_padic(value: EpElement) -> Self {
        Activity { value, exact: None }
    }

    pub fn padic(&self) -> &PadicNumber {
        self.value.value()
    }

    pub fn ep(&self) -> &EpElement {
        &self.value
    }

    pub fn exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn prime(&self) -> Prime {
        self.padic().prime()
    }

    /// Working relative precision, inherited from the activity's expansion.
    pub fn digits(&self) -> u32 {
        self.padic().digits_len().expect("activity is a unit")
    }

    pub fn is_exactly_one(&self) -> bool {
        self.exact.as_ref().is_some_and(|r| r.is_one())
    }

    /// `a*lambda + b` through the exact value when one is available, so an
    /// activity equal to a rational gives exact zeros instead of
    /// zero-to-precision fuzz.
    pub fn affine(&self, a: i64, b: i64) -> PadicNumber {
        let p = self.prime();
        let digits = self.digits();
        if let Some(r) = &self.exact {
            let combo =
                r * BigRational::from_integer(a.into()) + BigRational::from_integer(b.into());
            if combo.is_zero() {
                return PadicNumber::zero(p);
            }
            return PadicNumber::from_rational(combo.numer(), combo.denom(), p, digits)
                .expect("denominator nonzero");
        }
        let av = self.padic().scale(a);
        av.add(&PadicNumber::from_integer(b, p, digits))
    }

    /// `16*lambda - 16`, the quantity whose valuation pattern governs the
    /// off-diagonal translation-invariant regime.
    pub fn sixteen_lambda_minus_sixteen(&self) -> PadicNumber {
        self.affine(16, -16)
    }

    /// `1 - lambda`, the quantity under the square root in the period-2 solver.
    pub fn one_minus_lambda(&self) -> PadicNumber {
        self.affine(-1, 1)
    }
}

/// Order of the tree plus the activity, with the enumeration cap threaded
/// along since every brute-force evaluation needs it.
#[derive(Debug, Clone)]
pub struct ModelParams {
    k: u32,
    lambda: Activity,
    enum_cap: usize,
}

impl ModelParams {
    pub fn new(k: u32, lambda: Activity) -> Self {
        assert!(k >= 1, "tree order must be at least 1");
        ModelParams {
            k,
            lambda,
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }

    pub fn with_enum_cap(mut self, cap: usize) -> Self {
        self.enum_cap = cap;
        self
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> &Activity {
        &self.lambda
    }

    pub fn prime(&self) -> Prime {
        self.lambda.prime()
    }

    pub fn digits(&self) -> u32 {
        self.lambda.digits()
    }

    pub fn enum_cap(&self) -> usize {
        self.enum_cap
    }

    /// Residuals and defects must vanish to this absolute exponent.
    pub fn tolerance_exp(&self) -> i64 {
        self.digits() as i64 - PRECISION_GUARD
    }
}
