//! Exact roots of unity.
//!
//! Twists and their square roots are always roots of unity, and the theorems
//! about them (parity, branch covariance, the squared-eigenvalue law) are
//! exact statements. Phases are therefore stored as the rational exponent `t`
//! of `e^{2 pi i t}` and only rendered to floating point at the edges.

use std::fmt;
use std::ops::{Div, Mul};

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A root of unity `e^{2 pi i * num/den}`, stored reduced with `0 <= num/den < 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactPhase(Rational64);

fn reduce_mod_one(r: Rational64) -> Rational64 {
    let f = r.floor();
    r - f
}

impl ExactPhase {
    /// The trivial phase 1.
    pub fn one() -> Self {
        ExactPhase(Rational64::zero())
    }

    /// Largest accepted exponent numerator/denominator. Keeps every
    /// denominator the engines can combine (products and ratios of up to
    /// three phases) inside `i64`.
    pub const MAX_EXPONENT: i64 = 1_000_000;

    /// Phase from an integer exponent pair.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidPhase { num, den, reason: "zero denominator" });
        }
        let in_range = |x: i64| x.checked_abs().is_some_and(|a| a <= Self::MAX_EXPONENT);
        if !in_range(num) || !in_range(den) {
            return Err(Error::InvalidPhase {
                num,
                den,
                reason: "exponent out of range (|n|, |d| must be <= 10^6)",
            });
        }
        Ok(ExactPhase(reduce_mod_one(Rational64::new(num, den))))
    }

    pub fn from_ratio(r: Rational64) -> Self {
        ExactPhase(reduce_mod_one(r))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn exponent(&self) -> Rational64 {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    /// Complex conjugate, i.e. the multiplicative inverse.
    pub fn inv(&self) -> Self {
        ExactPhase(reduce_mod_one(-self.0))
    }

    /// Integer power, exact on the exponent.
    pub fn pow(&self, k: i32) -> Self {
        // i128 intermediate so num * k cannot overflow for reduced exponents
        let num = i128::from(*self.0.numer()) * i128::from(k);
        let den = i128::from(*self.0.denom());
        let num = num.rem_euclid(den);
        ExactPhase(Rational64::new(num as i64, den as i64))
    }

    /// The canonical square-root branch: exponent `num/(2*den)`, which lies in
    /// `[0, 1/2)`. Squaring it always recovers `self`.
    pub fn halve(&self) -> Self {
        ExactPhase(reduce_mod_one(self.0 / 2))
    }

    /// The other square root: canonical branch times -1.
    pub fn negate(&self) -> Self {
        ExactPhase(reduce_mod_one(self.0 + Rational64::new(1, 2)))
    }

    /// The square of this phase (doubled exponent, reduced).
    pub fn square(&self) -> Self {
        self.pow(2)
    }

    /// Evaluate to a complex number. Quarter-period phases come out exact.
    pub fn value<F: Real>(&self) -> Complex<F> {
        let (n, d) = (*self.0.numer(), *self.0.denom());
        if d == 1 {
            return Complex::new(F::one(), F::zero());
        }
        if d == 2 {
            return Complex::new(-F::one(), F::zero());
        }
        if d == 4 {
            return if n == 1 {
                Complex::new(F::zero(), F::one())
            } else {
                Complex::new(F::zero(), -F::one())
            };
        }
        let tau = F::from_f64(std::f64::consts::TAU).unwrap();
        let angle = tau * F::from_i64(n).unwrap() / F::from_i64(d).unwrap();
        Complex::from_polar(F::one(), angle)
    }
}

// phases multiply by adding exponents
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for ExactPhase {
    type Output = ExactPhase;
    fn mul(self, rhs: ExactPhase) -> ExactPhase {
        ExactPhase(reduce_mod_one(self.0 + rhs.0))
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for ExactPhase {
    type Output = ExactPhase;
    fn div(self, rhs: ExactPhase) -> ExactPhase {
        ExactPhase(reduce_mod_one(self.0 - rhs.0))
    }
}

impl fmt::Display for ExactPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "1")
        } else if self.0 == Rational64::new(1, 2) {
            write!(f, "-1")
        } else {
            write!(f, "e(2pi i {}/{})", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse a `[num, den]` pair as it appears in the JSON schema.
pub fn phase_from_pair(pair: [i64; 2]) -> Result<ExactPhase> {
    ExactPhase::new(pair[0], pair[1])
}

/// Render back to the `[num, den]` wire form.
pub fn phase_to_pair(p: &ExactPhase) -> [i64; 2] {
    [p.numer(), p.denom()]
}
