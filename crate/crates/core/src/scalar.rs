//! Scalar abstraction and tolerances.
//!
//! All floating-point math in the crate is generic over [`Real`], so the same
//! engines run at `f32` or `f64`. The exact statements (twists, square-root
//! branches, multiplicities) never touch this trait; see [`crate::phase`].

use std::fmt;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the numeric engines are generic over.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

/// Comparison thresholds.
///
/// `eps_matrix` bounds residuals of matrix identities (unitarity, symmetry,
/// trace relations); `eps_int` bounds the distance allowed when rounding a
/// complex value to an integer. The defaults leave several digits of headroom
/// at `f64` for the small ranks this crate targets; callers instantiating at
/// `f32` should widen them.
#[derive(Clone, Copy, Debug)]
pub struct Tolerance<F> {
    pub eps_matrix: F,
    pub eps_int: F,
}

impl<F: Real> Default for Tolerance<F> {
    fn default() -> Self {
        Tolerance {
            eps_matrix: F::from_f64(1e-9).unwrap(),
            eps_int: F::from_f64(1e-6).unwrap(),
        }
    }
}

impl<F: Real> Tolerance<F> {
    pub fn new(eps_matrix: F, eps_int: F) -> Self {
        Tolerance { eps_matrix, eps_int }
    }
}

/// Round a complex value to an integer: the imaginary part and the distance of
/// the real part from the nearest integer must both stay below `eps_int`.
pub fn round_to_int<F: Real>(z: Complex<F>, eps_int: F) -> Option<i64> {
    if z.im.abs() >= eps_int {
        return None;
    }
    let nearest = z.re.round();
    if (z.re - nearest).abs() >= eps_int {
        return None;
    }
    nearest.to_i64()
}
