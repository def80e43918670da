//! Numeric abstraction shared by the state, payoff and equilibrium layers.
//!
//! Everything in this crate is written against [`Scalar`], so the same code
//! runs over `f64`, `f32` and exact big rationals. Floating types carry
//! non-zero tolerances; the rational implementation uses zero tolerances and
//! every comparison is exact.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// A real scalar usable as the amplitude/probability/payoff field.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + ToPrimitive + Send + Sync + 'static
{
    /// Tolerance for validating user inputs (normalization, weight sums).
    fn input_tol() -> Self;

    /// Tolerance for internal exactness checks (trace preservation,
    /// degeneracy detection in equilibrium enumeration).
    fn exact_tol() -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn is_finite_value(&self) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn input_tol() -> Self {
        1e-9
    }

    fn exact_tol() -> Self {
        1e-12
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

// f32 arithmetic on 16x16 products loses ~1e-7 per operation.
impl Scalar for f32 {
    fn input_tol() -> Self {
        1e-5
    }

    fn exact_tol() -> Self {
        1e-5
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for BigRational {
    fn input_tol() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }

    fn exact_tol() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

pub(crate) fn max_of<T: Scalar>(a: T, b: T) -> T {
    if a >= b {
        a
    } else {
        b
    }
}

pub(crate) fn min_of<T: Scalar>(a: T, b: T) -> T {
    if a <= b {
        a
    } else {
        b
    }
}

/// Sign of `v` with everything in `[-tol, tol]` treated as zero.
pub(crate) fn sign_with_tol<T: Scalar>(v: &T, tol: &T) -> i8 {
    if *v > *tol {
        1
    } else if *v < -tol.clone() {
        -1
    } else {
        0
    }
}

pub(crate) fn in_unit_interval<T: Scalar>(v: &T) -> bool {
    *v >= T::zero() && *v <= T::one()
}
