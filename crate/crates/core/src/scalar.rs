//! Scalar rings the convolution algebra is generic over.
//!
//! The algebra is complex by default. Two exact-rational scalar types
//! back the algebra-axiom and Gram cross-check tests: a fast fixed-width
//! Gaussian rational for pure algebra identities (inputs are kept small
//! enough that `i64` ratios cannot overflow) and an arbitrary-precision
//! one for anything involving dyadic atom weights.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

pub type Complex64 = Complex<f64>;

/// Gaussian rationals over `i64` ratios.
pub type RationalComplex64 = Complex<Rational64>;

/// Gaussian rationals over big-integer ratios.
pub type RationalComplex = Complex<BigRational>;

/// Commutative ring with involution, as needed by the star convolution.
pub trait StarScalar: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Complex conjugate (the algebra involution on scalars).
    fn conjugate(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Absolute value as `f64`, for residual reporting.
    fn abs_f64(&self) -> f64;
    fn from_f64(re: f64) -> Self;
}

impl StarScalar for Complex64 {
    fn zero() -> Self {
        Complex::ZERO
    }
    fn one() -> Self {
        Complex::ONE
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn abs_f64(&self) -> f64 {
        self.norm()
    }
    fn from_f64(re: f64) -> Self {
        Complex::new(re, 0.0)
    }
}

impl StarScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conjugate(&self) -> Self {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }
    fn from_f64(re: f64) -> Self {
        re
    }
}

impl StarScalar for RationalComplex64 {
    fn zero() -> Self {
        Complex::new(Rational64::zero(), Rational64::zero())
    }
    fn one() -> Self {
        Complex::new(Rational64::one(), Rational64::zero())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn abs_f64(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let im = self.im.to_f64().unwrap_or(f64::NAN);
        re.hypot(im)
    }
    fn from_f64(re: f64) -> Self {
        let r = Rational64::approximate_float(re).expect("finite float");
        Complex::new(r, Rational64::zero())
    }
}

impl StarScalar for RationalComplex {
    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn abs_f64(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let im = self.im.to_f64().unwrap_or(f64::NAN);
        re.hypot(im)
    }
    fn from_f64(re: f64) -> Self {
        let r = BigRational::from_float(re).expect("finite float");
        Complex::new(r, BigRational::zero())
    }
}

/// Exact dyadic representation of an `f64` weight.
pub fn weight_to_rational(w: f64) -> BigRational {
    BigRational::from_float(w).expect("atom weights are finite")
}

/// Rational complex from integer numerators and denominators.
pub fn rational64(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> RationalComplex64 {
    Complex::new(
        Rational64::new(re_num, re_den),
        Rational64::new(im_num, im_den),
    )
}

pub fn big_rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
