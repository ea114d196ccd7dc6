//! Scalar arithmetic for the two evaluation modes of the engine.
//!
//! Lie-algebra scenes run on exact rationals; chart scenes run on `f64`
//! augmented with first-order dual parts for forward-mode differentiation.
//! Geometry code is written once, generic over [`Field`], and the chart
//! differentiation machinery nests [`Dual`] to reach second derivatives.

use num::bigint::BigInt;
use num::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{GeomError, Result};

/// Exact rational scalar (arbitrary-precision numerator/denominator).
pub type Rational = BigRational;

/// Field operations needed by the generic linear algebra and geometry code.
///
/// `EXACT` distinguishes the rational mode (structural zero tests, no
/// tolerances) from float-backed modes (tolerance thresholding on the
/// leading real value).
pub trait Field:
    Sized
    + Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_f64(x: f64) -> Self;

    /// Leading real value, used for pivot selection and residual reporting.
    fn approx(&self) -> f64;

    fn is_zero(&self) -> bool;

    /// Zero test honouring the mode: structural in exact mode, `|x| <= tol`
    /// on the leading value otherwise.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.approx().abs() <= tol
        }
    }

    /// Square root where the mode admits one. Rational mode succeeds only on
    /// perfect squares; float modes require a positive leading value.
    fn sqrt_checked(self) -> Result<Self>;
}

impl Field for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn approx(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sqrt_checked(self) -> Result<Self> {
        if self < 0.0 {
            return Err(GeomError::Degenerate(format!(
                "square root of negative value {self}"
            )));
        }
        Ok(self.sqrt())
    }
}

fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r.clone() * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite float")
    }
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sqrt_checked(self) -> Result<Self> {
        let reduced = self.reduced();
        let num = bigint_sqrt_exact(reduced.numer());
        let den = bigint_sqrt_exact(reduced.denom());
        match (num, den) {
            (Some(n), Some(d)) => Ok(Rational::new(n, d)),
            _ => Err(GeomError::Degenerate(format!(
                "rational {reduced} is not a perfect square"
            ))),
        }
    }
}

/// First-order dual number over a base scalar.
///
/// Nesting (`Dual<Dual<f64>>`) yields exact second derivatives; comparisons
/// and pivot decisions always look at the leading real value so evaluation
/// follows the same branch at the base point and at its dual perturbations.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<R> {
    pub re: R,
    pub du: R,
}

impl<R: Field> Dual<R> {
    pub fn new(re: R, du: R) -> Self {
        Dual { re, du }
    }

    pub fn constant(re: R) -> Self {
        Dual {
            re,
            du: R::zero(),
        }
    }

    /// Seed an active differentiation direction with unit dual part scale.
    pub fn seeded(re: R, du: R) -> Self {
        Dual { re, du }
    }
}

impl<R: Field> Add for Dual<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.re + rhs.re, self.du + rhs.du)
    }
}

impl<R: Field> Sub for Dual<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.re - rhs.re, self.du - rhs.du)
    }
}

impl<R: Field> Mul for Dual<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // Product rule: dual(x*y) = x*dual(y) + y*dual(x).
        Dual::new(
            self.re.clone() * rhs.re.clone(),
            self.re * rhs.du + rhs.re * self.du,
        )
    }
}

impl<R: Field> Div for Dual<R> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let re = self.re.clone() / rhs.re.clone();
        let du = (self.du - re.clone() * rhs.du) / rhs.re;
        Dual::new(re, du)
    }
}

impl<R: Field> Neg for Dual<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.du)
    }
}

impl<R: Field> Field for Dual<R> {
    const EXACT: bool = false;

    fn zero() -> Self {
        Dual::constant(R::zero())
    }
    fn one() -> Self {
        Dual::constant(R::one())
    }
    fn from_int(n: i64) -> Self {
        Dual::constant(R::from_int(n))
    }
    fn from_f64(x: f64) -> Self {
        Dual::constant(R::from_f64(x))
    }
    fn approx(&self) -> f64 {
        self.re.approx()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.du.is_zero()
    }
    fn sqrt_checked(self) -> Result<Self> {
        let r = self.re.sqrt_checked()?;
        let two = R::from_int(2);
        Ok(Dual::new(r.clone(), self.du / (two * r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact_and_closed() {
        let third = Rational::new(BigInt::from(1), BigInt::from(3));
        let sum = (0..300).fold(<Rational as Field>::zero(), |acc, _| acc + third.clone());
        assert_eq!(sum, Rational::from_int(100));
        let q = Rational::from_int(7) / Rational::from_int(11);
        assert_eq!(q * Rational::from_int(11), Rational::from_int(7));
    }

    #[test]
    fn rational_sqrt_perfect_square_only() {
        let q = Rational::new(BigInt::from(9), BigInt::from(4));
        assert_eq!(
            q.sqrt_checked().unwrap(),
            Rational::new(BigInt::from(3), BigInt::from(2))
        );
        assert!(Rational::from_int(3).sqrt_checked().is_err());
        assert!(Rational::from_int(-4).sqrt_checked().is_err());
    }

    #[test]
    fn dual_product_rule() {
        // d/dx (x^2 * (x+1)) = 3x^2 + 2x at x = 2 -> 16
        let x = Dual::new(2.0, 1.0);
        let y = x.clone() * x.clone() * (x.clone() + Dual::one());
        assert_eq!(y.re, 12.0);
        assert_eq!(y.du, 16.0);
    }

    #[test]
    fn dual_quotient_and_sqrt() {
        // f(x) = sqrt(x) / (x + 1), f'(x) = (1 - x) / (2 sqrt(x) (1+x)^2)
        let x = Dual::new(4.0, 1.0);
        let f = x.clone().sqrt_checked().unwrap() / (x + Dual::one());
        assert!((f.re - 0.4).abs() < 1e-15);
        let expect = (1.0 - 4.0) / (2.0 * 2.0 * 25.0);
        assert!((f.du - expect).abs() < 1e-15);
    }

    #[test]
    fn nested_dual_second_derivative() {
        // f(x) = x^3, f''(2) = 12.
        let inner = Dual::new(2.0, 1.0);
        let x: Dual<Dual<f64>> = Dual::new(inner, Dual::one());
        let f = x.clone() * x.clone() * x;
        assert_eq!(f.du.du, 12.0);
    }
}
