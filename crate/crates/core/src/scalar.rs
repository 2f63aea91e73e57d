//! Scalar fields the kernel is generic over.
//!
//! Floating point (`f32`, `f64`) is used for sampling and numeric jets;
//! [`Rational`] is the exact field used for expression constants, exact jets
//! of polynomial coefficients and Weil superalgebras.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::expr::{DomainError, SmoothExpr};

pub type Rational = BigRational;

pub trait Scalar:
    Num + Signed + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Whether field operations are exact.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;
    fn from_f64_lossy(x: f64) -> Self;
    fn to_f64_lossy(&self) -> f64;

    /// Zero test: exact fields compare with zero, floats use `tol`.
    fn negligible(&self, tol: f64) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Evaluate an expression at a point with coordinates in this field.
    ///
    /// Exact fields stay exact on rational functions and fall back to `f64`
    /// for transcendental primitives.
    fn eval_expr(e: &SmoothExpr, pt: &[Self]) -> Result<Self, DomainError> {
        let coords: Vec<f64> = pt.iter().map(Scalar::to_f64_lossy).collect();
        e.eval::<f64>(&coords).map(Self::from_f64_lossy)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(r: &Rational) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn from_f64_lossy(x: f64) -> Self {
                x as $t
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }

            fn negligible(&self, tol: f64) -> bool {
                (*self as f64).abs() <= tol
            }

            fn eval_expr(e: &SmoothExpr, pt: &[Self]) -> Result<Self, DomainError> {
                e.eval::<$t>(pt)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_f64_lossy(x: f64) -> Self {
        Rational::from_f64(x).unwrap_or_else(Rational::zero)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn eval_expr(e: &SmoothExpr, pt: &[Self]) -> Result<Self, DomainError> {
        match e.eval_exact(pt) {
            Some(v) => v,
            None => {
                let coords: Vec<f64> = pt.iter().map(Scalar::to_f64_lossy).collect();
                e.eval::<f64>(&coords).map(Self::from_f64_lossy)
            }
        }
    }
}

/// Parse a decimal literal (`12`, `0.25`, `1.5e-3`) into an exact rational.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let numer: BigInt = digits.parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.25"), Some(Rational::new(1.into(), 4.into())));
        assert_eq!(parse_decimal("12"), Some(Rational::from_integer(12.into())));
        assert_eq!(parse_decimal("1.5e-3"), Some(Rational::new(3.into(), 2000.into())));
        assert_eq!(parse_decimal("2e2"), Some(Rational::from_integer(200.into())));
        assert_eq!(parse_decimal("."), None);
        assert_eq!(parse_decimal("1a"), None);
    }

    #[test]
    fn float_and_rational_agree_on_conversion() {
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(<f64 as Scalar>::from_rational(&half), 0.5);
        assert_eq!(<f32 as Scalar>::from_rational(&half), 0.5f32);
        assert_eq!(<Rational as Scalar>::from_f64_lossy(0.5), half);
        assert!(Rational::zero().negligible(0.0));
        assert!(1e-14f64.negligible(1e-12));
    }
}
