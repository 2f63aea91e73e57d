use num_traits::{Float, FromPrimitive, ToPrimitive};
use thiserror::Error;

use super::{Func, Node, SmoothExpr};
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainErrorKind {
    DivisionByZero,
    LogOfNonPositive,
    SqrtOfNegative,
    NonFinite,
    PointArity,
}

#[derive(Clone, Debug, Error, PartialEq)]
#[error("{kind:?} in `{subexpr}`")]
pub struct DomainError {
    pub kind: DomainErrorKind,
    pub subexpr: SmoothExpr,
}

fn fail<T>(kind: DomainErrorKind, e: &SmoothExpr) -> Result<T, DomainError> {
    Err(DomainError { kind, subexpr: e.clone() })
}

fn lift<T: Float + FromPrimitive>(c: &Rational) -> T {
    T::from_f64(c.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(T::nan)
}

/// `flat(u) = exp(-1/u^2)` with the removable value `0` at `u = 0`.
pub(crate) fn flat<T: Float>(u: T) -> T {
    if u == T::zero() {
        T::zero()
    } else {
        (-(u * u).recip()).exp()
    }
}

/// `bump(u, a, b) = G((u - a)(b - u))` with `G(s) = exp(-1/s)` for `s > 0`, else `0`.
pub(crate) fn bump<T: Float>(u: T, a: T, b: T) -> T {
    let s = (u - a) * (b - u);
    if s > T::zero() {
        (-s.recip()).exp()
    } else {
        T::zero()
    }
}

/// A factor whose flat-type primitive vanishes at the point annihilates the
/// whole product, including co-factors with a pole there (e.g. the derivative
/// `2 x^-3 flat(x)` at `x = 0`).
fn flat_core(e: &SmoothExpr) -> Option<&SmoothExpr> {
    match e.node() {
        Node::Apply(f, _) if f.is_flat_type() => Some(e),
        Node::Pow(b, n) if *n > 0 => flat_core(b),
        _ => None,
    }
}

impl SmoothExpr {
    /// IEEE evaluation; reports the offending subexpression on domain errors.
    pub fn eval<T: Float + FromPrimitive>(&self, pt: &[T]) -> Result<T, DomainError> {
        let v = self.eval_inner(pt)?;
        if !v.is_finite() {
            return fail(DomainErrorKind::NonFinite, self);
        }
        Ok(v)
    }

    fn eval_inner<T: Float + FromPrimitive>(&self, pt: &[T]) -> Result<T, DomainError> {
        match self.node() {
            Node::Const(c) => Ok(lift(c)),
            Node::Var(i) => match pt.get(*i) {
                Some(v) => Ok(*v),
                None => fail(DomainErrorKind::PointArity, self),
            },
            Node::Add(xs) => xs.iter().try_fold(T::zero(), |acc, x| Ok(acc + x.eval_inner(pt)?)),
            Node::Mul(xs) => {
                for x in xs {
                    if let Some(core) = flat_core(x) {
                        if core.eval_inner(pt)? == T::zero() {
                            return Ok(T::zero());
                        }
                    }
                }
                xs.iter().try_fold(T::one(), |acc, x| Ok(acc * x.eval_inner(pt)?))
            }
            Node::Neg(a) => Ok(-a.eval_inner(pt)?),
            Node::Div(a, b) => {
                if let Some(core) = flat_core(a) {
                    if core.eval_inner(pt)? == T::zero() {
                        return Ok(T::zero());
                    }
                }
                let num = a.eval_inner(pt)?;
                let den = b.eval_inner(pt)?;
                if den == T::zero() {
                    return fail(DomainErrorKind::DivisionByZero, self);
                }
                Ok(num / den)
            }
            Node::Pow(a, n) => {
                let base = a.eval_inner(pt)?;
                if *n < 0 && base == T::zero() {
                    return fail(DomainErrorKind::DivisionByZero, self);
                }
                Ok(base.powi(*n))
            }
            Node::Apply(f, args) => {
                let u = args[0].eval_inner(pt)?;
                let v = match f {
                    Func::Exp => u.exp(),
                    Func::Log => {
                        if u <= T::zero() {
                            return fail(DomainErrorKind::LogOfNonPositive, self);
                        }
                        u.ln()
                    }
                    Func::Sin => u.sin(),
                    Func::Cos => u.cos(),
                    Func::Tan => u.tan(),
                    Func::Sqrt => {
                        if u < T::zero() {
                            return fail(DomainErrorKind::SqrtOfNegative, self);
                        }
                        u.sqrt()
                    }
                    Func::Flat => flat(u),
                    Func::Bump => bump(u, args[1].eval_inner(pt)?, args[2].eval_inner(pt)?),
                };
                Ok(v)
            }
        }
    }

    /// Exact evaluation at a rational point. `None` when the expression is not
    /// a rational function.
    pub fn eval_exact(&self, pt: &[Rational]) -> Option<Result<Rational, DomainError>> {
        if !self.is_rational_function() {
            return None;
        }
        Some(self.eval_exact_inner(pt))
    }

    fn eval_exact_inner(&self, pt: &[Rational]) -> Result<Rational, DomainError> {
        use num_traits::{One, Zero};
        match self.node() {
            Node::Const(c) => Ok(c.clone()),
            Node::Var(i) => match pt.get(*i) {
                Some(v) => Ok(v.clone()),
                None => fail(DomainErrorKind::PointArity, self),
            },
            Node::Add(xs) => {
                xs.iter().try_fold(Rational::zero(), |acc, x| Ok(acc + x.eval_exact_inner(pt)?))
            }
            Node::Mul(xs) => {
                xs.iter().try_fold(Rational::one(), |acc, x| Ok(acc * x.eval_exact_inner(pt)?))
            }
            Node::Neg(a) => Ok(-a.eval_exact_inner(pt)?),
            Node::Div(a, b) => {
                let den = b.eval_exact_inner(pt)?;
                if den.is_zero() {
                    return fail(DomainErrorKind::DivisionByZero, self);
                }
                Ok(a.eval_exact_inner(pt)? / den)
            }
            Node::Pow(a, n) => {
                let base = a.eval_exact_inner(pt)?;
                if *n < 0 {
                    if base.is_zero() {
                        return fail(DomainErrorKind::DivisionByZero, self);
                    }
                    Ok(num_traits::pow(base.recip(), (-n) as usize))
                } else {
                    Ok(num_traits::pow(base, *n as usize))
                }
            }
            Node::Apply(..) => unreachable!("checked by is_rational_function"),
        }
    }
}
