//! The supercommutative algebra `C[θ¹..θ^q]` over a coefficient ring `C`.
//!
//! With `C = SmoothExpr` this is `C∞(R^{p|q})`; with a scalar field it is the
//! Grassmann algebra used for Weil superalgebras; with jets it is the local
//! ring at a point.

mod index;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::SmoothExpr;
use crate::scalar::{Rational, Scalar};

pub use index::MultiIndex;

/// Ring of coefficients of a Grassmann algebra.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One + ops::Neg<Output = Self> + ops::Sub<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    /// Bring a freshly built coefficient into canonical form.
    fn normalize(self) -> Self {
        self
    }
}

impl<S: Scalar> Coefficient for S {
    fn from_rational(r: &Rational) -> Self {
        <S as Scalar>::from_rational(r)
    }
}

impl Coefficient for SmoothExpr {
    fn from_rational(r: &Rational) -> Self {
        SmoothExpr::constant(r.clone())
    }

    fn normalize(self) -> Self {
        self.simplify()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("arity mismatch: ({0}|{1}) vs ({2}|{3})")]
    ArityMismatch(usize, usize, usize, usize),
    #[error("odd index {index} exceeds q = {q}")]
    IndexOutOfRange { index: usize, q: usize },
    #[error("coefficient uses x{needed} but p = {p}")]
    CoefficientArity { needed: usize, p: usize },
}

/// Element of `C[θ¹..θ^q]`, stored sparsely with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Grassmann<C> {
    p: usize,
    q: usize,
    terms: BTreeMap<MultiIndex, C>,
}

pub type SuperElement = Grassmann<SmoothExpr>;

impl<C: Coefficient> Grassmann<C> {
    pub fn zero(p: usize, q: usize) -> Self {
        assert!(q <= MultiIndex::MAX_ODD, "at most {} odd generators", MultiIndex::MAX_ODD);
        Grassmann { p, q, terms: BTreeMap::new() }
    }

    pub fn scalar(p: usize, q: usize, c: C) -> Self {
        Grassmann::monomial(p, q, MultiIndex::EMPTY, c)
    }

    pub fn one(p: usize, q: usize) -> Self {
        Grassmann::scalar(p, q, C::one())
    }

    /// `θ^{i+1}` (zero-based index).
    pub fn theta(p: usize, q: usize, i: usize) -> Self {
        assert!(i < q, "θ{} out of range for q = {q}", i + 1);
        Grassmann::monomial(p, q, MultiIndex::single(i), C::one())
    }

    pub fn monomial(p: usize, q: usize, index: MultiIndex, c: C) -> Self {
        let mut out = Grassmann::zero(p, q);
        out.add_term(index, c);
        out
    }

    pub fn from_terms(p: usize, q: usize, terms: impl IntoIterator<Item = (MultiIndex, C)>) -> Self {
        let mut out = Grassmann::zero(p, q);
        for (i, c) in terms {
            out.add_term(i, c);
        }
        out
    }

    pub fn add_term(&mut self, index: MultiIndex, c: C) {
        assert!(index.fits(self.q), "{index} exceeds q = {}", self.q);
        let c = c.normalize();
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&index) {
            Some(old) => {
                let s = (old + c).normalize();
                if !s.is_zero() {
                    self.terms.insert(index, s);
                }
            }
            None => {
                self.terms.insert(index, c);
            }
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (MultiIndex, C)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, index: MultiIndex) -> C {
        self.terms.get(&index).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parity(&self) -> Parity {
        let even = self.terms.keys().all(|i| i.len() % 2 == 0);
        let odd = self.terms.keys().all(|i| i.len() % 2 == 1);
        match (even, odd) {
            (true, _) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity() != Parity::Mixed
    }

    /// Coefficient of `θ^∅`.
    pub fn body(&self) -> C {
        self.coefficient(MultiIndex::EMPTY)
    }

    /// Everything but the body; nilpotent.
    pub fn soul(&self) -> Self {
        Grassmann {
            p: self.p,
            q: self.q,
            terms: self.terms.iter().filter(|(i, _)| !i.is_empty()).map(|(i, c)| (*i, c.clone())).collect(),
        }
    }

    pub fn body_soul(&self) -> (C, Self) {
        (self.body(), self.soul())
    }

    /// Smallest Grassmann degree present (`None` for zero).
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|i| i.len()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|i| i.len()).max()
    }

    /// Homogeneous component of Grassmann degree `d`.
    pub fn component(&self, d: usize) -> Self {
        self.filter(|i| i.len() == d)
    }

    pub fn even_part(&self) -> Self {
        self.filter(|i| i.len() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|i| i.len() % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(&MultiIndex) -> bool) -> Self {
        Grassmann {
            p: self.p,
            q: self.q,
            terms: self.terms.iter().filter(|(i, _)| keep(i)).map(|(i, c)| (*i, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Grassmann::from_terms(self.p, self.q, self.terms.iter().map(|(i, a)| (*i, c.clone() * a.clone())))
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Grassmann<D> {
        Grassmann::from_terms(self.p, self.q, self.terms.iter().map(|(i, c)| (*i, f(c))))
    }

    pub fn try_map_coeffs<D: Coefficient, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<Grassmann<D>, E> {
        let mut out = Grassmann::zero(self.p, self.q);
        for (i, c) in &self.terms {
            out.add_term(*i, f(c)?);
        }
        Ok(out)
    }

    /// Reinterpret in a ring with the same `q` but a different even arity.
    pub fn with_p(mut self, p: usize) -> Self {
        self.p = p;
        self
    }

    fn check_arity(&self, other: &Self) -> Result<(), GrassmannError> {
        if self.arity() != other.arity() {
            return Err(GrassmannError::ArityMismatch(self.p, self.q, other.p, other.q));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, GrassmannError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(*i, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, GrassmannError> {
        self.checked_add(&-other)
    }

    /// Bilinear extension of `θ^I θ^J = (-1)^{inv(I,J)} θ^{I∪J}` (zero when `I ∩ J ≠ ∅`).
    pub fn checked_mul(&self, other: &Self) -> Result<Self, GrassmannError> {
        self.check_arity(other)?;
        let mut out = Grassmann::zero(self.p, self.q);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let Some((k, negative)) = i.wedge(*j) else { continue };
                let c = a.clone() * b.clone();
                out.add_term(k, if negative { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Grassmann::one(self.p, self.q);
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = &out * self;
        }
        out
    }
}

impl<C: Coefficient> ops::Add for &Grassmann<C> {
    type Output = Grassmann<C>;

    fn add(self, rhs: &Grassmann<C>) -> Grassmann<C> {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<C: Coefficient> ops::Sub for &Grassmann<C> {
    type Output = Grassmann<C>;

    fn sub(self, rhs: &Grassmann<C>) -> Grassmann<C> {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<C: Coefficient> ops::Mul for &Grassmann<C> {
    type Output = Grassmann<C>;

    fn mul(self, rhs: &Grassmann<C>) -> Grassmann<C> {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<C: Coefficient> ops::Neg for &Grassmann<C> {
    type Output = Grassmann<C>;

    fn neg(self) -> Grassmann<C> {
        Grassmann {
            p: self.p,
            q: self.q,
            terms: self.terms.iter().map(|(i, c)| (*i, -c.clone())).collect(),
        }
    }
}

macro_rules! owned_op {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> ops::$tr for Grassmann<C> {
            type Output = Grassmann<C>;

            fn $m(self, rhs: Grassmann<C>) -> Grassmann<C> {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);

impl<C: Coefficient> ops::Neg for Grassmann<C> {
    type Output = Grassmann<C>;

    fn neg(self) -> Grassmann<C> {
        -&self
    }
}

impl Grassmann<SmoothExpr> {
    /// Parse the display syntax (`x1 + sin(x1)*t1t2`) in `C∞(R^{p|q})`.
    pub fn parse(text: &str, p: usize, q: usize) -> Result<Self, crate::expr::ParseError> {
        parse::parse_super(text, p, q)
    }

    /// Element of `C∞(R^{p|q})` with validated coefficient arity.
    pub fn new(p: usize, q: usize, terms: impl IntoIterator<Item = (MultiIndex, SmoothExpr)>) -> Result<Self, GrassmannError> {
        let mut out = Grassmann::zero(p, q);
        for (i, c) in terms {
            if !i.fits(q) {
                return Err(GrassmannError::IndexOutOfRange { index: i.max_index().unwrap_or(0) + 1, q });
            }
            let needed = c.min_arity();
            if needed > p {
                return Err(GrassmannError::CoefficientArity { needed, p });
            }
            out.add_term(i, c);
        }
        Ok(out)
    }

    /// Projection onto `C∞(R^p)`: the body.
    pub fn superreduce(&self) -> SmoothExpr {
        self.body()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(SmoothExpr::is_polynomial)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(SmoothExpr::is_rational_function)
    }

    /// Evaluate every coefficient at a point, giving an element of `R[θ]`.
    pub fn eval_at<S: Scalar>(&self, pt: &[S]) -> Result<Grassmann<S>, crate::expr::DomainError> {
        self.try_map_coeffs(|c| S::eval_expr(c, pt)).map(|g| g.with_p(0))
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for Grassmann<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (index, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let is_sum = (k > 0 || !index.is_empty())
                && text.char_indices().skip(1).any(|(i, ch)| (ch == '+' || ch == '-') && text[..i].ends_with(' '));
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if !is_sum => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            let body = if is_sum { format!("({text})") } else { body };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if index.is_empty() {
                f.write_str(&body)?;
            } else if body == "1" {
                write!(f, "{index}")?;
            } else {
                write!(f, "{body}*{index}")?;
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for Grassmann<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grassmann[{}|{}]", self.p, self.q)?;
        f.debug_map().entries(self.terms.iter().map(|(i, c)| (i.to_string(), c))).finish()
    }
}
