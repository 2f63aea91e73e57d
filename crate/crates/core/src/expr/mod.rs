//! Closed-form smooth functions `R^p -> R`: the coefficient ring.

mod canon;
mod diff;
mod display;
mod eval;
pub(crate) mod parse;
pub mod random;
mod zero;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::scalar::Rational;

pub use canon::{Monomial, Poly};
pub use eval::{DomainError, DomainErrorKind};
pub use parse::{tokenize, ParseError, Token, TokenKind};
pub use zero::{ZeroTest, ZeroVerdict};


/// Elementary function symbols of the expression language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sqrt,
    /// `flat(u) = exp(-1/u^2)`, extended by `0` at `u = 0`.
    Flat,
    /// `bump(u, a, b)`: smooth, positive exactly where `(u - a)(b - u) > 0`.
    Bump,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Exp,
        Func::Log,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sqrt,
        Func::Flat,
        Func::Bump,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sqrt => "sqrt",
            Func::Flat => "flat",
            Func::Bump => "bump",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Bump => 3,
            _ => 1,
        }
    }

    /// Flat-type primitives vanish to infinite order on the boundary of their
    /// support, so they dominate any pole of a co-factor there.
    pub fn is_flat_type(self) -> bool {
        matches!(self, Func::Flat | Func::Bump)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Const(Rational),
    /// Zero-based coordinate index; displayed as `x{i+1}`.
    Var(usize),
    Add(Vec<SmoothExpr>),
    Mul(Vec<SmoothExpr>),
    Neg(SmoothExpr),
    Div(SmoothExpr, SmoothExpr),
    Pow(SmoothExpr, i32),
    Apply(Func, Vec<SmoothExpr>),
}

/// An immutable, cheaply clonable expression tree.
///
/// Trees produced by [`SmoothExpr::simplify`] carry a canonical marker so that
/// re-simplifying them is a structural decode rather than a full rewrite.
#[derive(Clone)]
pub struct SmoothExpr {
    node: Arc<Node>,
    canonical: bool,
}

impl PartialEq for SmoothExpr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.node, &other.node) || self.node == other.node
    }
}

impl Eq for SmoothExpr {}

impl std::hash::Hash for SmoothExpr {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.node.hash(state)
    }
}

impl PartialOrd for SmoothExpr {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SmoothExpr {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if Arc::ptr_eq(&self.node, &other.node) {
            return std::cmp::Ordering::Equal;
        }
        self.node.cmp(&other.node)
    }
}

impl fmt::Debug for SmoothExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmoothExpr({self})")
    }
}

impl SmoothExpr {
    pub fn new(node: Node) -> Self {
        SmoothExpr { node: Arc::new(node), canonical: false }
    }

    pub(crate) fn new_canonical(node: Node) -> Self {
        SmoothExpr { node: Arc::new(node), canonical: true }
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn constant(c: Rational) -> Self {
        SmoothExpr::new_canonical(Node::Const(c))
    }

    pub fn int(n: i64) -> Self {
        SmoothExpr::constant(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        SmoothExpr::constant(Rational::zero())
    }

    pub fn one() -> Self {
        SmoothExpr::constant(Rational::one())
    }

    /// Coordinate `x_{i+1}` (zero-based index).
    pub fn var(i: usize) -> Self {
        SmoothExpr::new_canonical(Node::Var(i))
    }

    pub fn add(terms: Vec<SmoothExpr>) -> Self {
        SmoothExpr::new(Node::Add(terms))
    }

    pub fn mul(factors: Vec<SmoothExpr>) -> Self {
        SmoothExpr::new(Node::Mul(factors))
    }

    pub fn neg(e: SmoothExpr) -> Self {
        SmoothExpr::new(Node::Neg(e))
    }

    pub fn div(a: SmoothExpr, b: SmoothExpr) -> Self {
        SmoothExpr::new(Node::Div(a, b))
    }

    pub fn pow(base: SmoothExpr, n: i32) -> Self {
        SmoothExpr::new(Node::Pow(base, n))
    }

    pub fn apply(f: Func, args: Vec<SmoothExpr>) -> Self {
        assert_eq!(args.len(), f.arity(), "wrong number of arguments for {}", f.name());
        SmoothExpr::new(Node::Apply(f, args))
    }

    pub fn func(f: Func, arg: SmoothExpr) -> Self {
        SmoothExpr::apply(f, vec![arg])
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self.node() {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    /// True when the expression is the literal constant zero.
    pub fn is_literal_zero(&self) -> bool {
        self.as_const().is_some_and(Zero::is_zero)
    }

    pub fn is_literal_one(&self) -> bool {
        self.as_const().is_some_and(One::is_one)
    }

    /// Smallest arity `p` for which every variable index is in range.
    pub fn min_arity(&self) -> usize {
        match self.node() {
            Node::Const(_) => 0,
            Node::Var(i) => i + 1,
            Node::Add(xs) | Node::Mul(xs) | Node::Apply(_, xs) => {
                xs.iter().map(SmoothExpr::min_arity).max().unwrap_or(0)
            }
            Node::Neg(a) | Node::Pow(a, _) => a.min_arity(),
            Node::Div(a, b) => a.min_arity().max(b.min_arity()),
        }
    }

    /// True when built only from constants, variables, `+ - * /` and integer
    /// powers; such expressions evaluate exactly over the rationals.
    pub fn is_rational_function(&self) -> bool {
        match self.node() {
            Node::Const(_) | Node::Var(_) => true,
            Node::Add(xs) | Node::Mul(xs) => xs.iter().all(SmoothExpr::is_rational_function),
            Node::Neg(a) | Node::Pow(a, _) => a.is_rational_function(),
            Node::Div(a, b) => a.is_rational_function() && b.is_rational_function(),
            Node::Apply(..) => false,
        }
    }

    /// True for polynomials (no division, no negative powers, no functions).
    pub fn is_polynomial(&self) -> bool {
        match self.node() {
            Node::Const(_) | Node::Var(_) => true,
            Node::Add(xs) | Node::Mul(xs) => xs.iter().all(SmoothExpr::is_polynomial),
            Node::Neg(a) => a.is_polynomial(),
            Node::Pow(a, n) => *n >= 0 && a.is_polynomial(),
            Node::Div(a, b) => a.is_polynomial() && b.as_const().is_some_and(|c| !c.is_zero()),
            Node::Apply(..) => false,
        }
    }

    /// Replace every `x_{i+1}` by `args[i]` (composition `self ∘ args`).
    /// The result is not simplified.
    pub fn substitute(&self, args: &[SmoothExpr]) -> SmoothExpr {
        match self.node() {
            Node::Const(_) => self.clone(),
            Node::Var(i) => args
                .get(*i)
                .cloned()
                .unwrap_or_else(|| panic!("substitution is missing x{}", i + 1)),
            Node::Add(xs) => SmoothExpr::add(xs.iter().map(|x| x.substitute(args)).collect()),
            Node::Mul(xs) => SmoothExpr::mul(xs.iter().map(|x| x.substitute(args)).collect()),
            Node::Neg(a) => SmoothExpr::neg(a.substitute(args)),
            Node::Div(a, b) => SmoothExpr::div(a.substitute(args), b.substitute(args)),
            Node::Pow(a, n) => SmoothExpr::pow(a.substitute(args), *n),
            Node::Apply(f, xs) => {
                SmoothExpr::new(Node::Apply(*f, xs.iter().map(|x| x.substitute(args)).collect()))
            }
        }
    }

    /// Composition followed by simplification.
    pub fn compose(&self, args: &[SmoothExpr]) -> SmoothExpr {
        self.substitute(args).simplify()
    }

    /// Parse `text` as an expression over `x1..x{arity}`.
    pub fn parse(text: &str, arity: usize) -> Result<SmoothExpr, ParseError> {
        parse::parse_expr(text, arity)
    }

    /// Number of nodes, used to bound symbolic work.
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::Const(_) | Node::Var(_) => 0,
            Node::Add(xs) | Node::Mul(xs) | Node::Apply(_, xs) => {
                xs.iter().map(SmoothExpr::size).sum()
            }
            Node::Neg(a) | Node::Pow(a, _) => a.size(),
            Node::Div(a, b) => a.size() + b.size(),
        }
    }
}

impl From<i64> for SmoothExpr {
    fn from(n: i64) -> Self {
        SmoothExpr::int(n)
    }
}

impl From<Rational> for SmoothExpr {
    fn from(c: Rational) -> Self {
        SmoothExpr::constant(c)
    }
}

// Ring operations simplify eagerly, so that equality of results is equality of
// canonical forms.
impl std::ops::Add for SmoothExpr {
    type Output = SmoothExpr;

    fn add(self, rhs: SmoothExpr) -> SmoothExpr {
        (Poly::of(&self) + Poly::of(&rhs)).to_expr()
    }
}

impl std::ops::Sub for SmoothExpr {
    type Output = SmoothExpr;

    fn sub(self, rhs: SmoothExpr) -> SmoothExpr {
        (Poly::of(&self) - Poly::of(&rhs)).to_expr()
    }
}

impl std::ops::Mul for SmoothExpr {
    type Output = SmoothExpr;

    fn mul(self, rhs: SmoothExpr) -> SmoothExpr {
        (&Poly::of(&self) * &Poly::of(&rhs)).to_expr()
    }
}

impl std::ops::Neg for SmoothExpr {
    type Output = SmoothExpr;

    fn neg(self) -> SmoothExpr {
        (-Poly::of(&self)).to_expr()
    }
}

impl Zero for SmoothExpr {
    fn zero() -> Self {
        SmoothExpr::zero()
    }

    /// Literal zero after simplification.
    fn is_zero(&self) -> bool {
        if self.canonical {
            self.is_literal_zero()
        } else {
            Poly::of(self).is_zero()
        }
    }
}

impl One for SmoothExpr {
    fn one() -> Self {
        SmoothExpr::one()
    }
}
