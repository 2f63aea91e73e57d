//! The C∞-structure on split superrings `C∞(R^{p|q})`: the operations `Φ_h`
//! on even elements, axiom checkers, associated graded rings and Weil
//! superalgebras.

mod axioms;
mod graded;
mod weil;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::SmoothExpr;
use crate::grassmann::{Grassmann, Parity, SuperElement};
use crate::scalar::Rational;

pub use axioms::{
    check_composition_axiom, check_projection_axiom, check_ring_compatibility, random_even_element, AxiomFailure,
    AxiomReport, CompositionFamily,
};
pub use graded::{associated_graded, GradedPresentation};
pub use weil::{WeilError, WeilSuperAlgebra};

/// The coordinate superring `C∞(R^{p|q})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitSuperRing {
    pub p: usize,
    pub q: usize,
}

impl SplitSuperRing {
    pub fn new(p: usize, q: usize) -> Self {
        SplitSuperRing { p, q }
    }

    pub fn zero(&self) -> SuperElement {
        Grassmann::zero(self.p, self.q)
    }

    pub fn one(&self) -> SuperElement {
        Grassmann::one(self.p, self.q)
    }

    /// Even coordinate `x_{i+1}`.
    pub fn x(&self, i: usize) -> SuperElement {
        Grassmann::scalar(self.p, self.q, SmoothExpr::var(i))
    }

    /// Odd coordinate `θ^{i+1}`.
    pub fn theta(&self, i: usize) -> SuperElement {
        Grassmann::theta(self.p, self.q, i)
    }

    pub fn parse(&self, text: &str) -> Result<SuperElement, crate::expr::ParseError> {
        SuperElement::parse(text, self.p, self.q)
    }
}

impl std::fmt::Display for SplitSuperRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C({}|{})", self.p, self.q)
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum StructureError {
    #[error("argument {index} is not even ({parity:?})")]
    NotEven { index: usize, parity: Parity },
    #[error("function uses {needed} arguments but {given} were given")]
    FunctionArity { needed: usize, given: usize },
    #[error("arguments live in different rings")]
    RingMismatch,
    #[error("no arguments")]
    NoArguments,
}

/// How many soul orders `Φ_h` keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expansion {
    /// Full Taylor expansion; the sum is finite since souls are nilpotent.
    Full,
    /// Only `h(a) + Σ ∂_i h(a) n_i`; agrees with `Full` when soul products vanish.
    FirstOrder,
}

/// Multi-indices `α ∈ N^k` with `1 ≤ |α| ≤ max`, graded.
pub(crate) fn multi_indices(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut level = vec![vec![0; k]];
    for _ in 0..max {
        let mut next = Vec::new();
        for a in &level {
            let last = a.iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in last..k {
                let mut b = a.clone();
                b[i] += 1;
                next.push(b);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

pub(crate) fn factorial(alpha: &[usize]) -> Rational {
    let mut f = num_bigint::BigInt::from(1);
    for &a in alpha {
        for j in 2..=a {
            f *= j;
        }
    }
    Rational::from_integer(f)
}

/// `Φ_h(a_1 + n_1, …, a_k + n_k) = Σ_α (1/α!) ∂^α h(a) n^α` on even elements.
pub fn apply_smooth(h: &SmoothExpr, args: &[SuperElement]) -> Result<SuperElement, StructureError> {
    apply_smooth_with(h, args, Expansion::Full)
}

pub fn apply_smooth_with(h: &SmoothExpr, args: &[SuperElement], expansion: Expansion) -> Result<SuperElement, StructureError> {
    let first = args.first().ok_or(StructureError::NoArguments)?;
    let (p, q) = first.arity();
    if h.min_arity() > args.len() {
        return Err(StructureError::FunctionArity { needed: h.min_arity(), given: args.len() });
    }
    for (index, a) in args.iter().enumerate() {
        if a.arity() != (p, q) {
            return Err(StructureError::RingMismatch);
        }
        if a.parity() != Parity::Even {
            return Err(StructureError::NotEven { index, parity: a.parity() });
        }
    }
    let bodies: Vec<SmoothExpr> = args.iter().map(SuperElement::body).collect();
    let souls: Vec<SuperElement> = args.iter().map(SuperElement::soul).collect();
    let max_order = match expansion {
        Expansion::Full => q / 2,
        Expansion::FirstOrder => 1.min(q / 2),
    };
    let powers: Vec<Vec<SuperElement>> = souls
        .iter()
        .map(|n| {
            let mut v = vec![Grassmann::one(p, q)];
            for _ in 0..max_order {
                let next = v.last().unwrap() * n;
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = Grassmann::scalar(p, q, h.compose(&bodies));
    for alpha in multi_indices(args.len(), max_order) {
        let mut product = Grassmann::one(p, q);
        for (i, &a) in alpha.iter().enumerate() {
            if a > 0 {
                product = &product * &powers[i][a];
            }
        }
        if product.is_zero() {
            continue;
        }
        let inv = SmoothExpr::constant(factorial(&alpha).recip());
        let coeff = SmoothExpr::mul(vec![inv, h.partial_multi(&alpha)]).compose(&bodies);
        out = &out + &product.scale(&coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
