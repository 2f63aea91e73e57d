//! Canonical form: a finite sum of rational multiples of monomials, where a
//! monomial is a product of integer powers of atoms (coordinates, function
//! applications with canonical arguments, and non-monomial sums raised to a
//! negative power).
//!
//! Positive powers of sums are expanded, constants are folded, and function
//! applications are only evaluated at points where the value is rational.
//! No rewrite changes the domain of definition except the cancellation of an
//! atom against its own reciprocal.

use std::collections::BTreeMap;
use std::ops;

use num_traits::{One, Signed, Zero};

use super::{Func, Node, SmoothExpr};
use crate::scalar::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<SmoothExpr, i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn atom(a: SmoothExpr, power: i32) -> Self {
        let mut m = BTreeMap::new();
        if power != 0 {
            m.insert(a, power);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&SmoothExpr, i32)> {
        self.0.iter().map(|(a, k)| (a, *k))
    }

    pub fn power_of(&self, atom: &SmoothExpr) -> i32 {
        self.0.get(atom).copied().unwrap_or(0)
    }

    /// Exponent of `x_{i+1}`.
    pub fn var_power(&self, i: usize) -> i32 {
        self.power_of(&SmoothExpr::var(i))
    }

    /// Positive coordinate exponents, indexed by variable.
    pub fn var_exponents(&self, p: usize) -> Vec<u32> {
        (0..p).map(|i| self.var_power(i).max(0) as u32).collect()
    }

    /// True when every atom is a coordinate with a positive exponent.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|(a, k)| matches!(a.node(), Node::Var(_)) && *k > 0)
    }

    /// The factors that are not coordinate powers with positive exponent.
    pub fn non_polynomial_part(&self) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter(|(a, k)| !(matches!(a.node(), Node::Var(_)) && **k > 0))
                .map(|(a, k)| (a.clone(), *k))
                .collect(),
        )
    }

    pub fn pow(&self, n: i32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(a, k)| (a.clone(), k * n)).collect())
    }

    /// Divide off `x^exponents`; the caller guarantees divisibility.
    pub fn div_vars(&self, exponents: &[u32]) -> Monomial {
        let mut out = self.0.clone();
        for (i, &e) in exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = SmoothExpr::var(i);
            let k = out.get(&v).copied().unwrap_or(0) - e as i32;
            if k == 0 {
                out.remove(&v);
            } else {
                out.insert(v, k);
            }
        }
        Monomial(out)
    }

    pub fn from_var_exponents(exponents: &[u32]) -> Monomial {
        Monomial(
            exponents
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| (SmoothExpr::var(i), *e as i32))
                .collect(),
        )
    }
}

impl ops::Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (a, k) in &rhs.0 {
            let e = out.entry(a.clone()).or_insert(0);
            *e += k;
            if *e == 0 {
                out.remove(a);
            }
        }
        Monomial(out)
    }
}

/// A canonical sum `Σ c_m · m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn atom(a: SmoothExpr) -> Self {
        Poly::term(Monomial::atom(a, 1), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = Poly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// Canonical form of an arbitrary tree.
    pub fn of(e: &SmoothExpr) -> Poly {
        if e.is_canonical() {
            decode(e)
        } else {
            build(e)
        }
    }

    pub fn pow(&self, n: i32) -> Poly {
        if n == 0 {
            return Poly::constant(Rational::one());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return Poly::term(m.pow(n), rational_pow(c, n));
        }
        if self.is_zero() {
            if n > 0 {
                return Poly::zero();
            }
            return Poly::term(Monomial::atom(SmoothExpr::zero(), n), Rational::one());
        }
        if n > 0 {
            let mut result = Poly::constant(Rational::one());
            let mut base = self.clone();
            let mut k = n as u32;
            while k > 0 {
                if k & 1 == 1 {
                    result = &result * &base;
                }
                k >>= 1;
                if k > 0 {
                    base = &base * &base;
                }
            }
            return result;
        }
        // Negative power of a genuine sum: normalize the sum to be monic in its
        // largest monomial so that `(-x - 1)^-1` and `(x + 1)^-1` share an atom.
        let (_, lead) = self.terms.iter().next_back().unwrap();
        let lead = lead.clone();
        let monic = self.scale(&lead.recip());
        Poly::term(Monomial::atom(monic.to_expr(), n), rational_pow(&lead, n))
    }

    pub fn to_expr(&self) -> SmoothExpr {
        let mut terms: Vec<SmoothExpr> =
            self.terms.iter().map(|(m, c)| term_expr(m, c)).collect();
        match terms.len() {
            0 => SmoothExpr::zero(),
            1 => terms.pop().unwrap(),
            _ => SmoothExpr::new_canonical(Node::Add(terms)),
        }
    }
}

fn rational_pow(c: &Rational, n: i32) -> Rational {
    if n >= 0 {
        num_traits::pow(c.clone(), n as usize)
    } else {
        num_traits::pow(c.recip(), (-n) as usize)
    }
}

fn term_expr(m: &Monomial, c: &Rational) -> SmoothExpr {
    let mut factors: Vec<SmoothExpr> = m
        .0
        .iter()
        .map(|(a, k)| {
            if *k == 1 {
                a.clone()
            } else {
                SmoothExpr::new_canonical(Node::Pow(a.clone(), *k))
            }
        })
        .collect();
    if factors.is_empty() {
        return SmoothExpr::constant(c.clone());
    }
    if c.is_one() {
        if factors.len() == 1 {
            return factors.pop().unwrap();
        }
        return SmoothExpr::new_canonical(Node::Mul(factors));
    }
    factors.insert(0, SmoothExpr::constant(c.clone()));
    SmoothExpr::new_canonical(Node::Mul(factors))
}

fn decode(e: &SmoothExpr) -> Poly {
    match e.node() {
        Node::Add(terms) => {
            let mut out = Poly::zero();
            for t in terms {
                let (m, c) = decode_term(t);
                out.add_term(m, c);
            }
            out
        }
        _ => {
            let (m, c) = decode_term(e);
            Poly::term(m, c)
        }
    }
}

fn decode_term(t: &SmoothExpr) -> (Monomial, Rational) {
    match t.node() {
        Node::Const(c) => (Monomial::one(), c.clone()),
        Node::Mul(factors) => {
            let mut coeff = Rational::one();
            let mut m = BTreeMap::new();
            for f in factors {
                match f.node() {
                    Node::Const(c) => coeff = c.clone(),
                    _ => {
                        let (a, k) = decode_factor(f);
                        m.insert(a, k);
                    }
                }
            }
            (Monomial(m), coeff)
        }
        _ => {
            let (a, k) = decode_factor(t);
            (Monomial::atom(a, k), Rational::one())
        }
    }
}

fn decode_factor(f: &SmoothExpr) -> (SmoothExpr, i32) {
    match f.node() {
        Node::Pow(a, k) => (a.clone(), *k),
        _ => (f.clone(), 1),
    }
}

fn build(e: &SmoothExpr) -> Poly {
    match e.node() {
        Node::Const(c) => Poly::constant(c.clone()),
        Node::Var(_) => Poly::atom(e.clone()),
        Node::Add(xs) => {
            let mut out = Poly::zero();
            for x in xs {
                out = out + Poly::of(x);
            }
            out
        }
        Node::Mul(xs) => {
            let mut out = Poly::constant(Rational::one());
            for x in xs {
                if out.is_zero() {
                    break;
                }
                out = &out * &Poly::of(x);
            }
            out
        }
        Node::Neg(a) => -Poly::of(a),
        Node::Div(a, b) => &Poly::of(a) * &Poly::of(b).pow(-1),
        Node::Pow(a, n) => Poly::of(a).pow(*n),
        Node::Apply(f, args) => {
            let args: Vec<SmoothExpr> = args.iter().map(|a| Poly::of(a).to_expr()).collect();
            fold_apply(*f, &args).unwrap_or_else(|| {
                Poly::atom(SmoothExpr::new_canonical(Node::Apply(*f, args)))
            })
        }
    }
}

/// Exact values of primitives at rational arguments, where they are rational.
fn fold_apply(f: Func, args: &[SmoothExpr]) -> Option<Poly> {
    let consts: Option<Vec<&Rational>> = args.iter().map(SmoothExpr::as_const).collect();
    let consts = consts?;
    let zero = Rational::zero();
    let one = Rational::one();
    let value = match f {
        Func::Exp if consts[0].is_zero() => one,
        Func::Log if consts[0].is_one() => zero,
        Func::Sin | Func::Tan | Func::Flat if consts[0].is_zero() => zero,
        Func::Cos if consts[0].is_zero() => one,
        Func::Sqrt if consts[0].is_zero() || consts[0].is_one() => consts[0].clone(),
        Func::Bump => {
            let s = (consts[0] - consts[1]) * (consts[2] - consts[0]);
            if s.is_positive() {
                return None;
            }
            zero
        }
        _ => return None,
    };
    Some(Poly::constant(value))
}

impl ops::Add for Poly {
    type Output = Poly;

    fn add(mut self, rhs: Poly) -> Poly {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl ops::Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl ops::Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl ops::Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1 * m2, c1 * c2);
            }
        }
        out
    }
}

impl SmoothExpr {
    /// Semantics-preserving canonicalization (idempotent).
    pub fn simplify(&self) -> SmoothExpr {
        if self.is_canonical() {
            return self.clone();
        }
        Poly::of(self).to_expr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str, p: usize) -> SmoothExpr {
        SmoothExpr::parse(text, p).unwrap().simplify()
    }

    #[test]
    fn identities_and_folding() {
        assert_eq!(s("0*sin(x1) + x1", 1), s("x1", 1));
        assert!(s("x1 - x1", 1).is_literal_zero());
        assert_eq!(s("2*3 + x1*1", 1), s("x1 + 6", 1));
        assert!(s("sin(0) + flat(0) + log(1)", 0).is_literal_zero());
        assert_eq!(s("exp(0)*cos(0)", 0), SmoothExpr::one());
    }

    #[test]
    fn no_domain_changing_rewrites() {
        let e = s("exp(log(x1))", 1);
        assert!(matches!(e.node(), Node::Apply(Func::Exp, _)));
        let r = s("sqrt(x1)^2", 1);
        assert!(matches!(r.node(), Node::Pow(..)));
    }

    #[test]
    fn expansion_and_reciprocals() {
        assert_eq!(s("(x1 + 1)^2", 1), s("x1^2 + 2*x1 + 1", 1));
        assert_eq!(s("1/(-x1 - 1)", 1), s("-1/(x1 + 1)", 1));
        assert_eq!(s("(2*x1)^-1", 1), s("x1^-1/2", 1));
        assert_eq!(s("x1*x2", 2), s("x2*x1", 2));
    }

    #[test]
    fn re_simplifying_a_canonical_tree_is_a_fixpoint() {
        for text in ["x1 + 2*x2^-3*flat(x1) - sin(x1/(x2+1))", "bump(x1, 0, 1)*(x1+1)^-2", "7/3"] {
            let once = s(text, 2);
            let rebuilt = build(&once);
            assert_eq!(rebuilt.to_expr(), once, "{text}");
            assert_eq!(decode(&once), rebuilt);
        }
    }
}
