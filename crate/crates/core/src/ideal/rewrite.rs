//! Oriented rewrite rules with a strictly increasing termination measure.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{Monomial, Poly, SmoothExpr};
use crate::grassmann::{Grassmann, MultiIndex, SuperElement};
use crate::scalar::Rational;

/// Degree-reverse-lexicographic order on exponent vectors.
pub fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len().max(b.len())).rev() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

fn key_cmp(a: &(Vec<u32>, MultiIndex), b: &(Vec<u32>, MultiIndex)) -> Ordering {
    degrevlex(&a.0, &b.0).then(a.1.bits().cmp(&b.1.bits()))
}

/// `x^lead · θ^odd → rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RewriteRule {
    pub lead: Vec<u32>,
    #[serde(serialize_with = "ser_index")]
    pub odd: MultiIndex,
    #[serde(serialize_with = "ser_display")]
    pub rhs: SuperElement,
}

fn ser_index<S: serde::Serializer>(i: &MultiIndex, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&i.to_string())
}

fn ser_display<S: serde::Serializer>(e: &SuperElement, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

impl RewriteRule {
    pub fn lhs(&self, p: usize, q: usize) -> SuperElement {
        let m = Monomial::from_var_exponents(&self.lead);
        Grassmann::monomial(p, q, self.odd, Poly::term(m, Rational::from_integer(1.into())).to_expr())
    }

    /// The ideal element `lhs − rhs`, with leading coefficient one.
    pub fn element(&self, p: usize, q: usize) -> SuperElement {
        &self.lhs(p, q) - &self.rhs
    }

    /// `x^(exps − lead) θ^(odd \ K) · element`, signed so that its leading term is `+x^exps θ^odd`.
    fn multiple(&self, p: usize, q: usize, exps: &[u32], odd: MultiIndex) -> SuperElement {
        let n = odd.difference(self.odd);
        let (_, negative) = n.wedge(self.odd).expect("disjoint");
        let shift: Vec<u32> = exps.iter().zip(self.lead.iter().chain(std::iter::repeat(&0))).map(|(m, a)| m - a).collect();
        let cofactor = Poly::term(Monomial::from_var_exponents(&shift), Rational::from_integer(1.into())).to_expr();
        let r = &Grassmann::monomial(p, q, n, cofactor) * &self.element(p, q);
        if negative {
            -&r
        } else {
            r
        }
    }

    fn divides(&self, m: &Monomial, j: MultiIndex) -> bool {
        self.odd.is_subset(j) && self.lead.iter().enumerate().all(|(i, &e)| e == 0 || m.var_power(i) >= e as i32)
    }
}

impl std::fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (p, q) = self.rhs.arity();
        write!(f, "{} -> {}", self.lhs(p, q), self.rhs)
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
#[error("unorientable generator `{generator}`: {reason}")]
pub struct Unorientable {
    pub index: usize,
    pub generator: String,
    pub reason: String,
}

/// Choose the leading term of a generator and return the rule it induces.
///
/// The leading term is taken among the terms of minimal Grassmann degree: a
/// constant times a coordinate monomial, maximal for degrevlex (ties broken
/// by the odd monomial). Every other term of that degree must be strictly
/// smaller, which makes rewriting terminate.
pub fn orient_generator(index: usize, g: &SuperElement) -> Result<RewriteRule, Unorientable> {
    let fail = |reason: &str| Unorientable { index, generator: g.to_string(), reason: reason.to_string() };
    let (p, q) = g.arity();
    let d = g.min_degree().ok_or_else(|| fail("zero generator"))?;
    let mut keys: Vec<((Vec<u32>, MultiIndex), bool, Rational)> = Vec::new();
    for (j, c) in g.terms().filter(|(j, _)| j.len() == d) {
        for (m, r) in Poly::of(c).terms() {
            if m.factors().any(|(a, k)| matches!(a.node(), crate::expr::Node::Var(_)) && k < 0) {
                return Err(fail("negative coordinate power in a leading term"));
            }
            let polynomial = m.is_one() || m.is_polynomial();
            keys.push(((m.var_exponents(p), *j), polynomial, r.clone()));
        }
    }
    let lead = keys
        .iter()
        .filter(|(_, poly, _)| *poly)
        .max_by(|a, b| key_cmp(&a.0, &b.0))
        .ok_or_else(|| fail("no polynomial leading monomial"))?;
    let ties = keys.iter().filter(|k| key_cmp(&k.0, &lead.0) != Ordering::Less).count();
    if ties > 1 {
        return Err(fail("leading monomial is not strictly dominant"));
    }
    let (exps, odd) = lead.0.clone();
    let lc = lead.2.clone();
    let lhs_term = Grassmann::monomial(p, q, odd, Poly::term(Monomial::from_var_exponents(&exps), lc.clone()).to_expr());
    let rest = g - &lhs_term;
    let rhs = rest.scale(&SmoothExpr::constant(-lc.recip()));
    Ok(RewriteRule { lead: exps, odd, rhs })
}

/// Limits on completion work; exceeding them leaves the system incomplete.
const MAX_RULES: usize = 48;
const MAX_REDUCTIONS: usize = 600;

/// Result of completing a generating set.
#[derive(Clone, Debug)]
pub struct Completion {
    pub system: RewriteSystem,
    pub unoriented: Vec<Unorientable>,
    /// Every critical pair reduced to zero, so normal forms are canonical.
    pub complete: bool,
}

fn s_pair(a: &RewriteRule, b: &RewriteRule, p: usize, q: usize) -> SuperElement {
    let n = p.max(a.lead.len()).max(b.lead.len());
    let m: Vec<u32> = (0..n)
        .map(|i| a.lead.get(i).copied().unwrap_or(0).max(b.lead.get(i).copied().unwrap_or(0)))
        .collect();
    let odd = a.odd.union(b.odd);
    &a.multiple(p, q, &m, odd) - &b.multiple(p, q, &m, odd)
}

/// Bounded Buchberger completion over the exterior algebra: generators are
/// oriented one by one, and each new rule queues its S-pairs with the existing
/// rules and its products `θ^j · g` for `j` in its leading odd monomial.
pub fn complete(p: usize, q: usize, generators: &[SuperElement]) -> Completion {
    let mut system = RewriteSystem::default();
    let mut unoriented = Vec::new();
    let mut complete = true;
    let mut queue: std::collections::VecDeque<(usize, SuperElement)> = generators.iter().cloned().enumerate().collect();
    let mut reductions = 0;
    while let Some((index, g)) = queue.pop_front() {
        if reductions == MAX_REDUCTIONS || system.rules.len() == MAX_RULES {
            complete = false;
            break;
        }
        reductions += 1;
        let h = system.normal_form(&g);
        if h.is_zero() {
            continue;
        }
        match orient_generator(index, &h) {
            Ok(rule) => {
                let element = rule.element(p, q);
                for j in rule.odd.indices() {
                    queue.push_back((index, &Grassmann::theta(p, q, j) * &element));
                }
                for other in &system.rules {
                    queue.push_back((index, s_pair(other, &rule, p, q)));
                }
                system.rules.push(rule);
            }
            Err(e) => {
                complete = false;
                if let Some(a) = Annihilator::of(&h) {
                    system.annihilators.push(a);
                }
                unoriented.push(e);
            }
        }
    }
    Completion { system, unoriented, complete }
}

/// A single-term generator `f·θ^K` with no polynomial leading monomial: it
/// kills every term `c·θ^J` with `K ⊆ J` and `c` a smooth multiple of `f`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Annihilator {
    #[serde(serialize_with = "ser_expr")]
    pub factor: SmoothExpr,
    #[serde(serialize_with = "ser_index")]
    pub odd: MultiIndex,
}

fn ser_expr<S: serde::Serializer>(e: &SmoothExpr, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

impl Annihilator {
    pub fn of(g: &SuperElement) -> Option<Annihilator> {
        let mut terms = g.terms();
        let (odd, factor) = terms.next()?;
        terms.next().is_none().then(|| Annihilator { factor: factor.clone(), odd: *odd })
    }

    fn kills(&self, c: &SmoothExpr, j: MultiIndex) -> bool {
        self.odd.is_subset(j) && divides(&self.factor, c)
    }
}

/// `c / f` is a product of atoms with nonnegative powers.
fn divides(f: &SmoothExpr, c: &SmoothExpr) -> bool {
    let quotient = Poly::of(&SmoothExpr::div(c.clone(), f.clone()).simplify());
    !quotient.is_empty() && quotient.terms().all(|(m, _)| m.factors().all(|(_, k)| k >= 0))
}

/// A list of rules; normal forms are exhaustive rewrites followed by annihilation.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RewriteSystem {
    pub rules: Vec<RewriteRule>,
    pub annihilators: Vec<Annihilator>,
}

impl RewriteSystem {
    pub fn is_empty(&self) -> bool {
        self.rules.is_empty() && self.annihilators.is_empty()
    }

    /// First reducible term in basis order: odd monomial, coefficient term and rule.
    fn find(&self, a: &SuperElement) -> Option<(MultiIndex, Monomial, Rational, usize)> {
        for (j, c) in a.terms() {
            for (m, r) in Poly::of(c).terms() {
                if let Some(k) = self.rules.iter().position(|rule| rule.divides(m, *j)) {
                    return Some((*j, m.clone(), r.clone(), k));
                }
            }
        }
        None
    }

    pub fn normal_form(&self, a: &SuperElement) -> SuperElement {
        let (p, q) = a.arity();
        let mut a = a.clone();
        while let Some((j, m, r, k)) = self.find(&a) {
            let rule = &self.rules[k];
            a.add_term(j, -Poly::term(m.clone(), r.clone()).to_expr());
            let rest = j.difference(rule.odd);
            let (_, negative) = rule.odd.wedge(rest).expect("disjoint");
            let cofactor = Poly::term(m.div_vars(&rule.lead), if negative { -r } else { r }).to_expr();
            let tail = &rule.rhs * &Grassmann::monomial(p, q, rest, SmoothExpr::one());
            a = &a + &tail.scale(&cofactor);
        }
        if !self.annihilators.is_empty() {
            a = self.annihilate(&a);
        }
        a
    }

    /// Removing terms never creates a reducible term, so this keeps normal forms normal.
    fn annihilate(&self, a: &SuperElement) -> SuperElement {
        let (p, q) = a.arity();
        let mut out = Grassmann::zero(p, q);
        for (j, c) in a.terms() {
            let ann: Vec<&Annihilator> = self.annihilators.iter().filter(|n| n.odd.is_subset(*j)).collect();
            if ann.iter().any(|n| n.kills(c, *j)) {
                continue;
            }
            let kept: Vec<(Monomial, Rational)> = Poly::of(c)
                .terms()
                .filter(|(m, r)| {
                    let t = Poly::term((*m).clone(), (*r).clone()).to_expr();
                    !ann.iter().any(|n| n.kills(&t, *j))
                })
                .map(|(m, r)| (m.clone(), r.clone()))
                .collect();
            out.add_term(*j, Poly::from_terms(kept).to_expr());
        }
        out
    }
}
