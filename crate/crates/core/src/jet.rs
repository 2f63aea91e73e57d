//! Truncated multivariate Taylor series at a point.
//!
//! `Jet::of_expr(e, x0, k)` is the order-`k` Taylor polynomial of `e` at `x0`
//! in the increments `dx_i = x_i - x0_i`. Flat-type primitives are handled by
//! closed-form derivative recurrences, so every derivative of `flat` at `0`
//! is exactly zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops;

use num_traits::{One, Zero};

use crate::expr::{DomainError, DomainErrorKind, Func, Node, SmoothExpr};
use crate::grassmann::Coefficient;
use crate::scalar::{Rational, Scalar};

/// Exponent vector with trailing zeros removed.
pub type Exponents = Vec<u32>;

fn trim(mut a: Exponents) -> Exponents {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u32]) -> usize {
    a.iter().map(|&e| e as usize).sum()
}

fn add_exponents(a: &[u32], b: &[u32]) -> Exponents {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect()
}

/// Truncated Taylor polynomial. `order == None` means no truncation (constants).
#[derive(Clone)]
pub struct Jet<S> {
    order: Option<usize>,
    terms: BTreeMap<Exponents, S>,
    exact: bool,
}

fn min_order(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<S: Scalar> Jet<S> {
    pub fn constant(c: S) -> Self {
        let mut j = Jet { order: None, terms: BTreeMap::new(), exact: S::EXACT };
        j.insert(Vec::new(), c);
        j
    }

    pub fn zero_to(order: usize) -> Self {
        Jet { order: Some(order), terms: BTreeMap::new(), exact: S::EXACT }
    }

    /// `x_i` expanded at the value `at`.
    pub fn variable(i: usize, at: S, order: usize) -> Self {
        let mut j = Jet::constant(at).truncate(order);
        if order >= 1 {
            let mut e = vec![0; i + 1];
            e[i] = 1;
            j.insert(e, S::one());
        }
        j
    }

    pub fn from_terms(order: Option<usize>, terms: impl IntoIterator<Item = (Exponents, S)>) -> Self {
        let mut j = Jet { order, terms: BTreeMap::new(), exact: S::EXACT };
        for (e, c) in terms {
            j.insert(e, c);
        }
        j
    }

    fn insert(&mut self, e: Exponents, c: S) {
        let e = trim(e);
        if self.order.is_some_and(|k| degree(&e) > k) || c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    /// Whether every coefficient was computed without rounding.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub(crate) fn mark_inexact(mut self) -> Self {
        self.exact = false;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> S {
        self.terms.get(&trim(e.to_vec())).cloned().unwrap_or_else(S::zero)
    }

    pub fn value(&self) -> S {
        self.coefficient(&[])
    }

    /// `∂^α f(x0) = α! · c_α`.
    pub fn derivative(&self, alpha: &[u32]) -> S {
        let fact: u64 = alpha.iter().map(|&a| (1..=a as u64).product::<u64>()).product();
        self.coefficient(alpha) * S::from_int(fact as i64)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = self.order.map_or(order, |k| k.min(order));
        Jet {
            order: Some(order),
            terms: self.terms.iter().filter(|(e, _)| degree(e) <= order).map(|(e, c)| (e.clone(), c.clone())).collect(),
            exact: self.exact,
        }
    }

    /// Smallest total degree with a non-negligible coefficient; `None` if the
    /// jet vanishes to its order.
    pub fn valuation(&self, tol: f64) -> Option<usize> {
        self.terms.iter().filter(|(_, c)| !c.negligible(tol)).map(|(e, _)| degree(e)).min()
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.valuation(tol).is_none()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.to_f64_lossy().abs()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Jet { order: self.order, terms: BTreeMap::new(), exact: self.exact };
        for (e, a) in &self.terms {
            out.insert(e.clone(), a.clone() * c.clone());
        }
        out
    }

    /// The part without constant term.
    pub fn increment(&self) -> Self {
        let mut d = self.clone();
        d.terms.remove(&Vec::new());
        d
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Jet::constant(S::one());
        out.exact = self.exact;
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `Σ_n d[n]/n! (self - self(0))^n`: composition with a univariate function
    /// whose derivatives at `self(0)` are `d`.
    pub fn compose_univariate(&self, d: &[S]) -> Self {
        let delta = self.increment();
        let mut out = Jet { order: self.order, terms: BTreeMap::new(), exact: self.exact };
        let mut power = Jet::constant(S::one());
        let mut fact = S::one();
        for (n, dn) in d.iter().enumerate() {
            if n > 0 {
                power = &power * &delta;
                fact = fact * S::from_int(n as i64);
                if power.terms.is_empty() {
                    break;
                }
            }
            out = &out + &power.scale(&(dn.clone() / fact.clone()));
        }
        out
    }

    /// `1/self`, or `None` if the value is zero.
    pub fn recip(&self) -> Option<Self> {
        let v = self.value();
        if v.is_zero() {
            return None;
        }
        let inv = S::one() / v;
        let n = self.order.unwrap_or(0) + 1;
        // d^n/du^n (1/u) = (-1)^n n! u^{-n-1}
        let mut d = Vec::with_capacity(n);
        let mut c = inv.clone();
        for k in 0..n {
            d.push(c.clone());
            c = -(c * inv.clone()) * S::from_int(k as i64 + 1);
        }
        Some(self.compose_univariate(&d))
    }

    /// Substitute jets for the increments: `Σ c_α Π (subs_i - subs_i(0))^{α_i}`.
    pub fn compose(&self, subs: &[Jet<S>]) -> Self {
        let deltas: Vec<Jet<S>> = subs.iter().map(Jet::increment).collect();
        let mut out = Jet::constant(S::zero());
        out.terms.clear();
        out.exact = self.exact && subs.iter().all(|s| s.exact);
        for (e, c) in &self.terms {
            let mut t = Jet::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &deltas[i].pow(k);
                }
            }
            out = &out + &t;
        }
        let order = subs.iter().fold(self.order, |o, s| min_order(o, s.order));
        match order {
            Some(k) => out.truncate(k),
            None => out,
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Jet<T> {
        let mut out = Jet { order: self.order, terms: BTreeMap::new(), exact: self.exact && T::EXACT };
        for (e, c) in &self.terms {
            out.insert(e.clone(), f(c));
        }
        out
    }

    /// Taylor jet of `e` at `x0` to total order `order`.
    pub fn of_expr(e: &SmoothExpr, x0: &[S], order: usize) -> Result<Self, DomainError> {
        jet_of(e, x0, order)
    }
}

fn fail<T>(kind: DomainErrorKind, e: &SmoothExpr) -> Result<T, DomainError> {
    Err(DomainError { kind, subexpr: e.clone() })
}

fn flat_core(e: &SmoothExpr) -> Option<&SmoothExpr> {
    match e.node() {
        Node::Apply(f, _) if f.is_flat_type() => Some(e),
        Node::Pow(b, n) if *n > 0 => flat_core(b),
        _ => None,
    }
}

fn jet_of<S: Scalar>(e: &SmoothExpr, x0: &[S], k: usize) -> Result<Jet<S>, DomainError> {
    Ok(match e.node() {
        Node::Const(c) => Jet::constant(S::from_rational(c)).truncate(k),
        Node::Var(i) => match x0.get(*i) {
            Some(v) => Jet::variable(*i, v.clone(), k),
            None => return fail(DomainErrorKind::PointArity, e),
        },
        Node::Add(xs) => {
            let mut out = Jet::zero_to(k);
            for x in xs {
                out = &out + &jet_of(x, x0, k)?;
            }
            out
        }
        Node::Mul(xs) => {
            for x in xs {
                if let Some(core) = flat_core(x) {
                    let j = jet_of(core, x0, k)?;
                    if j.terms.is_empty() {
                        return Ok(j);
                    }
                }
            }
            let mut out = Jet::constant(S::one()).truncate(k);
            for x in xs {
                out = &out * &jet_of(x, x0, k)?;
            }
            out
        }
        Node::Neg(a) => -&jet_of(a, x0, k)?,
        Node::Div(a, b) => {
            if let Some(core) = flat_core(a) {
                let j = jet_of(core, x0, k)?;
                if j.terms.is_empty() {
                    return Ok(j);
                }
            }
            let num = jet_of(a, x0, k)?;
            let Some(inv) = jet_of(b, x0, k)?.recip() else {
                return fail(DomainErrorKind::DivisionByZero, e);
            };
            &num * &inv
        }
        Node::Pow(a, n) => {
            let base = jet_of(a, x0, k)?;
            if *n >= 0 {
                base.pow(*n as u32)
            } else {
                match base.recip() {
                    Some(inv) => inv.pow(n.unsigned_abs()),
                    None => return fail(DomainErrorKind::DivisionByZero, e),
                }
            }
        }
        Node::Apply(f, args) => {
            let js = args.iter().map(|a| jet_of(a, x0, k)).collect::<Result<Vec<_>, _>>()?;
            apply_func(*f, &js, k, e)?
        }
    })
}

/// Polynomial in one variable with rational coefficients, lowest degree first.
type UPoly = Vec<Rational>;

fn upoly_deriv(p: &UPoly) -> UPoly {
    p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer((i as i64).into())).collect()
}

fn upoly_shift(p: &UPoly, by: usize) -> UPoly {
    let mut out = vec![Rational::zero(); by];
    out.extend(p.iter().cloned());
    out
}

fn upoly_add(a: &UPoly, b: &UPoly, sign: i64) -> UPoly {
    let n = a.len().max(b.len());
    let s = Rational::from_integer(sign.into());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x + y * &s
        })
        .collect()
}

fn upoly_eval<S: Scalar>(p: &UPoly, t: &S) -> S {
    p.iter().rev().fold(S::zero(), |acc, c| acc * t.clone() + S::from_rational(c))
}

/// `flat^{(n)}(u) = Q_n(1/u) flat(u)`, `Q_{n+1}(t) = 2t³Q_n(t) - t²Q_n'(t)`.
fn flat_polys(n: usize) -> Vec<UPoly> {
    let two = Rational::from_integer(2.into());
    let mut out = vec![vec![Rational::one()]];
    for _ in 0..n {
        let q = out.last().unwrap();
        let a: UPoly = upoly_shift(q, 3).into_iter().map(|c| c * &two).collect();
        let b = upoly_shift(&upoly_deriv(q), 2);
        out.push(upoly_add(&a, &b, -1));
    }
    out
}

/// `G^{(n)}(s) = P_n(1/s) G(s)` for `G(s) = exp(-1/s)`, `P_{n+1}(t) = t²(P_n - P_n')`.
fn bump_polys(n: usize) -> Vec<UPoly> {
    let mut out = vec![vec![Rational::one()]];
    for _ in 0..n {
        let p = out.last().unwrap();
        out.push(upoly_shift(&upoly_add(p, &upoly_deriv(p), -1), 2));
    }
    out
}

/// `tan^{(n)} = P_n(tan)`, `P_0(T) = T`, `P_{n+1} = P_n'(T)(1 + T²)`.
fn tan_polys(n: usize) -> Vec<UPoly> {
    let mut out = vec![vec![Rational::zero(), Rational::one()]];
    for _ in 0..n {
        let d = upoly_deriv(out.last().unwrap());
        out.push(upoly_add(&d, &upoly_shift(&d, 2), 1));
    }
    out
}

fn transcendental<S: Scalar>(u0: &S, f: fn(f64) -> f64) -> S {
    S::from_f64_lossy(f(u0.to_f64_lossy()))
}

fn apply_func<S: Scalar>(f: Func, js: &[Jet<S>], k: usize, e: &SmoothExpr) -> Result<Jet<S>, DomainError> {
    let n = k + 1;
    let u = &js[0];
    let u0 = u.value();
    let zero_at_zero = u0.is_zero();
    // `exact` tracks whether the derivative values below are exact in S.
    let (d, exact): (Vec<S>, bool) = match f {
        Func::Exp => {
            let v = if zero_at_zero { S::one() } else { transcendental(&u0, f64::exp) };
            (vec![v; n], zero_at_zero)
        }
        Func::Sin | Func::Cos => {
            let (s, c) = if zero_at_zero {
                (S::zero(), S::one())
            } else {
                (transcendental(&u0, f64::sin), transcendental(&u0, f64::cos))
            };
            let cycle = [s.clone(), c.clone(), -s, -c];
            let start = if f == Func::Sin { 0 } else { 1 };
            ((0..n).map(|i| cycle[(start + i) % 4].clone()).collect(), zero_at_zero)
        }
        Func::Tan => {
            let t = if zero_at_zero { S::zero() } else { transcendental(&u0, f64::tan) };
            if !t.to_f64_lossy().is_finite() {
                return fail(DomainErrorKind::NonFinite, e);
            }
            (tan_polys(k).iter().map(|p| upoly_eval(p, &t)).collect(), zero_at_zero)
        }
        Func::Log => {
            if u0 <= S::zero() {
                return fail(DomainErrorKind::LogOfNonPositive, e);
            }
            let is_one = u0.is_one();
            let mut d = vec![if is_one { S::zero() } else { transcendental(&u0, f64::ln) }];
            let inv = S::one() / u0.clone();
            let mut c = inv.clone();
            for m in 1..n {
                d.push(c.clone());
                c = -(c * inv.clone()) * S::from_int(m as i64);
            }
            (d, is_one)
        }
        Func::Sqrt => {
            if u0 < S::zero() || (zero_at_zero && k > 0) {
                return fail(DomainErrorKind::SqrtOfNegative, e);
            }
            let exact = zero_at_zero || u0.is_one();
            let r = if exact { u0.clone() } else { transcendental(&u0, f64::sqrt) };
            let mut d = vec![r.clone()];
            if !zero_at_zero {
                let inv = S::one() / u0.clone();
                let mut c = r;
                for m in 0..k {
                    let coef = S::from_rational(&Rational::new(1.into(), 2.into())) - S::from_int(m as i64);
                    c = c * coef * inv.clone();
                    d.push(c.clone());
                }
            }
            (d, exact)
        }
        Func::Flat => {
            let v = transcendental(&u0, |x| if x == 0.0 { 0.0 } else { (-(x * x).recip()).exp() });
            if zero_at_zero || v.is_zero() {
                return Ok(inexact_unless(Jet::zero_to(k), S::EXACT && zero_at_zero && u.exact));
            }
            let t = S::one() / u0.clone();
            (flat_polys(k).iter().map(|p| upoly_eval(p, &t) * v.clone()).collect(), false)
        }
        Func::Bump => {
            let s = &(&js[0] - &js[1]) * &(&js[2] - &js[0]);
            let s0 = s.value();
            let v = transcendental(&s0, |x| if x > 0.0 { (-x.recip()).exp() } else { 0.0 });
            if s0 <= S::zero() || v.is_zero() {
                let exact = S::EXACT && s0 <= S::zero() && s.exact;
                return Ok(inexact_unless(Jet::zero_to(k), exact));
            }
            let t = S::one() / s0;
            let d: Vec<S> = bump_polys(k).iter().map(|p| upoly_eval(p, &t) * v.clone()).collect();
            return Ok(s.compose_univariate(&d).truncate(k).mark_inexact());
        }
    };
    let out = u.compose_univariate(&d).truncate(k);
    Ok(inexact_unless(out, exact))
}

fn inexact_unless<S: Scalar>(j: Jet<S>, exact: bool) -> Jet<S> {
    if exact {
        j
    } else {
        j.mark_inexact()
    }
}

impl<S: Scalar> PartialEq for Jet<S> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<S: Scalar> fmt::Debug for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet(")?;
        fmt::Display::fmt(self, f)?;
        match self.order {
            Some(k) => write!(f, "; order {k})"),
            None => write!(f, ")"),
        }
    }
}

impl<S: Scalar> fmt::Display for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|(e, _)| (degree(e), std::cmp::Reverse((*e).clone())));
        for (n, (e, c)) in sorted.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*dx{}", i + 1)?,
                    _ => write!(f, "*dx{}^{p}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> ops::Add for &Jet<S> {
    type Output = Jet<S>;

    fn add(self, rhs: &Jet<S>) -> Jet<S> {
        let mut out = Jet { order: min_order(self.order, rhs.order), terms: BTreeMap::new(), exact: self.exact && rhs.exact };
        for (e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> ops::Neg for &Jet<S> {
    type Output = Jet<S>;

    fn neg(self) -> Jet<S> {
        Jet { order: self.order, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(), exact: self.exact }
    }
}

impl<S: Scalar> ops::Sub for &Jet<S> {
    type Output = Jet<S>;

    fn sub(self, rhs: &Jet<S>) -> Jet<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> ops::Mul for &Jet<S> {
    type Output = Jet<S>;

    fn mul(self, rhs: &Jet<S>) -> Jet<S> {
        let order = min_order(self.order, rhs.order);
        let mut out = Jet { order, terms: BTreeMap::new(), exact: self.exact && rhs.exact };
        for (a, x) in &self.terms {
            let da = degree(a);
            if order.is_some_and(|k| da > k) {
                continue;
            }
            for (b, y) in &rhs.terms {
                if order.is_some_and(|k| da + degree(b) > k) {
                    continue;
                }
                out.insert(add_exponents(a, b), x.clone() * y.clone());
            }
        }
        out
    }
}

macro_rules! owned_jet_op {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> ops::$tr for Jet<S> {
            type Output = Jet<S>;

            fn $m(self, rhs: Jet<S>) -> Jet<S> {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_jet_op!(Add, add);
owned_jet_op!(Sub, sub);
owned_jet_op!(Mul, mul);

impl<S: Scalar> ops::Neg for Jet<S> {
    type Output = Jet<S>;

    fn neg(self) -> Jet<S> {
        -&self
    }
}

impl<S: Scalar> Zero for Jet<S> {
    fn zero() -> Self {
        Jet { order: None, terms: BTreeMap::new(), exact: S::EXACT }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> One for Jet<S> {
    fn one() -> Self {
        Jet::constant(S::one())
    }
}

impl<S: Scalar> Coefficient for Jet<S> {
    fn from_rational(r: &Rational) -> Self {
        Jet::constant(S::from_rational(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str, p: usize) -> SmoothExpr {
        SmoothExpr::parse(s, p).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn polynomial_jets_are_exact() {
        let j = Jet::<Rational>::of_expr(&e("x1^3 + 2*x1*x2", 2), &[r(1), r(2)], 3).unwrap();
        assert!(j.is_exact());
        assert_eq!(j.value(), r(5));
        assert_eq!(j.derivative(&[1]), r(7));
        assert_eq!(j.derivative(&[1, 1]), r(2));
        assert_eq!(j.derivative(&[3]), r(6));
    }

    #[test]
    fn exp_and_trig_at_zero_are_exact() {
        let j = Jet::<Rational>::of_expr(&e("exp(x1)*cos(x1)", 1), &[r(0)], 4).unwrap();
        assert!(j.is_exact());
        // e^x cos x = 1 + x - x^3/3 - x^4/6 + ...
        let want = [r(1), r(1), r(0), Rational::new((-1).into(), 3.into()), Rational::new((-1).into(), 6.into())];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(&j.coefficient(&[n as u32]), w, "order {n}");
        }
    }

    #[test]
    fn flat_jet_vanishes_at_zero() {
        for expr in ["flat(x1)", "2*x1^-3*flat(x1)", "flat(x1)^2*sin(x1)", "bump(x1, 0, 1)"] {
            let j = Jet::<Rational>::of_expr(&e(expr, 1), &[r(0)], 8).unwrap();
            assert!(j.terms().next().is_none(), "{expr}");
            assert!(j.is_exact());
        }
    }

    #[test]
    fn flat_jet_matches_symbolic_derivatives() {
        let f = e("flat(x1)", 1);
        for &x in &[0.6, -0.9, 1.7] {
            let j = Jet::<f64>::of_expr(&f, &[x], 5).unwrap();
            let mut d = f.clone();
            for n in 0..=5u32 {
                let sym = d.eval(&[x]).unwrap();
                let jv = j.derivative(&[n]);
                assert!((sym - jv).abs() <= 1e-9 * sym.abs().max(1.0), "x={x} n={n}: {sym} vs {jv}");
                d = d.partial(0);
            }
        }
    }

    #[test]
    fn tan_log_sqrt_bump_match_symbolic_derivatives() {
        for (s, x) in [("tan(x1)", 0.3), ("log(x1)", 1.4), ("sqrt(x1)", 2.5), ("bump(x1, -1, 1)", 0.2), ("1/(1 + x1^2)", 0.7)] {
            let f = e(s, 1);
            let j = Jet::<f64>::of_expr(&f, &[x], 4).unwrap();
            let mut d = f.clone();
            for n in 0..=4u32 {
                let sym = d.eval(&[x]).unwrap();
                let jv = j.derivative(&[n]);
                assert!((sym - jv).abs() <= 1e-8 * sym.abs().max(1.0), "{s} n={n}: {sym} vs {jv}");
                d = d.partial(0);
            }
        }
    }

    #[test]
    fn composition_of_jets() {
        // sin(x) at 0 composed into exp: exp(sin x) = 1 + x + x^2/2 + 0 x^3 + ...
        let sin = Jet::<Rational>::of_expr(&e("sin(x1)", 1), &[r(0)], 4).unwrap();
        let outer = Jet::<Rational>::of_expr(&e("exp(x1)", 1), &[r(0)], 4).unwrap();
        let c = outer.compose(&[sin]);
        assert_eq!(c.coefficient(&[2]), Rational::new(1.into(), 2.into()));
        assert_eq!(c.coefficient(&[3]), r(0));
    }

    #[test]
    fn domain_errors() {
        assert!(Jet::<f64>::of_expr(&e("log(x1)", 1), &[0.0], 2).is_err());
        assert!(Jet::<f64>::of_expr(&e("1/x1", 1), &[0.0], 2).is_err());
        assert!(Jet::<f64>::of_expr(&e("sqrt(x1)", 1), &[0.0], 1).is_err());
    }
}
