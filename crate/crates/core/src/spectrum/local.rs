use std::collections::HashMap;

use num_traits::One;

use crate::expr::DomainError;
use crate::grassmann::{Grassmann, MultiIndex, SuperElement};
use crate::ideal::SuperIdeal;
use crate::jet::Jet;
use crate::linalg::Echelon;
use crate::scalar::{Rational, Scalar};
use crate::verdict::{Provenance, Settings};

/// Jet representative of a localized element: Grassmann polynomial with jet coefficients.
pub type LocalElement<S> = Grassmann<Jet<S>>;

/// `L_x(r)`: the order-`k` Taylor jet at `x` of every coefficient.
pub fn localize<S: Scalar>(r: &SuperElement, x: &[S], order: usize) -> Result<LocalElement<S>, DomainError> {
    r.try_map_coeffs(|c| Jet::of_expr(c, x, order))
}

fn exponents_up_to(p: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; p]];
    let mut level = vec![vec![0u32; p]];
    for _ in 0..k {
        let mut next = Vec::new();
        for e in &level {
            let last = e.iter().rposition(|&v| v > 0).unwrap_or(0);
            for i in last..p {
                let mut f = e.clone();
                f[i] += 1;
                next.push(f);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// The finite-dimensional algebra `(R/I)_x / m^{k+1}` over the field `S`,
/// as a quotient of the jet space by the span of the localized ideal.
#[derive(Clone, Debug)]
pub struct JetQuotient<S> {
    p: usize,
    q: usize,
    order: usize,
    point: Vec<S>,
    monomials: Vec<Vec<u32>>,
    odd: Vec<MultiIndex>,
    index: HashMap<(Vec<u32>, MultiIndex), usize>,
    /// Jet coordinates are `dx = h·u`; entry `a` of a vector stores the coefficient of `u^β` (`scales[a] = h^|β|`).
    scales: Vec<S>,
    span: Echelon<S>,
    exact: bool,
}

/// Step `h` balancing the growth of jet coefficients, so that float elimination
/// does not mistake shifted multiples of a steep jet for parallel vectors.
fn balancing_step<S: Scalar>(jets: &[&Jet<S>]) -> f64 {
    let mut h: f64 = 1.0;
    for jet in jets {
        let mut by_degree: Vec<f64> = Vec::new();
        for (e, c) in jet.terms() {
            let d = e.iter().map(|&x| x as usize).sum::<usize>();
            if by_degree.len() <= d {
                by_degree.resize(d + 1, 0.0);
            }
            by_degree[d] = by_degree[d].max(c.to_f64_lossy().abs());
        }
        let Some(d0) = by_degree.iter().position(|&m| m > 0.0) else { continue };
        for (k, &m) in by_degree.iter().enumerate().skip(d0 + 1) {
            if m > 0.0 {
                h = h.min((by_degree[d0] / m).powf(1.0 / (k - d0) as f64));
            }
        }
    }
    h.max(1e-6)
}

impl<S: Scalar> JetQuotient<S> {
    pub fn new(ideal: &SuperIdeal, point: &[S], order: usize, tol: f64) -> Result<Self, DomainError> {
        let ring = ideal.ring();
        let (p, q) = (ring.p, ring.q);
        let monomials = exponents_up_to(p, order);
        let odd = MultiIndex::all(q);
        let mut index = HashMap::new();
        for (a, m) in monomials.iter().enumerate() {
            for (b, l) in odd.iter().enumerate() {
                index.insert((m.clone(), *l), a * odd.len() + b);
            }
        }
        let locals =
            ideal.generators().iter().map(|g| localize(g, point, order)).collect::<Result<Vec<_>, _>>()?;
        let h = if S::EXACT {
            1.0
        } else {
            balancing_step(&locals.iter().flat_map(|l| l.terms().map(|(_, j)| j)).collect::<Vec<_>>())
        };
        let scales = monomials
            .iter()
            .map(|m| S::from_f64_lossy(h.powi(m.iter().sum::<u32>() as i32)))
            .collect();
        let mut jq = JetQuotient {
            p,
            q,
            order,
            point: point.to_vec(),
            span: Echelon::new(monomials.len() * odd.len(), tol),
            monomials,
            odd,
            index,
            scales,
            exact: S::EXACT,
        };
        for local in &locals {
            jq.exact &= local.terms().all(|(_, j)| j.is_exact());
            jq.insert_multiples(local);
        }
        Ok(jq)
    }

    /// Add every `dx^β θ^L · a` to the span.
    pub fn insert_multiples(&mut self, a: &LocalElement<S>) {
        for m in self.monomials.clone() {
            let mono = Jet::from_terms(Some(self.order), [(m, S::one())]);
            let shifted = a.map_coeffs(|c| c * &mono);
            if shifted.is_zero() {
                continue;
            }
            for l in self.odd.clone() {
                let t = Grassmann::monomial(self.p, self.q, l, Jet::one());
                let v = self.vector(&(&t * &shifted));
                self.span.insert(&v);
            }
        }
    }

    pub fn insert(&mut self, a: &LocalElement<S>) {
        let v = self.vector(a);
        self.span.insert(&v);
    }

    pub fn vector(&self, a: &LocalElement<S>) -> Vec<S> {
        let mut v = vec![S::zero(); self.span.dim()];
        for (l, jet) in a.terms() {
            for (e, c) in jet.terms() {
                let mut e = e.clone();
                if e.iter().map(|&x| x as usize).sum::<usize>() > self.order {
                    continue;
                }
                e.resize(self.p, 0);
                let i = self.index[&(e, *l)];
                v[i] = c.clone() * self.scales[i / self.odd.len()].clone();
            }
        }
        v
    }

    fn element(&self, v: &[S]) -> LocalElement<S> {
        let mut out = Grassmann::zero(self.p, self.q);
        for (a, m) in self.monomials.iter().enumerate() {
            for (b, l) in self.odd.iter().enumerate() {
                let c = &v[a * self.odd.len() + b];
                if !c.is_zero() {
                    let c = c.clone() / self.scales[a].clone();
                    out.add_term(*l, Jet::from_terms(Some(self.order), [(m.clone(), c)]));
                }
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn point(&self) -> &[S] {
        &self.point
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn dimension(&self) -> usize {
        self.span.dim() - self.span.rank()
    }

    pub fn localize(&self, r: &SuperElement) -> Result<LocalElement<S>, DomainError> {
        localize(r, &self.point, self.order)
    }

    pub fn reduce(&self, a: &LocalElement<S>) -> LocalElement<S> {
        self.element(&self.span.reduce(&self.vector(a)))
    }

    pub fn contains_local(&self, a: &LocalElement<S>) -> bool {
        self.span.contains(&self.vector(a))
    }

    /// Add `J^d` to the span, i.e. pass to the quotient by the `d`-th power of the odd ideal.
    pub fn kill_odd_degree(&mut self, d: usize) {
        for a in 0..self.monomials.len() {
            for (b, l) in self.odd.iter().enumerate() {
                if l.len() >= d {
                    let mut v = vec![S::zero(); self.span.dim()];
                    v[a * self.odd.len() + b] = S::one();
                    self.span.insert(&v);
                }
            }
        }
    }

    /// Dimensions of `J^d / J^{d+1}` for `d = 0..=q`.
    pub fn graded_dimensions(&self) -> Vec<usize> {
        let mut quotient_dims = vec![0];
        for d in 1..=self.q + 1 {
            let mut e = self.clone();
            e.kill_odd_degree(d);
            quotient_dims.push(e.dimension());
        }
        quotient_dims.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// A [`JetQuotient`] over the rationals when the point and all jets are exact,
/// over `f64` otherwise.
#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    ideal: SuperIdeal,
    point: Vec<f64>,
    order: usize,
    tol: f64,
    kind: LocalKind,
}

#[derive(Clone, Debug)]
enum LocalKind {
    Exact(JetQuotient<Rational>),
    Float(JetQuotient<f64>),
}

fn is_short_dyadic(x: f64) -> bool {
    let s = x * (1u64 << 20) as f64;
    s.is_finite() && s == s.trunc() && s.abs() < 1e15
}

impl LocalAlgebra {
    pub fn build(ideal: &SuperIdeal, point: &[f64], order: usize, settings: &Settings) -> Result<Self, DomainError> {
        let tol = settings.tol.abs.max(1e-9);
        let mut kind = None;
        if point.iter().all(|&x| is_short_dyadic(x)) {
            let pt: Vec<Rational> = point.iter().map(|&x| Rational::from_f64_lossy(x)).collect();
            let jq = JetQuotient::<Rational>::new(ideal, &pt, order, 0.0)?;
            if jq.is_exact() {
                kind = Some(LocalKind::Exact(jq));
            }
        }
        let kind = match kind {
            Some(k) => k,
            None => LocalKind::Float(JetQuotient::<f64>::new(ideal, point, order, tol)?),
        };
        Ok(LocalAlgebra { ideal: ideal.clone(), point: point.to_vec(), order, tol, kind })
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn provenance(&self) -> Provenance {
        match self.kind {
            LocalKind::Exact(_) => Provenance::Exact,
            LocalKind::Float(_) => Provenance::Sampled,
        }
    }

    pub fn exact(&self) -> Option<&JetQuotient<Rational>> {
        match &self.kind {
            LocalKind::Exact(jq) => Some(jq),
            LocalKind::Float(_) => None,
        }
    }

    /// The same algebra over `f64`.
    pub fn float(&self) -> Result<JetQuotient<f64>, DomainError> {
        match &self.kind {
            LocalKind::Float(jq) => Ok(jq.clone()),
            LocalKind::Exact(_) => JetQuotient::new(&self.ideal, &self.point, self.order, self.tol),
        }
    }

    /// Whether the jet of `r` lies in the localized ideal, and how that was decided.
    pub fn contains(&self, r: &SuperElement) -> Result<(bool, Provenance), DomainError> {
        if let LocalKind::Exact(jq) = &self.kind {
            let l = jq.localize(r)?;
            if l.terms().all(|(_, j)| j.is_exact()) {
                return Ok((jq.contains_local(&l), Provenance::Exact));
            }
        }
        let jq = self.float()?;
        Ok((jq.contains_local(&jq.localize(r)?), Provenance::Sampled))
    }

    pub fn dimension(&self) -> usize {
        match &self.kind {
            LocalKind::Exact(jq) => jq.dimension(),
            LocalKind::Float(jq) => jq.dimension(),
        }
    }

    pub fn graded_dimensions(&self) -> Vec<usize> {
        match &self.kind {
            LocalKind::Exact(jq) => jq.graded_dimensions(),
            LocalKind::Float(jq) => jq.graded_dimensions(),
        }
    }
}
