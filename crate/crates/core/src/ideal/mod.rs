//! Superideals of `C∞(R^{p|q})`, quotients with rewrite normal forms, and the
//! membership, radical, superreducedness and splitness semi-decisions.

mod radical;
mod rewrite;
mod split;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::expr::{DomainError, ParseError, SmoothExpr, ZeroTest, ZeroVerdict};
use crate::grassmann::{Grassmann, SuperElement};
use crate::spectrum::{find_rpoints, spread_points, LocalAlgebra, RPoint};
use crate::structure::SplitSuperRing;
use crate::verdict::{Provenance, Settings};

pub use radical::{is_cinfty_superreduced, radical_ideal, radical_membership, RadicalVerdict, SuperreducedVerdict};
pub use rewrite::{complete, degrevlex, orient_generator, Annihilator, Completion, RewriteRule, RewriteSystem, Unorientable};
pub use split::{is_split, SplitVerdict};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum IdealError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generator {index} lives in C({p}|{q}) instead of C({ep}|{eq})")]
    Arity { index: usize, p: usize, q: usize, ep: usize, eq: usize },
    #[error("generator {index}: {err}")]
    Parse { index: usize, err: ParseError },
}

/// Finitely generated superideal given by homogeneous generators.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperIdeal {
    ring: SplitSuperRing,
    generators: Vec<SuperElement>,
}

impl SuperIdeal {
    pub fn new(ring: SplitSuperRing, generators: Vec<SuperElement>) -> Result<Self, IdealError> {
        let mut gens = Vec::with_capacity(generators.len());
        for (index, g) in generators.into_iter().enumerate() {
            if g.arity() != (ring.p, ring.q) {
                return Err(IdealError::Arity { index, p: g.p(), q: g.q(), ep: ring.p, eq: ring.q });
            }
            if !g.is_homogeneous() {
                return Err(IdealError::NotHomogeneous(index));
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(SuperIdeal { ring, generators: gens })
    }

    pub fn parse(ring: SplitSuperRing, generators: &[&str]) -> Result<Self, IdealError> {
        let gens = generators
            .iter()
            .enumerate()
            .map(|(index, s)| ring.parse(s).map_err(|err| IdealError::Parse { index, err }))
            .collect::<Result<Vec<_>, _>>()?;
        SuperIdeal::new(ring, gens)
    }

    pub fn zero(ring: SplitSuperRing) -> Self {
        SuperIdeal { ring, generators: Vec::new() }
    }

    pub fn ring(&self) -> SplitSuperRing {
        self.ring
    }

    pub fn generators(&self) -> &[SuperElement] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn even_generators(&self) -> impl Iterator<Item = &SuperElement> {
        self.generators.iter().filter(|g| g.min_degree().is_some_and(|d| d % 2 == 0))
    }

    pub fn odd_generators(&self) -> impl Iterator<Item = &SuperElement> {
        self.generators.iter().filter(|g| g.min_degree().is_some_and(|d| d % 2 == 1))
    }

    /// Generators of the reduced ideal `Ī ⊆ C∞(R^p)`: nonzero bodies of generators.
    pub fn reduced_generators(&self) -> Vec<SmoothExpr> {
        self.generators.iter().map(SuperElement::body).filter(|b| !b.is_literal_zero()).collect()
    }

    /// The reduced ideal as an ideal of `C∞(R^{p|0})`.
    pub fn reduced(&self) -> SuperIdeal {
        let ring = SplitSuperRing::new(self.ring.p, 0);
        let gens = self.reduced_generators().into_iter().map(|b| Grassmann::scalar(ring.p, 0, b)).collect();
        SuperIdeal { ring, generators: gens }
    }

    /// Whether every generator lies in the canonical superideal.
    pub fn inside_canonical(&self) -> bool {
        self.generators.iter().all(|g| g.body().is_literal_zero())
    }

    pub fn sum(&self, other: &SuperIdeal) -> SuperIdeal {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        SuperIdeal { ring: self.ring, generators: gens }
    }

    pub fn product(&self, other: &SuperIdeal) -> SuperIdeal {
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                let c = a * b;
                if !c.is_zero() {
                    gens.push(c);
                }
            }
        }
        SuperIdeal { ring: self.ring, generators: gens }
    }

    pub fn orient(&self) -> Result<RewriteSystem, Vec<Unorientable>> {
        let mut rules = Vec::new();
        let mut errors = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            match orient_generator(i, g) {
                Ok(r) => rules.push(r),
                Err(e) => errors.push(e),
            }
        }
        if errors.is_empty() {
            Ok(RewriteSystem { rules, annihilators: Vec::new() })
        } else {
            Err(errors)
        }
    }
}

impl std::fmt::Display for SuperIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// The canonical superideal `J`, generated by the odd coordinates.
pub fn canonical_superideal(ring: SplitSuperRing) -> SuperIdeal {
    SuperIdeal { ring, generators: (0..ring.q).map(|i| ring.theta(i)).collect() }
}

/// Three-valued ideal membership.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    Member { provenance: Provenance },
    NotMember { witness: Vec<f64>, provenance: Provenance },
    Unknown,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }

    pub fn is_not_member(&self) -> bool {
        matches!(self, Membership::NotMember { .. })
    }
}

/// `C∞(R^{p|q}) / I`. Rewriting uses a completed system of oriented rules;
/// unorientable elements only take part as annihilators and in the local (jet) tests.
#[derive(Clone, Debug)]
pub struct QuotientSuperRing {
    ideal: SuperIdeal,
    rules: RewriteSystem,
    unoriented: Vec<Unorientable>,
    complete: bool,
    cache: Arc<Mutex<LocalCache>>,
}

/// R-points and local algebras already computed, keyed by the settings used.
#[derive(Debug, Default)]
struct LocalCache {
    points: HashMap<String, Vec<RPoint>>,
    algebras: HashMap<(String, Vec<u64>, usize), Arc<LocalAlgebra>>,
}

impl QuotientSuperRing {
    pub fn new(ideal: SuperIdeal) -> Self {
        let Completion { system, unoriented, complete } = complete(ideal.ring.p, ideal.ring.q, &ideal.generators);
        QuotientSuperRing { ideal, rules: system, unoriented, complete, cache: Arc::default() }
    }

    pub fn free(ring: SplitSuperRing) -> Self {
        QuotientSuperRing::new(SuperIdeal::zero(ring))
    }

    pub fn parse(ring: SplitSuperRing, generators: &[&str]) -> Result<Self, IdealError> {
        Ok(QuotientSuperRing::new(SuperIdeal::parse(ring, generators)?))
    }

    pub fn ring(&self) -> SplitSuperRing {
        self.ideal.ring
    }

    pub fn ideal(&self) -> &SuperIdeal {
        &self.ideal
    }

    pub fn rules(&self) -> &RewriteSystem {
        &self.rules
    }

    pub fn unoriented(&self) -> &[Unorientable] {
        &self.unoriented
    }

    /// Whether every generator is used for rewriting.
    pub fn fully_oriented(&self) -> bool {
        self.unoriented.is_empty()
    }

    /// Whether completion finished, in which case normal forms are canonical:
    /// `a − b ∈ I` (in the polynomial sense) iff `nf(a) = nf(b)`.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn normal_form(&self, a: &SuperElement) -> SuperElement {
        self.rules.normal_form(a)
    }

    pub fn parse_element(&self, text: &str) -> Result<SuperElement, ParseError> {
        self.ring().parse(text)
    }

    /// The reduced ring `R/J = C∞(R^p)/Ī` as a quotient of `C∞(R^{p|0})`.
    pub fn superreduced(&self) -> QuotientSuperRing {
        QuotientSuperRing::new(self.ideal.reduced())
    }

    /// Images of the odd coordinates.
    pub fn canonical_superideal(&self) -> Vec<SuperElement> {
        (0..self.ring().q).map(|i| self.normal_form(&self.ring().theta(i))).collect()
    }

    /// Sufficient test for `a ∈ J + I`: the normal form has no body.
    pub fn in_canonical_ideal(&self, a: &SuperElement) -> bool {
        self.normal_form(a).body().is_literal_zero()
    }

    /// `a ∈ I`: exact when the normal form vanishes; a jet obstruction at an
    /// R-point proves non-membership.
    pub fn membership(&self, a: &SuperElement, settings: &Settings) -> Membership {
        self.membership_to_order(a, settings, settings.jet_order)
    }

    pub fn membership_to_order(&self, a: &SuperElement, settings: &Settings, order: usize) -> Membership {
        let nf = self.normal_form(a);
        if nf.is_zero() {
            return Membership::Member { provenance: Provenance::Exact };
        }
        // A normal form that vanishes identically as a function, e.g. sin^2 + cos^2 - 1.
        let test = ZeroTest { tol_abs: settings.tol.abs, ..ZeroTest::new(settings.bounds_for(self.ring().p), settings.samples, settings.seed) };
        if nf.terms().all(|(_, c)| matches!(c.is_zero_on(&test), ZeroVerdict::Zero(_))) {
            return Membership::Member { provenance: Provenance::Sampled };
        }
        let points = self.rpoints(settings);
        for pt in spread_points(&points, settings.max_local_points) {
            let Ok(local) = self.local_algebra(&pt.coords, order, settings) else { continue };
            if let Ok((false, provenance)) = local.contains(a) {
                return Membership::NotMember { witness: pt.coords.clone(), provenance };
            }
        }
        Membership::Unknown
    }

    /// R-points found with `settings`, computed once per ring and settings.
    pub fn rpoints(&self, settings: &Settings) -> Vec<RPoint> {
        let key = format!("{settings:?}");
        if let Some(p) = self.cache.lock().unwrap().points.get(&key) {
            return p.clone();
        }
        let points = find_rpoints(self, settings);
        self.cache.lock().unwrap().points.insert(key, points.clone());
        points
    }

    /// The jet algebra of `I` at `point`, computed once per point, order and settings.
    pub fn local_algebra(&self, point: &[f64], order: usize, settings: &Settings) -> Result<Arc<LocalAlgebra>, DomainError> {
        let key = (format!("{settings:?}"), point.iter().map(|x| x.to_bits()).collect(), order);
        if let Some(l) = self.cache.lock().unwrap().algebras.get(&key) {
            return Ok(l.clone());
        }
        let local = Arc::new(LocalAlgebra::build(&self.ideal, point, order, settings)?);
        self.cache.lock().unwrap().algebras.insert(key, local.clone());
        Ok(local)
    }
}

#[cfg(test)]
mod tests;
