use serde::Serialize;

use super::{Morphism, MorphismError};
use crate::expr::DomainError;
use crate::grassmann::{Grassmann, SuperElement};
use crate::jet::Jet;
use crate::spectrum::{fairfication, find_rpoints, localize, spread_points, LocalAlgebra, LocalElement, RPoint};
use crate::verdict::{Provenance, Settings};

const POINT_TOL: f64 = 1e-6;

/// `f_φ` on sampled R-points of the codomain: `y ↦ (φ(x_i)(y))_i`.
#[derive(Clone, Debug, Serialize)]
pub struct PointMap {
    pub pairs: Vec<(Vec<f64>, Vec<f64>)>,
    /// Every image is an R-point of the domain.
    pub lands_in_domain: bool,
}

impl PointMap {
    pub fn image(&self, y: &[f64]) -> Option<&[f64]> {
        self.pairs.iter().find(|(a, _)| a.as_slice() == y).map(|(_, b)| b.as_slice())
    }
}

fn point_image(phi: &Morphism, y: &[f64]) -> Result<Vec<f64>, DomainError> {
    phi.even_images().iter().map(|a| a.body().eval(y)).collect()
}

pub fn spec_functor(phi: &Morphism, points: &[RPoint]) -> PointMap {
    let reduced = phi.domain().ideal().reduced_generators();
    let mut lands = true;
    let pairs = points
        .iter()
        .filter_map(|pt| {
            let x = point_image(phi, &pt.coords).ok()?;
            lands &= reduced.iter().all(|g| g.eval(&x).is_ok_and(|v| v.abs() <= POINT_TOL));
            Some((pt.coords.clone(), x))
        })
        .collect();
    PointMap { pairs, lands_in_domain: lands }
}

/// `φ_y: (domain)_{f(y)} → (codomain)_y` on jets. Domain jets are taken to order
/// `k + ⌊q/2⌋` since the soul parts of the images raise the jet order by up to `⌊q/2⌋`.
#[derive(Clone, Debug)]
pub struct LocalMorphism {
    pub point: Vec<f64>,
    pub source: Vec<f64>,
    pub order: usize,
    pub domain_order: usize,
    shifts: Vec<LocalElement<f64>>,
    odd: Vec<LocalElement<f64>>,
    arity: (usize, usize),
}

pub fn localize_morphism(phi: &Morphism, y: &[f64], order: usize) -> Result<LocalMorphism, DomainError> {
    let c = phi.codomain().ring();
    let x = point_image(phi, y)?;
    let shifts = phi
        .even_images()
        .iter()
        .zip(&x)
        .map(|(a, &xi)| Ok(&localize(a, y, order)? - &Grassmann::scalar(c.p, c.q, Jet::constant(xi))))
        .collect::<Result<Vec<_>, DomainError>>()?;
    let odd = phi.odd_images().iter().map(|a| localize(a, y, order)).collect::<Result<Vec<_>, _>>()?;
    Ok(LocalMorphism {
        point: y.to_vec(),
        source: x,
        order,
        domain_order: order + c.q / 2,
        shifts,
        odd,
        arity: (c.p, c.q),
    })
}

impl LocalMorphism {
    pub fn apply(&self, a: &LocalElement<f64>) -> LocalElement<f64> {
        let (p, q) = self.arity;
        let mut out = Grassmann::zero(p, q);
        for (index, jet) in a.terms() {
            let mut odd = Grassmann::scalar(p, q, Jet::constant(1.0).truncate(self.order));
            for j in index.indices() {
                odd = &odd * &self.odd[j];
            }
            for (e, &c) in jet.terms() {
                let mut term = odd.scale(&Jet::constant(c));
                for (i, &k) in e.iter().enumerate() {
                    term = &term * &self.shifts[i].pow(k);
                }
                out = &out + &term;
            }
        }
        out
    }

    /// `L_y(φ(r))` against `φ_y(L_{f(y)}(r))`, coefficientwise to `tol` relative.
    pub fn square_commutes(&self, phi: &Morphism, r: &SuperElement, tol: f64) -> Result<bool, MorphismError> {
        let lhs = localize(&phi.apply_raw(r)?, &self.point, self.order).map_err(domain)?;
        let rhs = self.apply(&localize(r, &self.source, self.domain_order).map_err(domain)?);
        let diff = &lhs - &rhs;
        let scale = lhs.terms().chain(rhs.terms()).map(|(_, j)| j.max_abs()).fold(1.0, f64::max);
        let agree = diff.terms().all(|(_, j)| j.max_abs() <= tol * scale);
        Ok(agree)
    }
}

fn domain(e: DomainError) -> MorphismError {
    MorphismError::Undecided { generator: e.to_string() }
}

fn coordinates(phi: &Morphism) -> Vec<SuperElement> {
    let r = phi.domain().ring();
    (0..r.p).map(|i| r.x(i)).chain((0..r.q).map(|j| r.theta(j))).collect()
}

/// Whether the local data `(f_φ, φ#)` at `y` reproduces the stalks of `φ` on
/// the domain coordinates, modulo the localized codomain ideal.
fn sections_agree_at(phi: &Morphism, other: &Morphism, y: &[f64], settings: &Settings) -> bool {
    let order = settings.jet_order;
    let Ok(local) = LocalAlgebra::build(phi.codomain().ideal(), y, order, settings) else { return false };
    let Ok(jq) = local.float() else { return false };
    let Ok(lm) = localize_morphism(phi, y, order) else { return false };
    let Ok(x_other) = point_image(other, y) else { return false };
    if lm.source.iter().zip(&x_other).any(|(a, b)| (a - b).abs() > POINT_TOL) {
        return false;
    }
    coordinates(phi).iter().all(|g| {
        let Ok(lg) = localize(g, &lm.source, lm.domain_order) else { return false };
        let via_sheaf = lm.apply(&lg);
        let Ok(direct) = other.apply(g).and_then(|a| localize(&a, y, order).map_err(domain)) else { return false };
        jq.contains_local(&(&via_sheaf - &direct))
    })
}

/// Whether two morphisms induce the same maps of ringed spaces on the sampled R-points.
pub fn same_local_data(phi: &Morphism, psi: &Morphism, settings: &Settings) -> bool {
    let points = find_rpoints(phi.codomain(), settings);
    spread_points(&points, settings.max_local_points).into_iter().all(|pt| sections_agree_at(phi, psi, &pt.coords, settings))
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub points: usize,
    /// `R(L(φ))` agrees with `φ` on every stalk.
    pub sections_agree: bool,
    /// The codomain is fair on the probes, so agreement on stalks determines `φ`.
    pub fair_on_probes: bool,
    pub roundtrip_exact: bool,
    pub provenance: Provenance,
}

/// `φ ↦ L(φ) = (f_φ, φ#) ↦ R(L(φ))`, compared with `φ` on the coordinates at sampled points.
pub fn adjunction_roundtrip(phi: &Morphism, probes: &[SuperElement], settings: &Settings) -> AdjunctionReport {
    let points = find_rpoints(phi.codomain(), settings);
    let sample = spread_points(&points, settings.max_local_points);
    let sections_agree = !sample.is_empty() && sample.iter().all(|pt| sections_agree_at(phi, phi, &pt.coords, settings));
    let fair_on_probes = fairfication(phi.codomain(), probes, settings).fair_on_probes();
    AdjunctionReport {
        points: sample.len(),
        sections_agree,
        fair_on_probes,
        roundtrip_exact: sections_agree && fair_on_probes,
        provenance: Provenance::Sampled,
    }
}
