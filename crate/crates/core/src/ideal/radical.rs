//! The C∞-radical oracle and the C∞-superreducedness test.

use serde::Serialize;

use super::{Membership, QuotientSuperRing, SuperIdeal};
use crate::expr::{Func, Node, Poly, SmoothExpr, ZeroTest, ZeroVerdict};
use crate::grassmann::{Grassmann, SuperElement};
use crate::scalar::{Rational, Scalar};
use crate::spectrum::{find_zeros, RPoint};
use crate::verdict::{Provenance, Settings};

/// Values below this count as vanishing at a computed zero.
const VANISH: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RadicalVerdict {
    In { provenance: Provenance },
    Out { witness: Vec<f64>, provenance: Provenance },
    Unknown,
}

impl RadicalVerdict {
    pub fn is_in(&self) -> bool {
        matches!(self, RadicalVerdict::In { .. })
    }

    pub fn is_out(&self) -> bool {
        matches!(self, RadicalVerdict::Out { .. })
    }
}

/// `a ∈ ∞√I`. Odd and nilpotent parts always belong to the radical; the body
/// belongs iff it vanishes on the zero set of the reduced ideal.
pub fn radical_membership(a: &SuperElement, ideal: &SuperIdeal, settings: &Settings) -> RadicalVerdict {
    let body = a.body();
    if body.is_literal_zero() {
        return RadicalVerdict::In { provenance: Provenance::Exact };
    }
    let gens = ideal.reduced_generators();
    if gens.iter().any(|g| g.as_const().is_some()) {
        return RadicalVerdict::In { provenance: Provenance::Exact };
    }
    let reduced = QuotientSuperRing::new(ideal.reduced());
    if reduced.normal_form(&Grassmann::scalar(ideal.ring().p, 0, body.clone())).is_zero() {
        return RadicalVerdict::In { provenance: Provenance::Exact };
    }
    let p = ideal.ring().p;
    if gens.is_empty() {
        let test = ZeroTest::new(settings.bounds_for(p), settings.samples, settings.seed);
        return match body.is_zero_on(&test) {
            ZeroVerdict::Zero(provenance) => RadicalVerdict::In { provenance },
            ZeroVerdict::NonZero { witness, .. } => RadicalVerdict::Out { witness, provenance: Provenance::Sampled },
            ZeroVerdict::Unknown => RadicalVerdict::Unknown,
        };
    }
    vanishes_on(&body, &find_zeros(&gens, p, settings))
}

fn vanishes_on(body: &SmoothExpr, points: &[RPoint]) -> RadicalVerdict {
    let mut evaluated = 0;
    for pt in points {
        let Ok(v) = body.eval(&pt.coords) else { continue };
        evaluated += 1;
        if v.abs() > VANISH {
            return RadicalVerdict::Out { witness: pt.coords.clone(), provenance: Provenance::Sampled };
        }
    }
    if evaluated == 0 {
        RadicalVerdict::Unknown
    } else {
        RadicalVerdict::In { provenance: Provenance::Sampled }
    }
}

/// An ideal with the same radical-membership verdicts as `∞√I`: the odd
/// coordinates, the reduced generators and every nilpotent candidate that
/// vanishes on the computed zero set.
pub fn radical_ideal(ideal: &SuperIdeal, settings: &Settings) -> SuperIdeal {
    let ring = ideal.ring();
    let gens = ideal.reduced_generators();
    let mut out: Vec<SuperElement> = (0..ring.q).map(|j| ring.theta(j)).collect();
    out.extend(gens.iter().map(|g| Grassmann::scalar(ring.p, ring.q, g.clone())));
    if !gens.is_empty() {
        let points = find_zeros(&gens, ring.p, settings);
        for c in nilpotent_candidates(&gens, &points, ring.p) {
            if vanishes_on(&c, &points).is_in() {
                out.push(Grassmann::scalar(ring.p, ring.q, c));
            }
        }
    }
    SuperIdeal::new(ring, out).expect("homogeneous generators")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SuperreducedVerdict {
    Yes { provenance: Provenance },
    No { witness: String, point: Vec<f64>, provenance: Provenance },
    Unknown,
}

fn nice_constant(a: f64) -> Rational {
    if (a - a.round()).abs() < 1e-9 {
        Rational::from_f64_lossy(a.round())
    } else {
        Rational::from_f64_lossy(a)
    }
}

/// Elements that vanish on the zero set of the reduced ideal but might not lie in it:
/// bases of pure powers, arguments of flat factors and coordinate hyperplanes
/// containing every computed zero.
pub(crate) fn nilpotent_candidates(gens: &[SmoothExpr], points: &[RPoint], p: usize) -> Vec<SmoothExpr> {
    let mut out: Vec<SmoothExpr> = Vec::new();
    let mut push = |c: SmoothExpr| {
        let c = c.simplify();
        if c.as_const().is_none() && !out.contains(&c) {
            out.push(c);
        }
    };
    for g in gens {
        let poly = Poly::of(g);
        if poly.len() != 1 {
            continue;
        }
        let (m, _) = poly.terms().next().unwrap();
        for (atom, k) in m.factors() {
            match atom.node() {
                Node::Apply(Func::Flat, args) => push(args[0].clone()),
                _ if k >= 2 => push(atom.clone()),
                _ => {}
            }
        }
    }
    if let Some(first) = points.first() {
        for i in 0..p {
            let a = first.coords[i];
            if points.iter().all(|pt| (pt.coords[i] - a).abs() <= VANISH) {
                push(SmoothExpr::var(i) - SmoothExpr::constant(nice_constant(a)));
            }
        }
    }
    out
}

/// Whether `∞√0 = J` in the quotient, i.e. the reduced ideal is C∞-radical.
pub fn is_cinfty_superreduced(q: &QuotientSuperRing, settings: &Settings) -> SuperreducedVerdict {
    let p = q.ring().p;
    let gens = q.ideal().reduced_generators();
    if gens.is_empty() {
        return SuperreducedVerdict::Yes { provenance: Provenance::Exact };
    }
    let points = find_zeros(&gens, p, settings);
    if points.is_empty() {
        return SuperreducedVerdict::Unknown;
    }
    let reduced = q.superreduced();
    for c in nilpotent_candidates(&gens, &points, p) {
        if !vanishes_on(&c, &points).is_in() {
            continue;
        }
        let element = Grassmann::scalar(p, 0, c.clone());
        if let Membership::NotMember { witness, provenance } = reduced.membership(&element, settings) {
            return SuperreducedVerdict::No { witness: c.to_string(), point: witness, provenance: provenance.and(Provenance::Sampled) };
        }
    }
    if regular(&gens, &points, p, settings.max_local_points) {
        SuperreducedVerdict::Yes { provenance: Provenance::Sampled }
    } else {
        SuperreducedVerdict::Unknown
    }
}

/// Jacobian of full row rank at every (spread) point.
fn regular(gens: &[SmoothExpr], points: &[RPoint], p: usize, n: usize) -> bool {
    if gens.len() > p {
        return false;
    }
    let jac: Vec<Vec<SmoothExpr>> = gens.iter().map(|g| (0..p).map(|i| g.partial(i)).collect()).collect();
    crate::spectrum::spread_points(points, n).into_iter().all(|pt| {
        let rows: Option<Vec<Vec<f64>>> =
            jac.iter().map(|row| row.iter().map(|d| d.eval(&pt.coords).ok()).collect()).collect();
        rows.is_some_and(|rows| crate::linalg::rank(&rows, 1e-8) == gens.len())
    })
}
