//! Splitness of quotient superrings: existence of a section of `R → R/J`.

use serde::Serialize;

use super::radical::nilpotent_candidates;
use super::{Membership, QuotientSuperRing};
use crate::expr::{DomainError, SmoothExpr};
use crate::grassmann::{Grassmann, MultiIndex, SuperElement};
use crate::scalar::Scalar;
use crate::spectrum::{find_zeros, JetQuotient};
use crate::verdict::{Provenance, Settings};

const MAX_ORDER: u32 = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SplitVerdict {
    /// A section, given by the images of the even coordinates.
    Split { section: Vec<String>, provenance: Provenance },
    /// `candidate` is nilpotent of order `reduced_order` in the reduced ring, but
    /// no even lift of it has that order: its plain lift has order `even_order`.
    NotSplit { candidate: String, reduced_order: u32, even_order: Option<u32>, provenance: Provenance },
    Unknown,
}

impl SplitVerdict {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitVerdict::Split { .. })
    }

    pub fn is_not_split(&self) -> bool {
        matches!(self, SplitVerdict::NotSplit { .. })
    }
}

/// Whether `C∞(R^{p|q})/I` is split.
///
/// When every generator is either purely reduced or lies in `J`, the identity on
/// the even coordinates is a section. Otherwise a nilpotent candidate `c` of
/// order `m` in the reduced ring is tested: a section would send `c̄` to some
/// `c + n` with `n ∈ J²` even, and `(c + n)^m = c^m + m c^{m-1} n` modulo `J⁴`
/// must lie in `I`. Infeasibility of that linear condition in a jet algebra at
/// a zero of `c` proves non-splitness.
pub fn is_split(q: &QuotientSuperRing, settings: &Settings) -> SplitVerdict {
    let ring = q.ring();
    let trivially_split = q.ideal().generators().iter().all(|g| g.body().is_literal_zero() || g.soul().is_zero());
    if trivially_split {
        let section = (0..ring.p).map(|i| SmoothExpr::var(i).to_string()).collect();
        return SplitVerdict::Split { section, provenance: Provenance::Exact };
    }
    let gens = q.ideal().reduced_generators();
    let points = find_zeros(&gens, ring.p, settings);
    let reduced = q.superreduced();
    for c in nilpotent_candidates(&gens, &points, ring.p) {
        let Some(m) = nilpotency_order(&reduced, &Grassmann::scalar(ring.p, 0, c.clone()), settings) else { continue };
        let lifted = Grassmann::scalar(ring.p, ring.q, c.clone());
        for pt in points.iter().filter(|pt| c.eval(&pt.coords).is_ok_and(|v| v.abs() < 1e-9)).take(settings.max_local_points) {
            let Ok(local) = q.local_algebra(&pt.coords, settings.jet_order, settings) else { continue };
            let obstructed = match local.exact() {
                Some(jq) => lift_obstructed(jq.clone(), &lifted, m).map(|b| (b, Provenance::Exact)),
                None => local.float().and_then(|jq| lift_obstructed(jq, &lifted, m)).map(|b| (b, Provenance::Sampled)),
            };
            if let Ok((true, provenance)) = obstructed {
                return SplitVerdict::NotSplit {
                    candidate: c.to_string(),
                    reduced_order: m,
                    even_order: nilpotency_order(q, &lifted, settings),
                    provenance,
                };
            }
        }
    }
    SplitVerdict::Unknown
}

/// Smallest `n ≤ 8` with `a^n ∈ I`, certified by normal forms.
fn nilpotency_order(q: &QuotientSuperRing, a: &SuperElement, settings: &Settings) -> Option<u32> {
    let mut power = a.clone();
    for n in 1..=MAX_ORDER {
        match q.membership(&power, settings) {
            Membership::Member { .. } => return Some(n),
            Membership::NotMember { .. } | Membership::Unknown => {}
        }
        power = &power * a;
    }
    None
}

fn lift_obstructed<S: Scalar>(mut jq: JetQuotient<S>, c: &SuperElement, m: u32) -> Result<bool, DomainError> {
    let (p, q) = (c.p(), c.q());
    jq.kill_odd_degree(4);
    let factor = c.pow(m - 1).scale(&SmoothExpr::int(m as i64));
    for k in MultiIndex::of_len(q, 2) {
        let t = Grassmann::monomial(p, q, k, SmoothExpr::one());
        let local = jq.localize(&(&factor * &t))?;
        jq.insert_multiples(&local);
    }
    let target = jq.localize(&c.pow(m))?;
    Ok(!jq.contains_local(&target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::SplitSuperRing;

    #[test]
    fn nonsplit_example() {
        let q = QuotientSuperRing::parse(SplitSuperRing::new(1, 2), &["x1^2 + t1t2"]).unwrap();
        assert_eq!(
            is_split(&q, &Settings::default()),
            SplitVerdict::NotSplit {
                candidate: "x1".into(),
                reduced_order: 2,
                even_order: Some(4),
                provenance: Provenance::Exact
            }
        );
    }

    #[test]
    fn split_examples() {
        let s = Settings::default();
        for gens in [&["x1^2", "t1t2"][..], &["t1"], &["sin(x1)"], &[]] {
            let q = QuotientSuperRing::parse(SplitSuperRing::new(1, 2), gens).unwrap();
            assert!(is_split(&q, &s).is_split(), "{gens:?}");
        }
    }
}
