use serde::Serialize;

use super::local::localize;
use super::points::RPoint;
use crate::grassmann::SuperElement;
use crate::ideal::{QuotientSuperRing, SuperIdeal};
use crate::verdict::{Provenance, Settings};

/// Value of a section at one point: its jet, coefficient by coefficient.
#[derive(Clone, Debug, Serialize)]
pub struct SectionValue {
    pub point: Vec<f64>,
    pub jet: Vec<(String, String)>,
}

/// An element seen as the section `x ↦ L_x(r)` over sampled R-points.
#[derive(Clone, Debug, Serialize)]
pub struct GlobalSection {
    pub element: String,
    pub order: usize,
    pub values: Vec<SectionValue>,
}

pub fn global_section(r: &SuperElement, points: &[RPoint], order: usize) -> GlobalSection {
    let values = points
        .iter()
        .filter_map(|pt| {
            let l = localize::<f64>(r, &pt.coords, order).ok()?;
            Some(SectionValue { point: pt.coords.clone(), jet: l.terms().map(|(i, j)| (i.to_string(), j.to_string())).collect() })
        })
        .collect();
    GlobalSection { element: r.to_string(), order, values }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PsiVerdict {
    Zero { provenance: Provenance },
    NonZero { witness: Vec<f64>, provenance: Provenance },
    Unknown,
}

impl PsiVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, PsiVerdict::Zero { .. })
    }
}

/// Whether `L_x(r) = 0` in the local quotient at every sampled R-point.
/// The quotient normal form is tried first.
pub fn psi_kernel_test(r: &SuperElement, q: &QuotientSuperRing, settings: &Settings) -> PsiVerdict {
    if q.normal_form(r).is_zero() {
        return PsiVerdict::Zero { provenance: Provenance::Exact };
    }
    let points = q.rpoints(settings);
    if points.is_empty() {
        return PsiVerdict::Unknown;
    }
    let mut checked = 0;
    for pt in spread(&points, settings.max_local_points) {
        let Ok(local) = q.local_algebra(&pt.coords, settings.jet_order, settings) else { continue };
        match local.contains(r) {
            Ok((true, _)) => checked += 1,
            Ok((false, provenance)) => return PsiVerdict::NonZero { witness: pt.coords.clone(), provenance },
            Err(_) => {}
        }
    }
    if checked == 0 {
        PsiVerdict::Unknown
    } else {
        PsiVerdict::Zero { provenance: Provenance::Sampled }
    }
}

/// At most `n` points spread evenly through the list.
pub(crate) fn spread(points: &[RPoint], n: usize) -> Vec<&RPoint> {
    if points.len() <= n {
        return points.iter().collect();
    }
    (0..n).map(|k| &points[k * points.len() / n]).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FairficationEntry {
    pub probe: String,
    pub verdict: PsiVerdict,
    /// Already zero in the ring itself (normal form vanishes).
    pub zero_in_ring: bool,
}

/// Partition of probes by the `Ψ`-kernel test.
#[derive(Clone, Debug, Serialize)]
pub struct FairficationReport {
    pub killed: Vec<FairficationEntry>,
    pub surviving: Vec<FairficationEntry>,
    pub unknown: Vec<FairficationEntry>,
}

impl FairficationReport {
    /// No probe that is nonzero in the ring dies in the fairfication.
    pub fn fair_on_probes(&self) -> bool {
        self.killed.iter().all(|e| e.zero_in_ring) && self.unknown.is_empty()
    }
}

pub fn fairfication(q: &QuotientSuperRing, probes: &[SuperElement], settings: &Settings) -> FairficationReport {
    let mut report = FairficationReport { killed: Vec::new(), surviving: Vec::new(), unknown: Vec::new() };
    for r in probes {
        let verdict = psi_kernel_test(r, q, settings);
        let entry = FairficationEntry { probe: r.to_string(), zero_in_ring: q.normal_form(r).is_zero(), verdict: verdict.clone() };
        match verdict {
            PsiVerdict::Zero { .. } => report.killed.push(entry),
            PsiVerdict::NonZero { .. } => report.surviving.push(entry),
            PsiVerdict::Unknown => report.unknown.push(entry),
        }
    }
    report
}

/// The quotient by the probes killed in the fairfication.
pub fn fairfied(q: &QuotientSuperRing, probes: &[SuperElement], settings: &Settings) -> QuotientSuperRing {
    let mut gens = q.ideal().generators().to_vec();
    for r in probes {
        if r.is_homogeneous() && !q.normal_form(r).is_zero() && psi_kernel_test(r, q, settings).is_zero() {
            gens.push(r.clone());
        }
    }
    QuotientSuperRing::new(SuperIdeal::new(q.ring(), gens).expect("homogeneous generators"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::SplitSuperRing;

    fn settings() -> Settings {
        Settings { grid: 21, ..Settings::default() }
    }

    #[test]
    fn normal_form_decides_first() {
        let q = QuotientSuperRing::parse(SplitSuperRing::new(1, 1), &["x1"]).unwrap();
        let r = q.ring().parse("x1*t1").unwrap();
        assert_eq!(psi_kernel_test(&r, &q, &settings()), PsiVerdict::Zero { provenance: Provenance::Exact });
    }

    #[test]
    fn free_ring_kills_nothing() {
        let q = QuotientSuperRing::free(SplitSuperRing::new(1, 2));
        let probes: Vec<SuperElement> = ["1", "x1*t1", "flat(x1)*t1t2", "bump(x1, 0, 1)"].iter().map(|s| q.ring().parse(s).unwrap()).collect();
        let rep = fairfication(&q, &probes, &settings());
        assert!(rep.killed.is_empty());
        assert!(rep.fair_on_probes());
    }

    #[test]
    fn flat_probe_dies_in_fairfication() {
        let q = QuotientSuperRing::parse(SplitSuperRing::new(1, 2), &["flat(x1)*t1t2"]).unwrap();
        let r = q.ring().parse("flat(sqrt(2)*x1)*t1t2").unwrap();
        assert_eq!(psi_kernel_test(&r, &q, &settings()), PsiVerdict::Zero { provenance: Provenance::Sampled });
        assert!(!q.normal_form(&r).is_zero());
        let one = q.ring().one();
        assert!(!psi_kernel_test(&one, &q, &settings()).is_zero());
    }
}
