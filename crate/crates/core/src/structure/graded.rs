use serde::Serialize;

use super::SplitSuperRing;
use crate::expr::SmoothExpr;
use crate::grassmann::{Grassmann, SuperElement};
use crate::ideal::{QuotientSuperRing, SuperIdeal};

/// `gr R = ⊕ J^d/J^{d+1}` presented as `(C∞(R^p)/Ī)[θ] / (relations)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedPresentation {
    pub ring: SplitSuperRing,
    #[serde(serialize_with = "display_all")]
    pub reduced: Vec<SmoothExpr>,
    #[serde(serialize_with = "display_all")]
    pub relations: Vec<SuperElement>,
}

fn display_all<T: std::fmt::Display, Ser: serde::Serializer>(v: &[T], s: Ser) -> Result<Ser::Ok, Ser::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl GradedPresentation {
    /// The presentation as a quotient of `C∞(R^{p|q})`.
    pub fn to_quotient(&self) -> QuotientSuperRing {
        let (p, q) = (self.ring.p, self.ring.q);
        let gens = self
            .reduced
            .iter()
            .map(|b| Grassmann::scalar(p, q, b.clone()))
            .chain(self.relations.iter().cloned())
            .collect();
        QuotientSuperRing::new(SuperIdeal::new(self.ring, gens).expect("homogeneous initial forms"))
    }

    /// Split as written: no relation mixes in the reduced part.
    pub fn is_free_over_reduced(&self) -> bool {
        self.relations.is_empty()
    }
}

impl std::fmt::Display for GradedPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: Vec<String>| if v.is_empty() { "0".to_string() } else { v.join(", ") };
        let odd: Vec<String> = (1..=self.ring.q).map(|i| format!("t{i}")).collect();
        write!(f, "(C({})/({}))[{}]", self.ring.p, join(self.reduced.iter().map(|r| r.to_string()).collect()), odd.join(","))?;
        if !self.relations.is_empty() {
            write!(f, "/({})", join(self.relations.iter().map(|r| r.to_string()).collect()))?;
        }
        Ok(())
    }
}

/// Associated graded ring with respect to the canonical superideal, computed
/// from the lowest-degree components of the generators.
pub fn associated_graded(q: &QuotientSuperRing) -> GradedPresentation {
    let ring = q.ring();
    let mut reduced = Vec::new();
    let mut relations = Vec::new();
    for g in q.ideal().generators() {
        match g.min_degree() {
            Some(0) => reduced.push(g.body()),
            Some(d) => relations.push(g.component(d)),
            None => {}
        }
    }
    GradedPresentation { ring, reduced, relations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::LocalAlgebra;
    use crate::verdict::Settings;

    #[test]
    fn nonsplit_graded_is_split() {
        let ring = SplitSuperRing::new(1, 2);
        let q = QuotientSuperRing::parse(ring, &["x1^2 + t1t2"]).unwrap();
        let gr = associated_graded(&q);
        assert_eq!(gr.to_string(), "(C(1)/(x1^2))[t1,t2]");
        assert!(gr.is_free_over_reduced());
        let s = Settings::default();
        let original = LocalAlgebra::build(q.ideal(), &[0.0], 6, &s).unwrap();
        let graded = LocalAlgebra::build(gr.to_quotient().ideal(), &[0.0], 6, &s).unwrap();
        assert_eq!(original.graded_dimensions(), vec![2, 4, 2]);
        assert_eq!(graded.graded_dimensions(), original.graded_dimensions());
    }
}
