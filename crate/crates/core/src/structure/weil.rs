use thiserror::Error;

use crate::expr::{DomainError, SmoothExpr};
use crate::grassmann::{Grassmann, MultiIndex, Parity, SuperElement};
use crate::jet::Jet;
use crate::linalg::Echelon;
use crate::scalar::Scalar;
use crate::verdict::Provenance;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum WeilError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generator {0} is a unit, so the quotient is not local")]
    NotLocal(usize),
    #[error("generator {0} has even coordinates (p = {1})")]
    NotPointed(usize, usize),
    #[error("generator {0} has non-constant coefficients")]
    NonConstant(usize),
    #[error("argument {0} is not even")]
    NotEven(usize),
    #[error("{0}")]
    Domain(#[from] DomainError),
}

/// `R[θ¹..θ^q] / I` for a homogeneous ideal `I` inside the maximal ideal:
/// a finite-dimensional local superalgebra `R ⊕ m` with `m` nilpotent.
///
/// Elements are kept as canonical representatives modulo `I`.
#[derive(Clone, Debug)]
pub struct WeilSuperAlgebra<S> {
    q: usize,
    basis: Vec<MultiIndex>,
    span: Echelon<S>,
    generators: Vec<Grassmann<S>>,
}

impl<S: Scalar> WeilSuperAlgebra<S> {
    pub fn new(q: usize, generators: Vec<Grassmann<S>>) -> Result<Self, WeilError> {
        let basis = MultiIndex::all(q);
        let mut span = Echelon::new(basis.len(), 1e-12);
        for (n, g) in generators.iter().enumerate() {
            if !g.is_homogeneous() {
                return Err(WeilError::NotHomogeneous(n));
            }
            if !g.body().is_zero() {
                return Err(WeilError::NotLocal(n));
            }
            let g = g.clone().with_p(0);
            for l in &basis {
                let t = Grassmann::monomial(0, q, *l, S::one());
                span.insert(&to_vector(&basis, &(&g * &t)));
            }
        }
        Ok(WeilSuperAlgebra { q, basis, span, generators })
    }

    /// Quotient of `C∞(R^{0|q})` by generators with constant coefficients.
    pub fn from_super_elements(q: usize, generators: &[SuperElement]) -> Result<Self, WeilError> {
        let mut gs = Vec::with_capacity(generators.len());
        for (n, g) in generators.iter().enumerate() {
            if g.p() != 0 && g.terms().any(|(_, c)| c.min_arity() > 0) {
                return Err(WeilError::NotPointed(n, g.p()));
            }
            let v = g.try_map_coeffs(|c| S::eval_expr(c, &[])).map_err(|_| WeilError::NonConstant(n))?;
            gs.push(v.with_p(0));
        }
        WeilSuperAlgebra::new(q, gs)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn generators(&self) -> &[Grassmann<S>] {
        &self.generators
    }

    /// Real dimension.
    pub fn dimension(&self) -> usize {
        self.basis.len() - self.span.rank()
    }

    /// Monomials whose classes form a basis.
    pub fn basis(&self) -> Vec<MultiIndex> {
        self.span.free_columns().into_iter().map(|c| self.basis[c]).collect()
    }

    pub fn reduce(&self, a: &Grassmann<S>) -> Grassmann<S> {
        let v = self.span.reduce(&to_vector(&self.basis, &a.clone().with_p(0)));
        from_vector(self.q, &self.basis, &v)
    }

    pub fn is_zero(&self, a: &Grassmann<S>) -> bool {
        self.reduce(a).is_zero()
    }

    pub fn theta(&self, i: usize) -> Grassmann<S> {
        self.reduce(&Grassmann::theta(0, self.q, i))
    }

    pub fn parse(&self, text: &str) -> Result<Grassmann<S>, crate::expr::ParseError> {
        let e = SuperElement::parse(text, 0, self.q)?;
        let v = e.try_map_coeffs(|c| S::eval_expr(c, &[])).map_err(|err| crate::expr::ParseError::Invalid {
            pos: 0,
            msg: err.to_string(),
        })?;
        Ok(self.reduce(&v.with_p(0)))
    }

    pub fn mul(&self, a: &Grassmann<S>, b: &Grassmann<S>) -> Grassmann<S> {
        self.reduce(&(a * b))
    }

    /// Basis of the maximal ideal `m`.
    pub fn maximal_ideal_basis(&self) -> Vec<Grassmann<S>> {
        self.basis().into_iter().filter(|i| !i.is_empty()).map(|i| Grassmann::monomial(0, self.q, i, S::one())).collect()
    }

    /// Least `N` with `m^N = 0`.
    pub fn nilpotency_index(&self) -> usize {
        let m = self.maximal_ideal_basis();
        let mut power = m.clone();
        let mut n = 1;
        while !power.is_empty() {
            let mut next = Echelon::new(self.basis.len(), 1e-12);
            for x in &power {
                for y in &m {
                    next.insert(&to_vector(&self.basis, &self.mul(x, y)));
                }
            }
            power = next_basis(&next, self.q, &self.basis);
            n += 1;
        }
        n
    }

    /// `Φ_h(a_1 + m_1, …) = Σ_α ∂^α h(a)/α! m^α`, computed from the Taylor jet of `h`.
    pub fn apply(&self, h: &SmoothExpr, args: &[Grassmann<S>]) -> Result<(Grassmann<S>, Provenance), WeilError> {
        let args: Vec<Grassmann<S>> = args.iter().map(|a| self.reduce(a)).collect();
        for (n, a) in args.iter().enumerate() {
            if a.parity() != Parity::Even {
                return Err(WeilError::NotEven(n));
            }
        }
        let bodies: Vec<S> = args.iter().map(Grassmann::body).collect();
        let souls: Vec<Grassmann<S>> = args.iter().map(Grassmann::soul).collect();
        let jet = Jet::of_expr(h, &bodies, self.q / 2)?;
        let mut out = Grassmann::zero(0, self.q);
        for (alpha, c) in jet.terms() {
            let mut t = Grassmann::scalar(0, self.q, c.clone());
            for (i, &k) in alpha.iter().enumerate() {
                if k > 0 {
                    t = &t * &souls[i].pow(k);
                }
            }
            out = &out + &t;
        }
        let provenance = if jet.is_exact() { Provenance::Exact } else { Provenance::Sampled };
        Ok((self.reduce(&out), provenance))
    }
}

fn to_vector<S: Scalar>(basis: &[MultiIndex], a: &Grassmann<S>) -> Vec<S> {
    let mut v = vec![S::zero(); basis.len()];
    for (i, c) in a.terms() {
        let k = basis.binary_search(i).expect("index within q");
        v[k] = c.clone();
    }
    v
}

fn from_vector<S: Scalar>(q: usize, basis: &[MultiIndex], v: &[S]) -> Grassmann<S> {
    Grassmann::from_terms(0, q, basis.iter().zip(v).map(|(i, c)| (*i, c.clone())))
}

fn next_basis<S: Scalar>(e: &Echelon<S>, q: usize, basis: &[MultiIndex]) -> Vec<Grassmann<S>> {
    e.rows().map(|r| from_vector(q, basis, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn h(s: &str) -> SmoothExpr {
        SmoothExpr::parse(s, 1).unwrap()
    }

    #[test]
    fn exp_of_square_zero_element() {
        let w = WeilSuperAlgebra::<Rational>::new(2, vec![]).unwrap();
        let m = w.parse("t1t2").unwrap();
        let (r, prov) = w.apply(&h("exp(x1)"), &[m]).unwrap();
        assert_eq!(r, w.parse("1 + t1t2").unwrap());
        assert_eq!(prov, Provenance::Exact);
    }

    #[test]
    fn cube_of_one_plus_nilpotent() {
        let w = WeilSuperAlgebra::<Rational>::new(2, vec![]).unwrap();
        let (r, _) = w.apply(&h("x1^3"), &[w.parse("1 + t1t2").unwrap()]).unwrap();
        assert_eq!(r, w.parse("1 + 3*t1t2").unwrap());
    }

    #[test]
    fn class_killed_by_square_of_maximal_ideal() {
        let gens: Vec<SuperElement> = ["t1t2", "t1t3", "t2t3"].iter().map(|s| SuperElement::parse(s, 0, 3).unwrap()).collect();
        let w = WeilSuperAlgebra::<Rational>::from_super_elements(3, &gens).unwrap();
        let a = w.parse("t1t2").unwrap();
        assert!(a.is_zero());
        let (r, _) = w.apply(&h("sin(x1)"), &[a]).unwrap();
        assert!(r.is_zero());
        assert_eq!(w.dimension(), 4);
        assert_eq!(w.nilpotency_index(), 2);
    }

    #[test]
    fn dimension_splits_as_line_plus_maximal_ideal() {
        for q in 0..=4 {
            let w = WeilSuperAlgebra::<Rational>::new(q, vec![]).unwrap();
            assert_eq!(w.dimension(), 1 << q);
            assert_eq!(w.maximal_ideal_basis().len() + 1, w.dimension());
            assert!(w.nilpotency_index() <= q + 1);
        }
    }

    #[test]
    fn unit_generator_is_rejected() {
        let g = Grassmann::<Rational>::one(0, 2);
        assert_eq!(WeilSuperAlgebra::new(2, vec![g]).unwrap_err(), WeilError::NotLocal(0));
    }
}
