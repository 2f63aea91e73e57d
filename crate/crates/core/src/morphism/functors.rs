use serde::Serialize;

use super::{Morphism, MorphismError, MorphismSummary};
use crate::expr::SmoothExpr;
use crate::grassmann::{Grassmann, SuperElement};
use crate::ideal::{QuotientSuperRing, SuperIdeal};
use crate::structure::SplitSuperRing;
use crate::verdict::Settings;

/// `F(φ): R̄ → S̄`, the induced map on superreductions.
pub fn superreduction_functor(phi: &Morphism, settings: &Settings) -> Result<Morphism, MorphismError> {
    let p = phi.codomain().ring().p;
    let even = phi.even_images().iter().map(|a| Grassmann::scalar(p, 0, a.body())).collect();
    Morphism::new(phi.domain().superreduced(), phi.codomain().superreduced(), even, Vec::new(), settings)
}

/// `G(ψ)`: a morphism of C∞-rings seen as a morphism of superrings with zero odd part.
pub fn trivial_extension(psi: &Morphism) -> Morphism {
    assert!(psi.domain().ring().q == 0 && psi.codomain().ring().q == 0, "G applies to purely even rings");
    psi.clone()
}

/// `μ: Hom(R, G(c)) → Hom(F(R), c)`.
pub fn mu(phi: &Morphism, settings: &Settings) -> Result<Morphism, MorphismError> {
    assert_eq!(phi.codomain().ring().q, 0, "codomain must be purely even");
    Morphism::new(phi.domain().superreduced(), phi.codomain().clone(), phi.even_images().to_vec(), Vec::new(), settings)
}

/// `μ⁻¹(ψ) = ψ ∘ π`, with `π: R → R̄` the quotient by the canonical superideal.
pub fn mu_inverse(psi: &Morphism, domain: &QuotientSuperRing, settings: &Settings) -> Result<Morphism, MorphismError> {
    let c = psi.codomain().ring();
    let odd = vec![c.zero(); domain.ring().q];
    Morphism::new(domain.clone(), psi.codomain().clone(), psi.even_images().to_vec(), odd, settings)
}

/// `r` with `x_i ↦ x_{i+dx}` and `θ^j ↦ θ^{j+dt}` inside `target`.
fn relabel(r: &SuperElement, target: SplitSuperRing, dx: usize, dt: usize) -> SuperElement {
    let vars: Vec<SmoothExpr> = (0..r.p()).map(|i| SmoothExpr::var(i + dx)).collect();
    let mut out = target.zero();
    for (index, c) in r.terms() {
        out.add_term(index.shifted(dt), c.compose(&vars));
    }
    out
}

/// `R ⊔ S` with its canonical inclusions.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub ring: QuotientSuperRing,
    pub alpha: Morphism,
    pub beta: Morphism,
}

/// For `R = C∞(R^{a|q})/I` and `S = C∞(R^{b|n})/H`, the coproduct is
/// `C∞(R^{a+b|q+n})/(I ∪ H')` with `H'` the relabeled generators of `H`.
pub fn coproduct(r: &QuotientSuperRing, s: &QuotientSuperRing, settings: &Settings) -> Result<Coproduct, MorphismError> {
    let (rr, sr) = (r.ring(), s.ring());
    let t = SplitSuperRing::new(rr.p + sr.p, rr.q + sr.q);
    let mut gens: Vec<SuperElement> = r.ideal().generators().iter().map(|g| relabel(g, t, 0, 0)).collect();
    gens.extend(s.ideal().generators().iter().map(|g| relabel(g, t, rr.p, rr.q)));
    let ring = QuotientSuperRing::new(SuperIdeal::new(t, gens).expect("relabeling keeps generators homogeneous"));
    let alpha = Morphism::new(
        r.clone(),
        ring.clone(),
        (0..rr.p).map(|i| t.x(i)).collect(),
        (0..rr.q).map(|j| t.theta(j)).collect(),
        settings,
    )?;
    let beta = Morphism::new(
        s.clone(),
        ring.clone(),
        (0..sr.p).map(|i| t.x(rr.p + i)).collect(),
        (0..sr.q).map(|j| t.theta(rr.q + j)).collect(),
        settings,
    )?;
    Ok(Coproduct { ring, alpha, beta })
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalReport {
    pub exists: bool,
    pub commutes_alpha: bool,
    pub commutes_beta: bool,
    /// Every coordinate of the coproduct is an image of a coordinate under `α` or `β`,
    /// so `u` is determined by `φ` and `ψ`.
    pub unique: bool,
    pub induced: Option<MorphismSummary>,
    pub error: Option<String>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.exists && self.commutes_alpha && self.commutes_beta && self.unique
    }
}

/// Builds `u: R ⊔ S → W` from `φ: R → W` and `ψ: S → W` and checks `u∘α = φ`, `u∘β = ψ`.
pub fn universal_property_check(c: &Coproduct, phi: &Morphism, psi: &Morphism, settings: &Settings) -> UniversalReport {
    let fail = |error: String| UniversalReport {
        exists: false,
        commutes_alpha: false,
        commutes_beta: false,
        unique: false,
        induced: None,
        error: Some(error),
    };
    if phi.domain().ideal() != c.alpha.domain().ideal() || psi.domain().ideal() != c.beta.domain().ideal() {
        return fail("maps do not start at the factors".into());
    }
    if phi.codomain().ideal() != psi.codomain().ideal() {
        return fail("maps have different targets".into());
    }
    let even = phi.even_images().iter().chain(psi.even_images()).cloned().collect();
    let odd = phi.odd_images().iter().chain(psi.odd_images()).cloned().collect();
    let u = match Morphism::new(c.ring.clone(), phi.codomain().clone(), even, odd, settings) {
        Ok(u) => u,
        Err(e) => return fail(e.to_string()),
    };
    let commutes = |inc: &Morphism, target: &Morphism| inc.then(&u).is_ok_and(|m| m.agrees_with(target));
    let t = c.ring.ring();
    let coords: Vec<SuperElement> = (0..t.p).map(|i| t.x(i)).chain((0..t.q).map(|j| t.theta(j))).collect();
    let images: Vec<&SuperElement> =
        [&c.alpha, &c.beta].iter().flat_map(|m| m.even_images().iter().chain(m.odd_images())).collect();
    let unique = coords.iter().all(|x| images.contains(&x));
    UniversalReport {
        exists: true,
        commutes_alpha: commutes(&c.alpha, phi),
        commutes_beta: commutes(&c.beta, psi),
        unique,
        induced: Some(u.summary()),
        error: None,
    }
}
