//! Morphisms of finitely presented C∞-superrings, given by the images of the
//! coordinates, together with the functors and adjunction witnesses built on them.

mod functors;
mod geometry;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{ParseError, SmoothExpr};
use crate::grassmann::{Grassmann, Parity, SuperElement};
use crate::ideal::{Membership, QuotientSuperRing};
use crate::structure::{apply_smooth, StructureError};
use crate::verdict::{Provenance, Settings};

pub use functors::{
    coproduct, mu, mu_inverse, superreduction_functor, trivial_extension, universal_property_check, Coproduct,
    UniversalReport,
};
pub use geometry::{adjunction_roundtrip, localize_morphism, same_local_data, spec_functor, AdjunctionReport, LocalMorphism, PointMap};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum MorphismError {
    #[error("expected {expected} {kind} images, got {given}")]
    ImageCount { kind: &'static str, expected: usize, given: usize },
    #[error("{kind} image {index} does not live in the codomain")]
    ImageArity { kind: &'static str, index: usize },
    #[error("{kind} image {index} has parity {parity:?}")]
    ImageParity { kind: &'static str, index: usize, parity: Parity },
    #[error("generator {generator} does not map to zero (image {image})")]
    NotKilled { generator: String, image: String },
    #[error("could not decide whether generator {generator} maps to zero")]
    Undecided { generator: String },
    #[error("domain and codomain do not match for composition")]
    NotComposable,
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// `φ: domain → codomain`, determined by the images of `x_i` and `θ^j`.
#[derive(Clone, Debug)]
pub struct Morphism {
    domain: QuotientSuperRing,
    codomain: QuotientSuperRing,
    even_images: Vec<SuperElement>,
    odd_images: Vec<SuperElement>,
    provenance: Provenance,
}

/// JSON form of a morphism, in display syntax.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MorphismSummary {
    pub domain: String,
    pub codomain: String,
    pub even_images: Vec<String>,
    pub odd_images: Vec<String>,
    pub provenance: Provenance,
}

pub(crate) fn describe(q: &QuotientSuperRing) -> String {
    let gens: Vec<String> = q.ideal().generators().iter().map(|g| g.to_string()).collect();
    if gens.is_empty() {
        q.ring().to_string()
    } else {
        format!("{}/({})", q.ring(), gens.join(", "))
    }
}

fn check_images(
    kind: &'static str,
    images: &[SuperElement],
    expected: usize,
    arity: (usize, usize),
    parity: Parity,
) -> Result<(), MorphismError> {
    if images.len() != expected {
        return Err(MorphismError::ImageCount { kind, expected, given: images.len() });
    }
    for (index, a) in images.iter().enumerate() {
        if a.arity() != arity {
            return Err(MorphismError::ImageArity { kind, index });
        }
        if !a.is_zero() && a.parity() != parity {
            return Err(MorphismError::ImageParity { kind, index, parity: a.parity() });
        }
    }
    Ok(())
}

/// `Φ_c(args)`, with constants handled without arguments.
fn pushforward_coefficient(c: &SmoothExpr, args: &[SuperElement], arity: (usize, usize)) -> Result<SuperElement, StructureError> {
    if c.min_arity() == 0 {
        Ok(Grassmann::scalar(arity.0, arity.1, c.clone()))
    } else {
        apply_smooth(c, args)
    }
}

impl Morphism {
    /// Builds `φ` and checks that every generator of the domain ideal maps to zero.
    pub fn new(
        domain: QuotientSuperRing,
        codomain: QuotientSuperRing,
        even_images: Vec<SuperElement>,
        odd_images: Vec<SuperElement>,
        settings: &Settings,
    ) -> Result<Self, MorphismError> {
        let (dr, cr) = (domain.ring(), codomain.ring());
        check_images("even", &even_images, dr.p, (cr.p, cr.q), Parity::Even)?;
        check_images("odd", &odd_images, dr.q, (cr.p, cr.q), Parity::Odd)?;
        let mut phi = Morphism { domain, codomain, even_images, odd_images, provenance: Provenance::Exact };
        let mut provenance = Provenance::Exact;
        for g in phi.domain.ideal().generators() {
            let image = phi.apply_raw(g)?;
            if phi.codomain.ideal().generators().contains(&image) {
                continue;
            }
            match phi.codomain.membership(&image, settings) {
                Membership::Member { provenance: p } => provenance = provenance.and(p),
                Membership::NotMember { .. } => {
                    return Err(MorphismError::NotKilled {
                        generator: g.to_string(),
                        image: phi.codomain.normal_form(&image).to_string(),
                    })
                }
                Membership::Unknown => return Err(MorphismError::Undecided { generator: g.to_string() }),
            }
        }
        phi.provenance = provenance;
        Ok(phi)
    }

    /// Images given in display syntax over the codomain.
    pub fn parse(
        domain: QuotientSuperRing,
        codomain: QuotientSuperRing,
        even_images: &[&str],
        odd_images: &[&str],
        settings: &Settings,
    ) -> Result<Self, MorphismError> {
        let parse = |v: &[&str]| v.iter().map(|s| codomain.parse_element(s)).collect::<Result<Vec<_>, _>>();
        let (even, odd) = (parse(even_images)?, parse(odd_images)?);
        Morphism::new(domain, codomain, even, odd, settings)
    }

    pub fn identity(q: &QuotientSuperRing) -> Self {
        let r = q.ring();
        Morphism {
            domain: q.clone(),
            codomain: q.clone(),
            even_images: (0..r.p).map(|i| r.x(i)).collect(),
            odd_images: (0..r.q).map(|j| r.theta(j)).collect(),
            provenance: Provenance::Exact,
        }
    }

    pub fn domain(&self) -> &QuotientSuperRing {
        &self.domain
    }

    pub fn codomain(&self) -> &QuotientSuperRing {
        &self.codomain
    }

    pub fn even_images(&self) -> &[SuperElement] {
        &self.even_images
    }

    pub fn odd_images(&self) -> &[SuperElement] {
        &self.odd_images
    }

    /// How well-formedness was established.
    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `Σ Φ_{f_I}(φ(x)) φ(θ)^I`, before reduction modulo the codomain ideal.
    pub fn apply_raw(&self, r: &SuperElement) -> Result<SuperElement, MorphismError> {
        let cr = self.codomain.ring();
        let arity = (cr.p, cr.q);
        let mut out = cr.zero();
        for (index, c) in r.terms() {
            let mut term = pushforward_coefficient(c, &self.even_images, arity)?;
            for j in index.indices() {
                term = &term * &self.odd_images[j];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `φ(r)` in normal form.
    pub fn apply(&self, r: &SuperElement) -> Result<SuperElement, MorphismError> {
        Ok(self.codomain.normal_form(&self.apply_raw(r)?))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Result<Morphism, MorphismError> {
        if self.codomain.ideal() != other.domain.ideal() {
            return Err(MorphismError::NotComposable);
        }
        let map = |v: &[SuperElement]| v.iter().map(|a| other.apply(a)).collect::<Result<Vec<_>, _>>();
        Ok(Morphism {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            even_images: map(&self.even_images)?,
            odd_images: map(&self.odd_images)?,
            provenance: self.provenance.and(other.provenance),
        })
    }

    /// Same domain, codomain and coordinate images modulo the codomain ideal.
    pub fn agrees_with(&self, other: &Morphism) -> bool {
        let nf = |a: &SuperElement| self.codomain.normal_form(a);
        self.domain.ideal() == other.domain.ideal()
            && self.codomain.ideal() == other.codomain.ideal()
            && self.even_images.iter().zip(&other.even_images).all(|(a, b)| nf(a) == nf(b))
            && self.odd_images.iter().zip(&other.odd_images).all(|(a, b)| nf(a) == nf(b))
    }

    pub fn summary(&self) -> MorphismSummary {
        MorphismSummary {
            domain: describe(&self.domain),
            codomain: describe(&self.codomain),
            even_images: self.even_images.iter().map(|a| a.to_string()).collect(),
            odd_images: self.odd_images.iter().map(|a| a.to_string()).collect(),
            provenance: self.provenance,
        }
    }
}

impl std::fmt::Display for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (i, a) in self.even_images.iter().enumerate() {
            parts.push(format!("x{} -> {a}", i + 1));
        }
        for (j, a) in self.odd_images.iter().enumerate() {
            parts.push(format!("t{} -> {a}", j + 1));
        }
        write!(f, "{} -> {}: {{{}}}", describe(&self.domain), describe(&self.codomain), parts.join(", "))
    }
}

#[cfg(test)]
mod tests;
