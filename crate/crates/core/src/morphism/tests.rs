use super::*;
use crate::structure::SplitSuperRing;

fn s() -> Settings {
    Settings { grid: 21, ..Settings::default() }
}

fn free(p: usize, q: usize) -> QuotientSuperRing {
    QuotientSuperRing::free(SplitSuperRing::new(p, q))
}

#[test]
fn identity_and_swap() {
    let r = free(1, 2);
    let a = r.parse_element("x1 + sin(x1)*t1t2 + t1").unwrap();
    assert_eq!(Morphism::identity(&r).apply(&a).unwrap(), a);
    let swap = Morphism::parse(r.clone(), r.clone(), &["x1"], &["t2", "t1"], &s()).unwrap();
    let t12 = r.parse_element("t1t2").unwrap();
    assert_eq!(swap.apply(&t12).unwrap(), -&t12);
    assert!(swap.then(&swap).unwrap().agrees_with(&Morphism::identity(&r)));
}

#[test]
fn pushforward_commutes_with_sin() {
    let r = free(1, 2);
    let phi = Morphism::parse(r.clone(), r.clone(), &["x1 + t1t2"], &["t1", "t2"], &s()).unwrap();
    let image = phi.apply(&r.parse_element("sin(x1)").unwrap()).unwrap();
    assert_eq!(image, r.parse_element("sin(x1) + cos(x1)*t1t2").unwrap());
}

#[test]
fn ill_formed_morphism_is_rejected() {
    let dom = QuotientSuperRing::parse(SplitSuperRing::new(1, 0), &["x1"]).unwrap();
    let err = Morphism::parse(dom.clone(), free(1, 0), &["x1 + 1"], &[], &s()).unwrap_err();
    assert!(matches!(err, MorphismError::NotKilled { .. }), "{err}");
    assert!(Morphism::parse(dom, free(1, 0), &["0"], &[], &s()).is_ok());
    let err = Morphism::parse(free(1, 1), free(1, 1), &["t1"], &["t1"], &s()).unwrap_err();
    assert!(matches!(err, MorphismError::ImageParity { .. }));
}

#[test]
fn reduction_functor_and_mu() {
    let settings = s();
    let r = QuotientSuperRing::parse(SplitSuperRing::new(1, 2), &["x1^2 + t1t2"]).unwrap();
    let f_id = superreduction_functor(&Morphism::identity(&r), &settings).unwrap();
    assert!(f_id.agrees_with(&Morphism::identity(&r.superreduced())));
    let c = QuotientSuperRing::parse(SplitSuperRing::new(1, 0), &["x1^2"]).unwrap();
    let phi = Morphism::parse(r.clone(), c.clone(), &["x1"], &["0", "0"], &settings).unwrap();
    let m = mu(&phi, &settings).unwrap();
    assert_eq!(m.domain().ideal(), r.superreduced().ideal());
    assert!(mu_inverse(&m, &r, &settings).unwrap().agrees_with(&phi));
}

#[test]
fn coproduct_of_lines() {
    let settings = s();
    let c = coproduct(&free(1, 1), &free(1, 1), &settings).unwrap();
    assert_eq!(c.ring.ring(), SplitSuperRing::new(2, 2));
    assert_eq!(c.beta.even_images()[0].to_string(), "x2");
    assert_eq!(c.beta.odd_images()[0].to_string(), "t2");
    let w = free(1, 2);
    let phi = Morphism::parse(free(1, 1), w.clone(), &["x1"], &["t1"], &settings).unwrap();
    let psi = Morphism::parse(free(1, 1), w.clone(), &["x1"], &["t2"], &settings).unwrap();
    let rep = universal_property_check(&c, &phi, &psi, &settings);
    assert!(rep.passed(), "{rep:?}");
    let rep = universal_property_check(&c, &c.alpha, &c.beta, &settings);
    assert_eq!(rep.induced.unwrap().even_images, vec!["x1", "x2"]);
}

#[test]
fn adjoining_an_odd_variable() {
    let r = QuotientSuperRing::parse(SplitSuperRing::new(1, 1), &["x1^2"]).unwrap();
    let c = coproduct(&r, &free(0, 1), &s()).unwrap();
    assert_eq!(c.ring.ring(), SplitSuperRing::new(1, 2));
    assert_eq!(c.ring.ideal().generators()[0].to_string(), "x1^2");
    assert_eq!(c.beta.odd_images()[0].to_string(), "t2");
    let unit = coproduct(&r, &free(0, 0), &s()).unwrap();
    assert_eq!(unit.ring.ideal(), r.ideal());
}

#[test]
fn point_map_of_square() {
    let phi = Morphism::parse(free(1, 0), free(1, 0), &["x1^2"], &[], &s()).unwrap();
    let pts = vec![RPointLike::at(1.5), RPointLike::at(-0.5)];
    let map = spec_functor(&phi, &pts);
    assert_eq!(map.image(&[1.5]).unwrap(), &[2.25]);
    assert_eq!(map.image(&[-0.5]).unwrap(), &[0.25]);
}

struct RPointLike;

impl RPointLike {
    fn at(x: f64) -> crate::spectrum::RPoint {
        crate::spectrum::RPoint { coords: vec![x], residual: 0.0 }
    }
}

#[test]
fn circle_inclusion_lands_in_plane() {
    let circle = QuotientSuperRing::parse(SplitSuperRing::new(2, 0), &["x1^2 + x2^2 - 1"]).unwrap();
    let inc = Morphism::parse(free(2, 0), circle.clone(), &["x1", "x2"], &[], &s()).unwrap();
    let pts = crate::spectrum::find_rpoints(&circle, &s());
    let map = spec_functor(&inc, &pts);
    assert!(map.lands_in_domain && !map.pairs.is_empty());
    assert!(map.pairs.iter().all(|(y, x)| y == x));
}

#[test]
fn local_square_commutes() {
    let r = free(1, 2);
    let phi = Morphism::parse(r.clone(), r.clone(), &["sin(x1) + x1*t1t2"], &["t2", "exp(x1)*t1"], &s()).unwrap();
    let lm = localize_morphism(&phi, &[0.3], 4).unwrap();
    assert_eq!(lm.domain_order, 5);
    for probe in ["exp(x1)", "x1^3*t1", "cos(x1)*t1t2 + x1", "flat(x1 - 1)*t2"] {
        let a = r.parse_element(probe).unwrap();
        assert!(lm.square_commutes(&phi, &a, 1e-9).unwrap(), "{probe}");
    }
}

#[test]
fn roundtrip_needs_fairness() {
    let settings = s();
    let swap = Morphism::parse(free(1, 2), free(1, 2), &["x1"], &["t2", "t1"], &settings).unwrap();
    let probes: Vec<SuperElement> = ["t1t2", "x1*t1"].iter().map(|p| free(1, 2).parse_element(p).unwrap()).collect();
    assert!(adjunction_roundtrip(&swap, &probes, &settings).roundtrip_exact);

    let b = QuotientSuperRing::parse(SplitSuperRing::new(1, 2), &["flat(x1)*t1t2"]).unwrap();
    let probe = b.parse_element("flat(sqrt(2)*x1)*t1t2").unwrap();
    let id = Morphism::identity(&b);
    let bent = Morphism::parse(b.clone(), b.clone(), &["x1 + flat(sqrt(2)*x1)*t1t2"], &["t1", "t2"], &settings).unwrap();
    assert!(!id.agrees_with(&bent));
    assert!(same_local_data(&id, &bent, &settings));
    assert!(!adjunction_roundtrip(&id, std::slice::from_ref(&probe), &settings).roundtrip_exact);

    let fa = crate::spectrum::fairfied(&b, std::slice::from_ref(&probe), &settings);
    let id_fa = Morphism::identity(&fa);
    let bent_fa = Morphism::new(fa.clone(), fa.clone(), bent.even_images().to_vec(), bent.odd_images().to_vec(), &settings).unwrap();
    assert!(id_fa.agrees_with(&bent_fa));
    assert!(adjunction_roundtrip(&id_fa, &[probe], &settings).roundtrip_exact);
}
