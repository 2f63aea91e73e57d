use super::*;

fn ring(p: usize, q: usize) -> SplitSuperRing {
    SplitSuperRing::new(p, q)
}

fn nonsplit() -> QuotientSuperRing {
    QuotientSuperRing::parse(ring(1, 2), &["x1^2 + t1t2"]).unwrap()
}

#[test]
fn orientation_examples() {
    let r = ring(1, 2);
    let rule = orient_generator(0, &r.parse("x1^2 + t1t2").unwrap()).unwrap();
    assert_eq!(rule.to_string(), "x1^2 -> -t1t2");
    let rule = orient_generator(0, &r.parse("t1").unwrap()).unwrap();
    assert_eq!(rule.to_string(), "t1 -> 0");
    assert!(orient_generator(0, &r.parse("sin(x1) + t1t2").unwrap()).is_err());
}

#[test]
fn nonsplit_normal_forms() {
    let q = nonsplit();
    let r = q.ring();
    assert!(q.normal_form(&r.parse("x1^4").unwrap()).is_zero());
    assert_eq!(q.normal_form(&r.parse("x1^2").unwrap()).to_string(), "-t1t2");
    assert_eq!(q.normal_form(&r.parse("x1^3").unwrap()).to_string(), "-x1*t1t2");
    assert!(q.normal_form(&r.parse("t1t2*t1").unwrap()).is_zero());
    assert!(q.in_canonical_ideal(&r.parse("x1^2").unwrap()));
    assert!(!q.in_canonical_ideal(&r.parse("x1").unwrap()));
}

#[test]
fn normal_form_is_idempotent_and_kills_generators() {
    let q = QuotientSuperRing::parse(ring(2, 3), &["x1^2 + t1t2", "x2*t3", "x1*x2 - t2t3"]).unwrap();
    for g in q.ideal().generators() {
        assert!(q.normal_form(g).is_zero(), "{g}");
    }
    let a = q.ring().parse("x1^3*x2 + exp(x2)*x1^2*t1 + x2^2*t3").unwrap();
    let n = q.normal_form(&a);
    assert_eq!(q.normal_form(&n), n);
}

#[test]
fn membership_by_normal_form_and_jets() {
    let q = nonsplit();
    let s = Settings::default();
    let r = q.ring();
    assert!(q.membership(&r.parse("x1^4").unwrap(), &s).is_member());
    let m = q.membership(&r.parse("x1^3").unwrap(), &s);
    assert_eq!(m, Membership::NotMember { witness: vec![0.0], provenance: Provenance::Exact });
}

#[test]
fn flat_powers_are_not_members() {
    let q = QuotientSuperRing::parse(ring(1, 0), &["flat(x1)"]).unwrap();
    assert!(!q.fully_oriented());
    let s = Settings::default();
    for n in 1..=8 {
        let x = q.ring().parse(&format!("x1^{n}")).unwrap();
        assert!(q.membership_to_order(&x, &s, 10).is_not_member(), "n = {n}");
    }
}

#[test]
fn identically_vanishing_normal_form_is_a_member() {
    let q = QuotientSuperRing::free(SplitSuperRing::new(1, 1));
    let a = q.parse_element("(sin(x1)^2 + cos(x1)^2 - 1)*t1").unwrap();
    assert_eq!(q.membership(&a, &Settings::default()), Membership::Member { provenance: Provenance::Sampled });
}
