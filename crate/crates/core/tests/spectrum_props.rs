mod common;

use common::{close, random_element, rng};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use superring::ideal::QuotientSuperRing;
use superring::spectrum::{find_rpoints, find_zeros, localize};
use superring::structure::SplitSuperRing;
use superring::verdict::Settings;
use superring::{MultiIndex, Rational, SmoothExpr, SuperElement};

fn random_polynomial_element(g: &mut ChaCha8Rng, ring: SplitSuperRing) -> SuperElement {
    let mut a = ring.zero();
    let all = MultiIndex::all(ring.q);
    for _ in 0..g.gen_range(1..=3) {
        let mut c = SmoothExpr::int(g.gen_range(-3..=3));
        for i in 0..ring.p {
            let k = g.gen_range(0..3);
            c = SmoothExpr::mul(vec![c, SmoothExpr::pow(SmoothExpr::var(i), k)]);
        }
        a.add_term(all[g.gen_range(0..all.len())], c.simplify());
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn localization_is_multiplicative_exactly(seed in any::<u64>()) {
        let ring = SplitSuperRing::new(2, 3);
        let mut g = rng(seed);
        let (a, b) = (random_polynomial_element(&mut g, ring), random_polynomial_element(&mut g, ring));
        let x = [Rational::new(g.gen_range(-4..=4).into(), 2.into()), Rational::new(g.gen_range(-4..=4).into(), 3.into())];
        let lhs = localize(&(&a * &b), &x, 4).unwrap();
        let rhs = &localize(&a, &x, 4).unwrap() * &localize(&b, &x, 4).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn localization_is_multiplicative_numerically(seed in any::<u64>()) {
        let ring = SplitSuperRing::new(2, 3);
        let mut g = rng(seed);
        let (a, b) = (random_element(&mut g, ring, 2), random_element(&mut g, ring, 2));
        let x = [g.gen_range(-0.5..0.5), g.gen_range(-0.5..0.5)];
        let (Ok(lab), Ok(la), Ok(lb)) = (localize(&(&a * &b), &x, 3), localize(&a, &x, 3), localize(&b, &x, 3)) else {
            return Ok(());
        };
        let prod = &la * &lb;
        for (i, jet) in lab.terms().chain(prod.terms()) {
            for (e, _) in jet.terms() {
                let (u, v) = (lab.coefficient(*i).coefficient(e), prod.coefficient(*i).coefficient(e));
                prop_assert!(close(u, v, 1e-9), "{u} vs {v}");
            }
        }
    }
}

#[test]
fn even_and_reduced_generators_give_the_same_points() {
    let s = Settings { grid: 30, ..Settings::default() };
    let q = QuotientSuperRing::parse(SplitSuperRing::new(2, 2), &["x1^2 + x2^2 - 1 + t1t2", "x1*t1", "x1 - x2"]).unwrap();
    let from_even: Vec<SmoothExpr> = q.ideal().even_generators().map(|g| g.body()).collect();
    let a = find_zeros(&from_even, 2, &s);
    let b = find_rpoints(&q, &s);
    assert_eq!(a, b);
    assert_eq!(b.len(), 2);
}

#[test]
fn points_are_separated_by_coordinates() {
    let s = Settings { grid: 40, ..Settings::default() };
    let q = QuotientSuperRing::parse(SplitSuperRing::new(2, 1), &["x1^2 + x2^2 - 1"]).unwrap();
    let pts = find_rpoints(&q, &s);
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            assert!(a.coords.iter().zip(&b.coords).any(|(u, v)| (u - v).abs() > 1e-7));
        }
    }
}
