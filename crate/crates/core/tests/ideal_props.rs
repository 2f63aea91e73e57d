mod common;

use common::{random_element, random_homogeneous, rng};
use proptest::prelude::*;
use rand::Rng;
use superring::ideal::{radical_membership, Membership, QuotientSuperRing};
use superring::structure::SplitSuperRing;
use superring::verdict::Settings;

fn regression_rings() -> Vec<QuotientSuperRing> {
    let r12 = SplitSuperRing::new(1, 2);
    let r23 = SplitSuperRing::new(2, 3);
    vec![
        QuotientSuperRing::parse(r12, &["x1^2 + t1t2"]).unwrap(),
        QuotientSuperRing::parse(r12, &["x1^3", "x1*t1"]).unwrap(),
        QuotientSuperRing::parse(r12, &["t1t2 - x1"]).unwrap(),
        QuotientSuperRing::parse(r23, &["x1^2 + x2^2 - 1", "x2*t1 + t2"]).unwrap(),
        QuotientSuperRing::parse(r23, &["x1*x2 - t1t2", "x2^2"]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_linear(seed in any::<u64>()) {
        let mut g = rng(seed);
        for q in regression_rings() {
            let (a, b) = (random_element(&mut g, q.ring(), 2), random_element(&mut g, q.ring(), 2));
            let (na, nb) = (q.normal_form(&a), q.normal_form(&b));
            prop_assert_eq!(q.normal_form(&na), na.clone());
            prop_assert_eq!(q.normal_form(&(&a + &b)), q.normal_form(&(&na + &nb)));
            prop_assert_eq!(q.normal_form(&(&a * &b)), q.normal_form(&(&na * &nb)));
        }
    }

    #[test]
    fn normal_form_preserves_parity(seed in any::<u64>()) {
        let mut g = rng(seed);
        for q in regression_rings() {
            let odd = g.gen_bool(0.5);
            let a = random_homogeneous(&mut g, q.ring(), 2, odd);
            let n = q.normal_form(&a);
            prop_assert!(n.is_zero() || n.parity() == a.parity(), "{a} -> {n}");
        }
    }
}

#[test]
fn classical_radical_is_inside_cinfty_radical() {
    let s = Settings { grid: 25, ..Settings::default() };
    for q in regression_rings() {
        for text in ["x1", "x1^2", "x1 + t1", "x1*t1t2", "x1 - 1"] {
            let Ok(a) = q.parse_element(text) else { continue };
            let classical = (1..=8).any(|n| matches!(q.membership(&a.pow(n), &s), Membership::Member { .. }));
            if classical {
                assert!(radical_membership(&a, q.ideal(), &s).is_in(), "{text} in {:?}", q.ideal());
            }
        }
    }
}
