mod common;

use common::{numerically_equal, random_element, random_even, random_homogeneous, rng, sample_points};
use proptest::prelude::*;
use rand::Rng;
use superring::structure::SplitSuperRing;
use superring::{Grassmann, SuperElement};

fn ring(seed: u64, max_q: usize) -> SplitSuperRing {
    SplitSuperRing::new(1 + (seed % 2) as usize, (seed / 2 % (max_q as u64 + 1)) as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn supercommutative(seed in any::<u64>()) {
        let r = ring(seed, 5);
        let mut g = rng(seed);
        let (pa, pb) = (g.gen_bool(0.5), g.gen_bool(0.5));
        let a = random_homogeneous(&mut g, r, 2, pa);
        let b = random_homogeneous(&mut g, r, 2, pb);
        let ab = &a * &b;
        let ba = &b * &a;
        if pa && pb {
            prop_assert_eq!(ab, -&ba);
        } else {
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn associative(seed in any::<u64>()) {
        let r = ring(seed, 5);
        let mut g = rng(seed);
        let (a, b, c) = (random_element(&mut g, r, 3), random_element(&mut g, r, 3), random_element(&mut g, r, 3));
        let lhs = &(&a * &b) * &c;
        let rhs = &a * &(&b * &c);
        let pts = sample_points(&mut g, r.p, 10);
        prop_assert!(numerically_equal(&lhs, &rhs, &pts, 1e-9));
    }

    #[test]
    fn souls_of_even_elements_are_nilpotent(seed in any::<u64>()) {
        let r = ring(seed, 6);
        let a = random_even(&mut rng(seed), r, 2);
        let soul = a.soul();
        prop_assert!(soul.pow((r.q / 2 + 1) as u32).is_zero());
    }

    #[test]
    fn superreduce_is_multiplicative(seed in any::<u64>()) {
        let r = ring(seed, 4);
        let mut g = rng(seed);
        let (a, b) = (random_element(&mut g, r, 2), random_element(&mut g, r, 2));
        prop_assert_eq!((&a * &b).superreduce(), (a.superreduce() * b.superreduce()).simplify());
    }
}

#[test]
fn odd_coordinates_square_to_zero() {
    for q in 1..=6 {
        for i in 0..q {
            let t: SuperElement = Grassmann::theta(1, q, i);
            assert!((&t * &t).is_zero());
        }
    }
}
