mod common;

use common::{numerically_equal, random_even, rng, sample_points};
use proptest::prelude::*;
use rand::Rng;
use superring::expr::random::random_expr;
use superring::structure::{apply_smooth, SplitSuperRing, WeilSuperAlgebra};
use superring::{Grassmann, MultiIndex, Rational, SmoothExpr, SuperElement};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_operation_is_ring_product(seed in any::<u64>()) {
        let r = SplitSuperRing::new(2, (seed % 7) as usize);
        let mut g = rng(seed);
        let (a, b) = (random_even(&mut g, r, 2), random_even(&mut g, r, 2));
        let uv = SmoothExpr::parse("x1*x2", 2).unwrap();
        prop_assert_eq!(apply_smooth(&uv, &[a.clone(), b.clone()]).unwrap(), &a * &b);
    }

    #[test]
    fn unary_composition(seed in any::<u64>()) {
        let r = SplitSuperRing::new(1, 2 + (seed % 3) as usize);
        let mut g = rng(seed);
        let (h, k) = (random_expr(&mut g, 1, 2), random_expr(&mut g, 1, 2));
        let a = random_even(&mut g, r, 2);
        let nested = apply_smooth(&h, &[apply_smooth(&k, std::slice::from_ref(&a)).unwrap()]).unwrap();
        let composed = apply_smooth(&h.compose(&[k]), &[a]).unwrap();
        let pts = sample_points(&mut g, r.p, 20);
        prop_assert!(numerically_equal(&nested, &composed, &pts, 1e-8));
    }

    #[test]
    fn bodies_compose_coefficientwise(seed in any::<u64>()) {
        let r = SplitSuperRing::new(2, 3);
        let mut g = rng(seed);
        let h = random_expr(&mut g, 2, 3);
        let bodies = [random_expr(&mut g, 2, 2), random_expr(&mut g, 2, 2)];
        let args: Vec<SuperElement> = bodies.iter().map(|b| Grassmann::scalar(r.p, r.q, b.clone())).collect();
        let out = apply_smooth(&h, &args).unwrap();
        prop_assert_eq!(out, Grassmann::scalar(r.p, r.q, h.compose(&bodies)));
    }

    #[test]
    fn superreduction_commutes_with_operations(seed in any::<u64>()) {
        let r = SplitSuperRing::new(2, 4);
        let mut g = rng(seed);
        let h = random_expr(&mut g, 2, 3);
        let args = [random_even(&mut g, r, 2), random_even(&mut g, r, 2)];
        let lhs = apply_smooth(&h, &args).unwrap().superreduce();
        let rhs = h.compose(&[args[0].superreduce(), args[1].superreduce()]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weil_quotients_are_local(seed in any::<u64>()) {
        let mut g = rng(seed);
        let q = 1 + (seed % 5) as usize;
        let even: Vec<MultiIndex> = MultiIndex::all(q).into_iter().filter(|i| !i.is_empty()).collect();
        let gens: Vec<Grassmann<Rational>> = (0..g.gen_range(0..3))
            .map(|_| Grassmann::monomial(0, q, even[g.gen_range(0..even.len())], Rational::from_integer(1.into())))
            .collect();
        let w = WeilSuperAlgebra::new(q, gens).unwrap();
        prop_assert_eq!(w.dimension(), 1 + w.maximal_ideal_basis().len());
        prop_assert!(w.nilpotency_index() <= q + 1);
    }
}
