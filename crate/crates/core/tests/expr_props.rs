mod common;

use common::{close, rng};
use proptest::prelude::*;
use rand::Rng;
use superring::expr::random::random_expr;
use superring::SmoothExpr;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partials_match_central_differences(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = random_expr(&mut r, 2, 3);
        let h = 1e-3;
        for i in 0..2 {
            let d = e.partial(i);
            for _ in 0..50 {
                let pt: Vec<f64> = (0..2).map(|_| r.gen_range(-0.8..0.8)).collect();
                let shifted = |t: f64| {
                    let mut x = pt.clone();
                    x[i] += t;
                    e.eval(&x)
                };
                let (Ok(a1), Ok(b1), Ok(a2), Ok(b2), Ok(exact)) = (shifted(h), shifted(-h), shifted(2.0 * h), shifted(-2.0 * h), d.eval(&pt)) else { continue };
                if !exact.is_finite() || exact.abs() > 1e6 {
                    continue;
                }
                // Richardson-extrapolated central difference.
                let fd = (8.0 * (a1 - b1) - (a2 - b2)) / (12.0 * h);
                let scale = [a1, b1, a2, b2].iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let rounding = 16.0 * f64::EPSILON * scale / h;
                prop_assert!(close(fd, exact, 1e-5) || (fd - exact).abs() <= rounding, "{e} d/dx{}: {fd} vs {exact} at {pt:?}", i + 1);
            }
        }
    }

    #[test]
    fn display_parses_back(seed in any::<u64>()) {
        let e = random_expr(&mut rng(seed), 3, 4);
        let back = SmoothExpr::parse(&e.to_string(), 3).unwrap();
        prop_assert_eq!(back.simplify(), e.simplify());
    }

    #[test]
    fn simplify_is_idempotent(seed in any::<u64>()) {
        let e = random_expr(&mut rng(seed), 2, 4);
        let once = e.simplify();
        prop_assert_eq!(once.simplify(), once);
    }
}

#[test]
fn flat_is_flat_at_zero() {
    let mut e = SmoothExpr::parse("flat(x1)", 1).unwrap();
    for _ in 0..=6 {
        assert!(e.eval(&[0.0f64]).unwrap().abs() < 1e-12, "{e}");
        e = e.partial(0);
    }
}
