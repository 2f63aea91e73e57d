#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superring::expr::random::random_expr;
use superring::structure::{random_even_element, SplitSuperRing};
use superring::{MultiIndex, SmoothExpr, SuperElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random element with arbitrary θ-monomials.
pub fn random_element(rng: &mut ChaCha8Rng, ring: SplitSuperRing, depth: usize) -> SuperElement {
    let mut a = ring.zero();
    let all = MultiIndex::all(ring.q);
    for _ in 0..rng.gen_range(1..=3) {
        let i = all[rng.gen_range(0..all.len())];
        a.add_term(i, random_expr(rng, ring.p, depth));
    }
    a
}

/// Random element of one parity.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, ring: SplitSuperRing, depth: usize, odd: bool) -> SuperElement {
    let all: Vec<MultiIndex> = MultiIndex::all(ring.q).into_iter().filter(|i| (i.len() % 2 == 1) == odd).collect();
    let mut a = ring.zero();
    if all.is_empty() {
        return a;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let i = all[rng.gen_range(0..all.len())];
        a.add_term(i, random_expr(rng, ring.p, depth));
    }
    a
}

pub fn random_even(rng: &mut ChaCha8Rng, ring: SplitSuperRing, depth: usize) -> SuperElement {
    random_even_element(rng, ring, depth)
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

/// Equal coefficientwise at the given points (points outside a domain are skipped).
pub fn numerically_equal(a: &SuperElement, b: &SuperElement, points: &[Vec<f64>], rel: f64) -> bool {
    let diff = a - b;
    if diff.is_zero() {
        return true;
    }
    let equal = diff.terms().all(|(i, _)| {
        points.iter().all(|pt| match (a.coefficient(*i).eval(pt), b.coefficient(*i).eval(pt)) {
            (Ok(x), Ok(y)) if x.is_finite() && y.is_finite() => close(x, y, rel),
            _ => true,
        })
    });
    equal
}

pub fn sample_points(rng: &mut ChaCha8Rng, p: usize, n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..p).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect()
}

pub fn expr(text: &str, arity: usize) -> SmoothExpr {
    SmoothExpr::parse(text, arity).unwrap()
}
