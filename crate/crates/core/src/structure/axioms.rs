//! Randomized checkers for the C∞-ring axioms on `C∞(R^{p|q})`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{apply_smooth_with, Expansion, SplitSuperRing};
use crate::expr::random::random_expr;
use crate::expr::SmoothExpr;
use crate::grassmann::{Grassmann, MultiIndex, SuperElement};
use crate::verdict::{Bounds, Provenance, Tolerances};

const SAMPLE_POINTS: usize = 20;
const MAX_SAMPLE_ATTEMPTS: usize = 400;
const NUMERIC_TOL: Tolerances = Tolerances { abs: 1e-12, rel: 1e-8 };

/// Which identity a composition trial exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionFamily {
    /// `Φ_{h∘g}(a) = Φ_h(Φ_{g_1}(a), …)` with random `h`.
    Nested,
    /// Outer `h = u·v` realized by the ring product: `Φ_{g_1 g_2}(a) = Φ_{g_1}(a) Φ_{g_2}(a)`.
    Product,
    /// Outer `h = u + v` realized by the ring sum.
    Sum,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomFailure {
    pub trial: usize,
    pub family: Option<CompositionFamily>,
    pub functions: Vec<String>,
    pub args: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    /// Odd monomial and sample point where the two sides differ, if found numerically.
    pub monomial: Option<String>,
    pub point: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub ring: SplitSuperRing,
    pub trials: usize,
    pub symbolic: usize,
    pub numeric: usize,
    pub inconclusive: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inconclusive == 0
    }

    pub fn provenance(&self) -> Provenance {
        if self.numeric == 0 && self.inconclusive == 0 {
            Provenance::Exact
        } else {
            Provenance::Sampled
        }
    }

    fn collect(axiom: &str, ring: SplitSuperRing, outcomes: Vec<Outcome>) -> Self {
        let mut r = AxiomReport {
            axiom: axiom.to_string(),
            ring,
            trials: outcomes.len(),
            symbolic: 0,
            numeric: 0,
            inconclusive: 0,
            failures: Vec::new(),
        };
        for o in outcomes {
            match o {
                Outcome::Symbolic => r.symbolic += 1,
                Outcome::Numeric => r.numeric += 1,
                Outcome::Inconclusive => r.inconclusive += 1,
                Outcome::Failed(f) => r.failures.push(*f),
            }
        }
        r
    }
}

enum Outcome {
    Symbolic,
    Numeric,
    Inconclusive,
    Failed(Box<AxiomFailure>),
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(trial as u64))
}

/// Random even element: a random body plus up to three random even soul terms.
pub fn random_even_element<R: Rng>(rng: &mut R, ring: SplitSuperRing, depth: usize) -> SuperElement {
    let mut a = Grassmann::scalar(ring.p, ring.q, random_expr(rng, ring.p, depth));
    let even: Vec<MultiIndex> = MultiIndex::all(ring.q).into_iter().filter(|i| !i.is_empty() && i.len() % 2 == 0).collect();
    if !even.is_empty() {
        for _ in 0..rng.gen_range(0..=3) {
            let i = even[rng.gen_range(0..even.len())];
            a.add_term(i, random_expr(rng, ring.p, depth.saturating_sub(1)));
        }
    }
    a
}

/// Compare two elements: symbolically first, then coefficientwise at sample points.
fn compare(lhs: &SuperElement, rhs: &SuperElement, rng: &mut ChaCha8Rng) -> Result<Outcome, (Option<String>, Option<Vec<f64>>)> {
    let diff = lhs - rhs;
    if diff.is_zero() {
        return Ok(Outcome::Symbolic);
    }
    let bounds = Bounds::cube(-1.0, 1.0, lhs.p());
    let mut checked = 0;
    for _ in 0..MAX_SAMPLE_ATTEMPTS {
        if checked == SAMPLE_POINTS {
            break;
        }
        let pt = bounds.sample(rng);
        let mut usable = true;
        let mut mismatch = None;
        for (index, _) in diff.terms() {
            let l = lhs.coefficient(*index).eval(&pt);
            let r = rhs.coefficient(*index).eval(&pt);
            match (l, r) {
                (Ok(l), Ok(r)) => {
                    if !NUMERIC_TOL.close(l, r) {
                        mismatch = Some(*index);
                        break;
                    }
                }
                _ => {
                    usable = false;
                    break;
                }
            }
        }
        if let Some(index) = mismatch {
            return Err((Some(index.to_string()), Some(pt)));
        }
        if usable {
            checked += 1;
        }
    }
    Ok(if checked == 0 { Outcome::Inconclusive } else { Outcome::Numeric })
}

fn failure(trial: usize, family: Option<CompositionFamily>, functions: Vec<String>, args: &[SuperElement], lhs: &SuperElement, rhs: &SuperElement, witness: (Option<String>, Option<Vec<f64>>)) -> Outcome {
    Outcome::Failed(Box::new(AxiomFailure {
        trial,
        family,
        functions,
        args: args.iter().map(|a| a.to_string()).collect(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        monomial: witness.0,
        point: witness.1,
    }))
}

fn judge(trial: usize, family: Option<CompositionFamily>, functions: Vec<String>, args: &[SuperElement], lhs: SuperElement, rhs: SuperElement, rng: &mut ChaCha8Rng) -> Outcome {
    match compare(&lhs, &rhs, rng) {
        Ok(o) => o,
        Err(w) => failure(trial, family, functions, args, &lhs, &rhs, w),
    }
}

/// `Φ_{x_i}(a_1, …, a_k) = a_i` for every coordinate projection.
pub fn check_projection_axiom(ring: SplitSuperRing, trials: usize, seed: u64, expansion: Expansion) -> AxiomReport {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let k = rng.gen_range(1..=3);
            let args: Vec<SuperElement> = (0..k).map(|_| random_even_element(&mut rng, ring, 3)).collect();
            for i in 0..k {
                let proj = SmoothExpr::var(i);
                let lhs = apply_smooth_with(&proj, &args, expansion).expect("even arguments");
                if lhs != args[i] {
                    let rhs = args[i].clone();
                    return failure(trial, None, vec![format!("x{}", i + 1)], &args, &lhs, &rhs, (None, None));
                }
            }
            Outcome::Symbolic
        })
        .collect();
    AxiomReport::collect("projection", ring, outcomes)
}

/// Composition axiom on random `h`, `g_1..g_n` and random even arguments,
/// cycling through the [`CompositionFamily`] variants.
pub fn check_composition_axiom(ring: SplitSuperRing, trials: usize, seed: u64, expansion: Expansion) -> AxiomReport {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let family = match trial % 3 {
                0 | 1 => CompositionFamily::Nested,
                _ => if rng.gen_bool(0.5) { CompositionFamily::Product } else { CompositionFamily::Sum },
            };
            let k = rng.gen_range(1..=2);
            let n = if family == CompositionFamily::Nested { rng.gen_range(1..=2) } else { 2 };
            let args: Vec<SuperElement> = (0..k).map(|_| random_even_element(&mut rng, ring, 2)).collect();
            let gs: Vec<SmoothExpr> = (0..n).map(|_| random_expr(&mut rng, k, 3)).collect();
            let inner: Vec<SuperElement> = gs.iter().map(|g| apply_smooth_with(g, &args, expansion).expect("even arguments")).collect();
            let (h, rhs) = match family {
                CompositionFamily::Nested => {
                    let h = random_expr(&mut rng, n, 3);
                    let rhs = apply_smooth_with(&h, &inner, expansion).expect("even arguments");
                    (h, rhs)
                }
                CompositionFamily::Product => (SmoothExpr::var(0) * SmoothExpr::var(1), &inner[0] * &inner[1]),
                CompositionFamily::Sum => (SmoothExpr::var(0) + SmoothExpr::var(1), &inner[0] + &inner[1]),
            };
            let lhs = apply_smooth_with(&h.compose(&gs), &args, expansion).expect("even arguments");
            let mut functions = vec![h.to_string()];
            functions.extend(gs.iter().map(|g| g.to_string()));
            judge(trial, Some(family), functions, &args, lhs, rhs, &mut rng)
        })
        .collect();
    AxiomReport::collect("composition", ring, outcomes)
}

/// `Φ_{u·v}(a, b) = a·b` and `Φ_{u+v}(a, b) = a + b` on random even pairs.
pub fn check_ring_compatibility(ring: SplitSuperRing, trials: usize, seed: u64, expansion: Expansion) -> AxiomReport {
    let product = SmoothExpr::var(0) * SmoothExpr::var(1);
    let sum = SmoothExpr::var(0) + SmoothExpr::var(1);
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let args = vec![random_even_element(&mut rng, ring, 3), random_even_element(&mut rng, ring, 3)];
            let lhs = apply_smooth_with(&product, &args, expansion).expect("even arguments");
            let rhs = &args[0] * &args[1];
            if lhs != rhs {
                return failure(trial, Some(CompositionFamily::Product), vec![product.to_string()], &args, &lhs, &rhs, (None, None));
            }
            let lhs = apply_smooth_with(&sum, &args, expansion).expect("even arguments");
            let rhs = &args[0] + &args[1];
            if lhs != rhs {
                return failure(trial, Some(CompositionFamily::Sum), vec![sum.to_string()], &args, &lhs, &rhs, (None, None));
            }
            Outcome::Symbolic
        })
        .collect();
    AxiomReport::collect("ring compatibility", ring, outcomes)
}
