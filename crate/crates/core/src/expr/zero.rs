use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SmoothExpr;
use crate::verdict::{Bounds, Provenance};

/// Three-valued answer of the zero oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ZeroVerdict {
    Zero(Provenance),
    NonZero { witness: Vec<f64>, value: f64 },
    Unknown,
}

impl ZeroVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroVerdict::Zero(_))
    }
}

/// Sampling parameters for [`SmoothExpr::is_zero_on`].
#[derive(Clone, Debug)]
pub struct ZeroTest {
    pub bounds: Bounds,
    pub samples: usize,
    pub seed: u64,
    pub tol_abs: f64,
}

impl ZeroTest {
    pub fn new(bounds: Bounds, samples: usize, seed: u64) -> Self {
        ZeroTest { bounds, samples, seed, tol_abs: 1e-12 }
    }
}

impl SmoothExpr {
    /// Semi-decision for `e ≡ 0`: exact when simplification yields literal zero,
    /// otherwise by sampling. Points outside the domain are skipped.
    pub fn is_zero_on(&self, test: &ZeroTest) -> ZeroVerdict {
        let e = self.simplify();
        if e.is_literal_zero() {
            return ZeroVerdict::Zero(Provenance::Exact);
        }
        if let Some(c) = e.as_const() {
            let value = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
            return ZeroVerdict::NonZero { witness: test.bounds.0.iter().map(|b| b.0).collect(), value };
        }
        let bounds = test.bounds.with_dim(e.min_arity().max(test.bounds.dim()));
        let mut rng = ChaCha8Rng::seed_from_u64(test.seed);
        let mut evaluated = 0;
        for _ in 0..test.samples {
            let pt = bounds.sample(&mut rng);
            let Ok(v) = e.eval::<f64>(&pt) else { continue };
            evaluated += 1;
            if v.abs() > test.tol_abs {
                return ZeroVerdict::NonZero { witness: pt, value: v };
            }
        }
        if evaluated == 0 {
            ZeroVerdict::Unknown
        } else {
            ZeroVerdict::Zero(Provenance::Sampled)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> ZeroTest {
        ZeroTest::new(Bounds::cube(-2.0, 2.0, 1), 100, 7)
    }

    #[test]
    fn pythagoras_is_sampled_zero() {
        let e = SmoothExpr::parse("sin(x1)^2 + cos(x1)^2 - 1", 1).unwrap();
        assert_eq!(e.is_zero_on(&t()), ZeroVerdict::Zero(Provenance::Sampled));
    }

    #[test]
    fn flat_is_nonzero_with_witness() {
        let e = SmoothExpr::parse("flat(x1)", 1).unwrap();
        match e.is_zero_on(&t()) {
            ZeroVerdict::NonZero { witness, value } => {
                assert!(value > 1e-12);
                assert_eq!(e.eval(&witness).unwrap(), value);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn literal_zero_is_exact() {
        assert_eq!(SmoothExpr::zero().is_zero_on(&t()), ZeroVerdict::Zero(Provenance::Exact));
        let e = SmoothExpr::parse("x1 - x1", 1).unwrap();
        assert_eq!(e.is_zero_on(&t()), ZeroVerdict::Zero(Provenance::Exact));
    }

    #[test]
    fn unknown_when_no_point_is_in_the_domain() {
        let e = SmoothExpr::parse("log(x1 - 10)", 1).unwrap();
        assert_eq!(e.is_zero_on(&t()), ZeroVerdict::Unknown);
    }
}
