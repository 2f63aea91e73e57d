//! Provenance tags and numeric settings shared by the semi-decision procedures.

use serde::{Deserialize, Serialize};

/// How a verdict was reached: by exact symbolic computation or by sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    Sampled,
}

impl Provenance {
    /// Combining an exact and a sampled step yields a sampled verdict.
    pub fn and(self, other: Provenance) -> Provenance {
        if self == Provenance::Exact && other == Provenance::Exact {
            Provenance::Exact
        } else {
            Provenance::Sampled
        }
    }
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Exact => "exact",
            Provenance::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// A value "vanishes" when its magnitude is at most this.
    pub abs: f64,
    /// Relative tolerance for equality of sampled values.
    pub rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { abs: 1e-12, rel: 1e-9 }
    }
}

impl Tolerances {
    pub fn close(&self, a: f64, b: f64) -> bool {
        let diff = (a - b).abs();
        diff <= self.abs || diff <= self.rel * a.abs().max(b.abs())
    }
}

/// Axis-aligned sampling box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds(pub Vec<(f64, f64)>);

impl Bounds {
    pub fn cube(lo: f64, hi: f64, dim: usize) -> Bounds {
        Bounds(vec![(lo, hi); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_nonempty(&self) -> bool {
        self.0.iter().all(|(lo, hi)| lo <= hi)
    }

    /// Same intervals, extended or truncated to `dim` coordinates by repeating the last.
    pub fn with_dim(&self, dim: usize) -> Bounds {
        let last = self.0.last().copied().unwrap_or((-1.0, 1.0));
        Bounds((0..dim).map(|i| self.0.get(i).copied().unwrap_or(last)).collect())
    }

    pub fn sample<R: rand::Rng>(&self, rng: &mut R) -> Vec<f64> {
        self.0
            .iter()
            .map(|&(lo, hi)| if lo == hi { lo } else { rng.gen_range(lo..=hi) })
            .collect()
    }

    pub fn contains(&self, pt: &[f64]) -> bool {
        pt.iter().zip(&self.0).all(|(x, (lo, hi))| *lo <= *x && *x <= *hi)
    }
}

/// Numeric knobs for sampling oracles, point search and jets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub tol: Tolerances,
    pub seed: u64,
    pub samples: usize,
    pub bounds: Bounds,
    pub grid: usize,
    pub newton_iters: usize,
    pub jet_order: usize,
    /// Upper bound on the number of points used by per-point local tests.
    pub max_local_points: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tol: Tolerances::default(),
            seed: 42,
            samples: 100,
            bounds: Bounds::cube(-2.0, 2.0, 1),
            grid: 40,
            newton_iters: 50,
            jet_order: 6,
            max_local_points: 24,
        }
    }
}

impl Settings {
    pub fn bounds_for(&self, dim: usize) -> Bounds {
        self.bounds.with_dim(dim)
    }
}
