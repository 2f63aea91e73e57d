//! Incremental row reduction over a [`Scalar`] field.

use crate::scalar::Scalar;

/// Reduced row echelon basis of a growing subspace of `S^n`.
///
/// Every stored row has a unit entry at its pivot column and zeros at the
/// pivots of all other rows, so [`Echelon::reduce`] yields a canonical
/// representative of a vector modulo the span.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    dim: usize,
    tol: f64,
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> Echelon<S> {
    /// `tol` is ignored for exact fields.
    pub fn new(dim: usize, tol: f64) -> Self {
        Echelon { dim, tol, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        p.sort_unstable();
        p
    }

    /// The stored reduced rows.
    pub fn rows(&self) -> impl Iterator<Item = &Vec<S>> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Columns not used as pivots: a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        let pivots = self.pivots();
        (0..self.dim).filter(|c| pivots.binary_search(c).is_err()).collect()
    }

    /// Canonical representative of `v` modulo the span (zero at every pivot column).
    ///
    /// For inexact fields, entries below `tol` times the largest magnitude met during elimination
    /// are treated as zero.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.dim);
        let mut scale = v.iter().map(|x| x.to_f64_lossy().abs()).fold(0.0, f64::max);
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let f = v[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if r.is_zero() {
                    continue;
                }
                let d = f.clone() * r.clone();
                if !S::EXACT {
                    scale = scale.max(d.to_f64_lossy().abs());
                }
                *x = x.clone() - d;
            }
            v[*pivot] = S::zero();
        }
        for x in v.iter_mut() {
            if x.negligible(self.tol * scale) {
                *x = S::zero();
            }
        }
        v
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Add `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[S]) -> bool {
        let mut r = self.reduce(v);
        let Some(pivot) = pick_pivot(&r) else { return false };
        let inv = S::one() / r[pivot].clone();
        for x in r.iter_mut().filter(|x| !x.is_zero()) {
            *x = x.clone() * inv.clone();
        }
        r[pivot] = S::one();
        for (_, row) in self.rows.iter_mut() {
            let f = row[pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
            row[pivot] = S::zero();
        }
        self.rows.push((pivot, r));
        true
    }
}

/// Largest entry in magnitude, which is any nonzero entry for exact fields.
fn pick_pivot<S: Scalar>(v: &[S]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let m = x.to_f64_lossy().abs();
        if best.is_none_or(|(_, b)| m > b) {
            best = Some((i, m));
        }
    }
    best.map(|(i, _)| i)
}

/// Rank of a list of vectors.
pub fn rank<S: Scalar>(rows: &[Vec<S>], tol: f64) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut e = Echelon::new(first.len(), tol);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
