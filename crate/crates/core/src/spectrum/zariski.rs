use crate::grassmann::SuperElement;

use super::points::RPoint;

/// `x ∈ D(a)`: the residue of `a` at `x` is nonzero.
pub fn in_d(a: &SuperElement, x: &[f64], tol: f64) -> bool {
    a.body().eval(x).is_ok_and(|v| v.abs() > tol)
}

/// Indices of the points in `Z(I)`, the common zero set of the generators' residues.
pub fn z_of(generators: &[SuperElement], points: &[RPoint], tol: f64) -> Vec<usize> {
    (0..points.len()).filter(|&k| generators.iter().all(|g| !in_d(g, &points[k].coords, tol))).collect()
}
