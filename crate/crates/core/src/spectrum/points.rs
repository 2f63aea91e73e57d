use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::expr::{Func, Node, SmoothExpr};
use crate::ideal::QuotientSuperRing;
use crate::verdict::{Bounds, Settings};

const ACCEPT: f64 = 1e-9;
const DEDUP: f64 = 1e-6;
const MEMO_CAPACITY: usize = 512;

type Memo = Mutex<HashMap<String, Vec<RPoint>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// A point of the zero set of the reduced ideal, with its residual.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RPoint {
    pub coords: Vec<f64>,
    pub residual: f64,
}

/// An expression with the same zero set that is better suited to Newton's
/// method: `flat(u)` becomes `u`, never-vanishing factors are dropped and
/// positive powers are reduced to their base.
pub fn zero_set_surrogate(e: &SmoothExpr) -> SmoothExpr {
    match e.node() {
        Node::Apply(Func::Flat, args) => zero_set_surrogate(&args[0]),
        Node::Apply(Func::Exp, _) => SmoothExpr::one(),
        Node::Pow(b, n) if *n > 0 => zero_set_surrogate(b),
        Node::Neg(a) => zero_set_surrogate(a),
        Node::Mul(xs) => {
            let fs: Vec<SmoothExpr> = xs.iter().filter(|x| x.as_const().is_none()).map(zero_set_surrogate).collect();
            SmoothExpr::mul(fs).simplify()
        }
        _ => e.clone(),
    }
}

fn grid(bounds: &Bounds, n: usize) -> Vec<Vec<f64>> {
    let n = n.max(1);
    let axes: Vec<Vec<f64>> = bounds
        .0
        .iter()
        .map(|&(lo, hi)| {
            if n == 1 || lo == hi {
                vec![(lo + hi) / 2.0]
            } else {
                (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
            }
        })
        .collect();
    let mut out = vec![Vec::new()];
    for axis in &axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for pt in &out {
            for &x in axis {
                let mut p = pt.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn residual(fs: &[SmoothExpr], x: &[f64]) -> Option<f64> {
    let mut r: f64 = 0.0;
    for f in fs {
        r = r.max(f.eval(x).ok()?.abs());
    }
    Some(r)
}

/// Solve the small dense system `m y = b` by partial pivoting.
fn solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[piv][c].abs() < 1e-300 {
            return None;
        }
        m.swap(c, piv);
        b.swap(c, piv);
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut y = vec![0.0; n];
    for c in (0..n).rev() {
        let s: f64 = (c + 1..n).map(|k| m[c][k] * y[k]).sum();
        y[c] = (b[c] - s) / m[c][c];
    }
    Some(y)
}

/// Gauss–Newton with minimal-norm steps `-Jᵀ(JJᵀ + λI)⁻¹F`.
fn newton(fs: &[SmoothExpr], jac: &[Vec<SmoothExpr>], x0: &[f64], iters: usize) -> Option<Vec<f64>> {
    let mut x = x0.to_vec();
    let mut best = residual(fs, &x)?;
    for _ in 0..iters {
        if best == 0.0 {
            break;
        }
        let f: Vec<f64> = fs.iter().map(|g| g.eval(&x)).collect::<Result<_, _>>().ok()?;
        let j: Vec<Vec<f64>> = jac
            .iter()
            .map(|row| row.iter().map(|d| d.eval(&x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()
            .ok()?;
        let m = fs.len();
        let scale = j.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs())).max(1e-300);
        let mut jjt = vec![vec![0.0; m]; m];
        for a in 0..m {
            for b in 0..m {
                jjt[a][b] = j[a].iter().zip(&j[b]).map(|(u, v)| u * v).sum();
            }
            jjt[a][a] += 1e-14 * scale * scale;
        }
        let y = solve(jjt, f)?;
        let step: Vec<f64> = (0..x.len()).map(|k| (0..m).map(|a| j[a][k] * y[a]).sum()).collect();
        let cand: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a - s).collect();
        match residual(fs, &cand) {
            Some(r) if r < best => {
                best = r;
                x = cand;
            }
            _ => break,
        }
    }
    Some(x)
}

/// Common zeros of `gens` in the box: grid scan plus Newton refinement on the
/// zero-set surrogates. Sorted lexicographically, deduplicated within `1e-6`.
pub fn find_zeros(gens: &[SmoothExpr], p: usize, settings: &Settings) -> Vec<RPoint> {
    let key = format!("{p}|{}|{settings:?}", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(";"));
    if let Some(points) = memo().lock().unwrap().get(&key) {
        return points.clone();
    }
    let points = search_zeros(gens, p, settings);
    let mut m = memo().lock().unwrap();
    if m.len() >= MEMO_CAPACITY {
        m.clear();
    }
    m.insert(key, points.clone());
    points
}

fn search_zeros(gens: &[SmoothExpr], p: usize, settings: &Settings) -> Vec<RPoint> {
    let gens: Vec<SmoothExpr> = gens.iter().map(SmoothExpr::simplify).filter(|g| !g.is_literal_zero()).collect();
    let bounds = settings.bounds_for(p);
    if p == 0 {
        return match residual(&gens, &[]) {
            Some(r) if r < ACCEPT => vec![RPoint { coords: Vec::new(), residual: r }],
            _ => Vec::new(),
        };
    }
    let starts = grid(&bounds, settings.grid);
    if gens.is_empty() {
        return starts.into_iter().map(|coords| RPoint { coords, residual: 0.0 }).collect();
    }
    let surrogates: Vec<SmoothExpr> = gens.iter().map(zero_set_surrogate).collect();
    if surrogates.iter().any(|s| s.as_const().is_some_and(|c| !num_traits::Zero::is_zero(c))) {
        return Vec::new();
    }
    let jac: Vec<Vec<SmoothExpr>> = surrogates.iter().map(|s| (0..p).map(|i| s.partial(i)).collect()).collect();
    let mut found: Vec<RPoint> = starts
        .par_iter()
        .filter_map(|x0| {
            let x = newton(&surrogates, &jac, x0, settings.newton_iters)?;
            if !bounds.contains(&x) {
                return None;
            }
            let r = residual(&gens, &x)?;
            let rs = residual(&surrogates, &x)?;
            (r < ACCEPT && rs < ACCEPT).then_some(RPoint { coords: x, residual: r })
        })
        .collect();
    found.sort_by(|a, b| {
        a.coords.iter().zip(&b.coords).map(|(u, v)| u.total_cmp(v)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out: Vec<RPoint> = Vec::new();
    for pt in found {
        let dup = out.iter().rev().take_while(|q| pt.coords[0] - q.coords[0] <= DEDUP).any(|q| {
            q.coords.iter().zip(&pt.coords).all(|(a, b)| (a - b).abs() <= DEDUP)
        });
        if !dup {
            out.push(pt);
        }
    }
    out
}

/// R-points of a quotient: common zeros of the reduced ideal.
pub fn find_rpoints(q: &QuotientSuperRing, settings: &Settings) -> Vec<RPoint> {
    find_zeros(&q.ideal().reduced_generators(), q.ring().p, settings)
}
