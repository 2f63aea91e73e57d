use super::{Func, Node, SmoothExpr};
use crate::scalar::Rational;

fn c(n: i64) -> SmoothExpr {
    SmoothExpr::int(n)
}

fn half() -> SmoothExpr {
    SmoothExpr::constant(Rational::new(1.into(), 2.into()))
}

fn mul(fs: Vec<SmoothExpr>) -> SmoothExpr {
    SmoothExpr::mul(fs)
}

/// `(u - a)(b - u)`, the argument of the exponential in `bump(u, a, b)`.
pub(crate) fn bump_argument(u: &SmoothExpr, a: &SmoothExpr, b: &SmoothExpr) -> SmoothExpr {
    mul(vec![
        SmoothExpr::add(vec![u.clone(), SmoothExpr::neg(a.clone())]),
        SmoothExpr::add(vec![b.clone(), SmoothExpr::neg(u.clone())]),
    ])
}

impl SmoothExpr {
    /// Symbolic `∂/∂x_{i+1}` (zero-based index), simplified.
    pub fn partial(&self, i: usize) -> SmoothExpr {
        self.raw_partial(i).simplify()
    }

    /// Iterated partial derivative `∂^α`.
    pub fn partial_multi(&self, alpha: &[usize]) -> SmoothExpr {
        let mut out = self.simplify();
        for (i, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                out = out.partial(i);
            }
        }
        out
    }

    fn raw_partial(&self, i: usize) -> SmoothExpr {
        match self.node() {
            Node::Const(_) => c(0),
            Node::Var(j) => c((*j == i) as i64),
            Node::Add(xs) => SmoothExpr::add(xs.iter().map(|x| x.raw_partial(i)).collect()),
            Node::Mul(xs) => {
                let mut terms = Vec::with_capacity(xs.len());
                for k in 0..xs.len() {
                    let d = xs[k].raw_partial(i).simplify();
                    if d.is_literal_zero() {
                        continue;
                    }
                    let mut fs = xs.clone();
                    fs[k] = d;
                    terms.push(mul(fs));
                }
                SmoothExpr::add(terms)
            }
            Node::Neg(a) => SmoothExpr::neg(a.raw_partial(i)),
            Node::Div(a, b) => {
                // a' b^-1 - a b' b^-2 keeps every term a flat product.
                SmoothExpr::add(vec![
                    mul(vec![a.raw_partial(i), SmoothExpr::pow(b.clone(), -1)]),
                    SmoothExpr::neg(mul(vec![
                        a.clone(),
                        b.raw_partial(i),
                        SmoothExpr::pow(b.clone(), -2),
                    ])),
                ])
            }
            Node::Pow(a, n) => {
                if *n == 0 {
                    return c(0);
                }
                mul(vec![c(*n as i64), SmoothExpr::pow(a.clone(), n - 1), a.raw_partial(i)])
            }
            Node::Apply(f, args) => {
                let mut terms = Vec::new();
                for (k, arg) in args.iter().enumerate() {
                    let d = arg.raw_partial(i).simplify();
                    if d.is_literal_zero() {
                        continue;
                    }
                    let mut outer = outer_partial(*f, args, k);
                    if let Node::Mul(fs) = outer.node() {
                        let mut fs = fs.clone();
                        fs.push(d);
                        outer = mul(fs);
                    } else {
                        outer = mul(vec![outer, d]);
                    }
                    terms.push(outer);
                }
                SmoothExpr::add(terms)
            }
        }
    }
}

/// `∂_k F(args)` for a primitive `F`, returned as a product so that flat-type
/// factors stay at the same level as the poles they cancel.
fn outer_partial(f: Func, args: &[SmoothExpr], k: usize) -> SmoothExpr {
    let u = &args[0];
    let this = SmoothExpr::apply(f, args.to_vec());
    match f {
        Func::Exp => this,
        Func::Log => SmoothExpr::pow(u.clone(), -1),
        Func::Sin => SmoothExpr::func(Func::Cos, u.clone()),
        Func::Cos => mul(vec![c(-1), SmoothExpr::func(Func::Sin, u.clone())]),
        Func::Tan => SmoothExpr::add(vec![c(1), SmoothExpr::pow(this, 2)]),
        Func::Sqrt => mul(vec![half(), SmoothExpr::pow(this, -1)]),
        Func::Flat => mul(vec![c(2), SmoothExpr::pow(u.clone(), -3), this]),
        Func::Bump => {
            let (a, b) = (&args[1], &args[2]);
            let s = bump_argument(u, a, b);
            // ∂s/∂u = a + b - 2u, ∂s/∂a = u - b, ∂s/∂b = u - a
            let ds = match k {
                0 => SmoothExpr::add(vec![a.clone(), b.clone(), mul(vec![c(-2), u.clone()])]),
                1 => SmoothExpr::add(vec![u.clone(), SmoothExpr::neg(b.clone())]),
                _ => SmoothExpr::add(vec![u.clone(), SmoothExpr::neg(a.clone())]),
            };
            mul(vec![this, SmoothExpr::pow(s, -2), ds])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> SmoothExpr {
        SmoothExpr::parse(s, n).unwrap()
    }

    #[test]
    fn elementary_rules() {
        assert_eq!(p("x1*x2", 2).partial(0), p("x2", 2));
        assert_eq!(p("sin(x1)", 1).partial(0), p("cos(x1)", 1).simplify());
        assert_eq!(p("flat(x1)", 1).partial(0), p("(2/x1^3)*flat(x1)", 1).simplify());
        assert_eq!(p("x1^3", 1).partial(0), p("3*x1^2", 1).simplify());
        assert!(p("exp(x2)", 2).partial(0).is_literal_zero());
    }

    /// Central differences with δ = 1e-4 at x1 ∈ {0, ±0.5}; at 0 both sides vanish.
    #[test]
    fn flat_derivative_matches_finite_differences() {
        let f = p("flat(x1)", 1);
        let d = f.partial(0);
        let delta = 1e-4;
        for x in [0.0, 0.5, -0.5] {
            let fd = (f.eval::<f64>(&[x + delta]).unwrap() - f.eval(&[x - delta]).unwrap()) / (2.0 * delta);
            let sym: f64 = d.eval(&[x]).unwrap();
            assert!((fd - sym).abs() <= 1e-6 * sym.abs().max(1e-12), "x={x}: {fd} vs {sym}");
        }
        assert_eq!(d.eval(&[0.0]).unwrap(), 0.0);
    }

    #[test]
    fn bump_derivative_matches_finite_differences() {
        let f = p("bump(x1, -1, 2)", 1);
        let d = f.partial(0);
        for x in [-0.5, 0.3, 1.7] {
            let h = 1e-5;
            let fd = (f.eval::<f64>(&[x + h]).unwrap() - f.eval(&[x - h]).unwrap()) / (2.0 * h);
            let sym: f64 = d.eval(&[x]).unwrap();
            assert!((fd - sym).abs() <= 1e-6 * sym.abs().max(1e-9), "x={x}: {fd} vs {sym}");
        }
        assert_eq!(d.eval(&[-1.0]).unwrap(), 0.0);
        assert_eq!(d.eval(&[3.0]).unwrap(), 0.0);
    }

    #[test]
    fn flat_has_vanishing_derivatives_at_zero() {
        let mut e = p("flat(x1)", 1).simplify();
        for order in 0..=6 {
            assert!(e.eval::<f64>(&[0.0]).unwrap().abs() < 1e-12, "order {order}");
            e = e.partial(0);
        }
    }
}
