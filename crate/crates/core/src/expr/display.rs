use std::fmt;

use num_traits::{One, Signed};

use super::{Node, SmoothExpr};
use crate::scalar::Rational;

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const POWER: u8 = 3;
const ATOM: u8 = 4;

fn const_prec(c: &Rational) -> u8 {
    if c.is_negative() {
        SUM
    } else if c.is_integer() {
        ATOM
    } else {
        PRODUCT
    }
}

/// Product whose leading factor is a negative constant, printed as `-…`.
fn negated_product(e: &SmoothExpr) -> Option<SmoothExpr> {
    let Node::Mul(fs) = e.node() else { return None };
    let c = fs.first()?.as_const()?;
    if !c.is_negative() {
        return None;
    }
    let c = -c;
    let mut rest: Vec<SmoothExpr> = fs[1..].to_vec();
    if !c.is_one() {
        rest.insert(0, SmoothExpr::constant(c));
    }
    Some(if rest.len() == 1 { rest.pop().unwrap() } else { SmoothExpr::mul(rest) })
}

fn prec(e: &SmoothExpr) -> u8 {
    match e.node() {
        Node::Const(c) => const_prec(c),
        Node::Var(_) | Node::Apply(..) => ATOM,
        Node::Add(_) | Node::Neg(_) => SUM,
        Node::Mul(_) if negated_product(e).is_some() => SUM,
        Node::Mul(_) | Node::Div(..) => PRODUCT,
        Node::Pow(..) => POWER,
    }
}

/// The positive part of a term that prints with a leading minus sign.
fn strip_sign(e: &SmoothExpr) -> Option<SmoothExpr> {
    match e.node() {
        Node::Neg(a) => Some(a.clone()),
        Node::Const(c) if c.is_negative() => Some(SmoothExpr::constant(-c)),
        Node::Mul(_) => negated_product(e),
        _ => None,
    }
}

fn write(e: &SmoothExpr, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec(e) < min {
        out.write_str("(")?;
        write(e, SUM, out)?;
        return out.write_str(")");
    }
    match e.node() {
        Node::Const(c) => {
            if c.is_integer() {
                write!(out, "{}", c.numer())
            } else {
                write!(out, "{}/{}", c.numer(), c.denom())
            }
        }
        Node::Var(i) => write!(out, "x{}", i + 1),
        Node::Add(terms) => {
            for (k, t) in terms.iter().enumerate() {
                if k == 0 {
                    write(t, SUM, out)?;
                } else if let Some(pos) = strip_sign(t) {
                    out.write_str(" - ")?;
                    write(&pos, PRODUCT, out)?;
                } else {
                    out.write_str(" + ")?;
                    write(t, PRODUCT, out)?;
                }
            }
            Ok(())
        }
        Node::Neg(a) => {
            out.write_str("-")?;
            write(a, PRODUCT, out)
        }
        Node::Mul(fs) => {
            if let Some(pos) = negated_product(e) {
                out.write_str("-")?;
                return write(&pos, PRODUCT, out);
            }
            for (k, f) in fs.iter().enumerate() {
                if k > 0 {
                    out.write_str("*")?;
                }
                write(f, if k == 0 { PRODUCT } else { POWER }, out)?;
            }
            Ok(())
        }
        Node::Div(a, b) => {
            write(a, PRODUCT, out)?;
            out.write_str("/")?;
            write(b, POWER, out)
        }
        Node::Pow(a, n) => {
            write(a, ATOM, out)?;
            write!(out, "^{n}")
        }
        Node::Apply(f, args) => {
            write!(out, "{}(", f.name())?;
            for (k, a) in args.iter().enumerate() {
                if k > 0 {
                    out.write_str(", ")?;
                }
                write(a, SUM, out)?;
            }
            out.write_str(")")
        }
    }
}

impl fmt::Display for SmoothExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write(self, SUM, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(s: &str, n: usize) -> String {
        SmoothExpr::parse(s, n).unwrap().simplify().to_string()
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(show("x1 - x2", 2), "x1 - x2");
        assert_eq!(show("x1*(-2)", 1), "-2*x1");
        assert_eq!(show("x1/2", 1), "1/2*x1");
        assert_eq!(show("2/x1^3*flat(x1)", 1), "2*x1^-3*flat(x1)");
        assert_eq!(show("1/(x1+1)", 1), "(1 + x1)^-1");
        assert_eq!(show("-(1/2)", 0), "-1/2");
        assert_eq!(show("x1*x1 - 1", 1), "-1 + x1^2");
    }

    #[test]
    fn prints_reparse_to_the_same_canonical_tree() {
        for s in ["x1 - 2*x2^-1*sin(x1/3) - (x1 + 1)^-2", "exp(-x1)*bump(x1, -1/2, 1)", "-x1*x2 - 7/5"] {
            let e = SmoothExpr::parse(s, 2).unwrap().simplify();
            let back = SmoothExpr::parse(&e.to_string(), 2).unwrap().simplify();
            assert_eq!(e, back, "{s} -> {e}");
        }
    }
}
