use crate::expr::parse::{parse_var_ident, Builder, ExprParser, TreeBuilder};
use crate::expr::{Func, ParseError, SmoothExpr};
use crate::scalar::Rational;

use super::{Grassmann, MultiIndex, SuperElement};

struct SuperBuilder {
    p: usize,
    q: usize,
    even: TreeBuilder,
}

impl SuperBuilder {
    fn lift(&self, e: SmoothExpr) -> SuperElement {
        Grassmann::scalar(self.p, self.q, e)
    }

    /// The coefficient of a θ-free value, or an error naming the operation.
    fn even(&self, v: &SuperElement, pos: usize, what: &str) -> Result<SmoothExpr, ParseError> {
        if v.terms().any(|(i, _)| !i.is_empty()) {
            return Err(ParseError::Invalid { pos, msg: format!("{what} needs an argument without odd generators") });
        }
        Ok(v.body())
    }

    /// `t<i>t<j>...` as a signed odd monomial.
    fn odd_monomial(&self, name: &str, pos: usize) -> Result<Option<SuperElement>, ParseError> {
        if !name.starts_with('t') {
            return Ok(None);
        }
        let mut seq = Vec::new();
        for part in name.split('t').skip(1) {
            let Some(k) = parse_var_ident(&format!("t{part}"), 't') else { return Ok(None) };
            if k == 0 || k > self.q {
                return Err(ParseError::VariableOutOfRange { pos, index: k, arity: self.q });
            }
            seq.push(k - 1);
        }
        Ok(Some(match MultiIndex::from_sequence(&seq) {
            None => Grassmann::zero(self.p, self.q),
            Some((index, negative)) => {
                let c = if negative { -SmoothExpr::one() } else { SmoothExpr::one() };
                Grassmann::monomial(self.p, self.q, index, c)
            }
        }))
    }
}

impl Builder for SuperBuilder {
    type Value = SuperElement;

    fn number(&self, c: Rational) -> SuperElement {
        self.lift(SmoothExpr::constant(c))
    }

    fn ident(&self, name: &str, pos: usize) -> Result<SuperElement, ParseError> {
        if let Some(m) = self.odd_monomial(name, pos)? {
            return Ok(m);
        }
        self.even.ident(name, pos).map(|e| self.lift(e))
    }

    fn apply(&self, f: Func, args: Vec<SuperElement>, pos: usize) -> Result<SuperElement, ParseError> {
        let args = args.iter().map(|a| self.even(a, pos, f.name())).collect::<Result<Vec<_>, _>>()?;
        Ok(self.lift(SmoothExpr::apply(f, args).simplify()))
    }

    fn add(&self, a: SuperElement, b: SuperElement, _: usize) -> Result<SuperElement, ParseError> {
        Ok(&a + &b)
    }

    fn sub(&self, a: SuperElement, b: SuperElement, _: usize) -> Result<SuperElement, ParseError> {
        Ok(&a - &b)
    }

    fn mul(&self, a: SuperElement, b: SuperElement, _: usize) -> Result<SuperElement, ParseError> {
        Ok(&a * &b)
    }

    fn div(&self, a: SuperElement, b: SuperElement, pos: usize) -> Result<SuperElement, ParseError> {
        let d = self.even(&b, pos, "division")?;
        if d.is_literal_zero() {
            return Err(ParseError::Invalid { pos, msg: "division by zero".into() });
        }
        Ok(a.scale(&SmoothExpr::pow(d, -1).simplify()))
    }

    fn pow(&self, a: SuperElement, n: i32, pos: usize) -> Result<SuperElement, ParseError> {
        if n >= 0 {
            return Ok(a.pow(n as u32));
        }
        let base = self.even(&a, pos, "negative power")?;
        Ok(self.lift(SmoothExpr::pow(base, n).simplify()))
    }

    fn neg(&self, a: SuperElement, _: usize) -> Result<SuperElement, ParseError> {
        Ok(-a)
    }

    fn default_bump_arg(&self, pos: usize) -> Result<SuperElement, ParseError> {
        self.even.default_bump_arg(pos).map(|e| self.lift(e))
    }
}

pub(super) fn parse_super(text: &str, p: usize, q: usize) -> Result<SuperElement, ParseError> {
    if q > MultiIndex::MAX_ODD {
        return Err(ParseError::Invalid { pos: 0, msg: format!("at most {} odd generators", MultiIndex::MAX_ODD) });
    }
    let builder = SuperBuilder { p, q, even: TreeBuilder { arity: p } };
    ExprParser::new(text, &builder)?.parse_all()
}
