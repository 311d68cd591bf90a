//! Expression grammar for scalars and algebra elements.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' uint]
//! atom   := uint | ident | '(' expr ')'
//! ```
//!
//! The divisor of `/` must not contain generators. Identifiers resolve to the
//! imaginary unit `i`, a definition, a parameter, or a generator.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::freealg::{Algebra, Element};
use crate::scalars::{GaussRational, ParameterSet, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let cs: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < cs.len() {
        let (pos, c) = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[start..i].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Int(s.parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].1.is_ascii_alphanumeric() || cs[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(cs[start..i].iter().map(|x| x.1).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

/// Symbols available to the parser.
#[derive(Clone, Debug)]
pub struct ParseContext {
    pub params: ParameterSet,
    pub alg: Arc<Algebra>,
    pub definitions: BTreeMap<String, Scalar>,
}

impl ParseContext {
    pub fn new(params: ParameterSet, alg: Arc<Algebra>) -> Result<Self> {
        for g in alg.generators() {
            if params.contains(&g.name) || g.name == "i" {
                return Err(Error::Input(format!("`{}` is both a parameter and a generator", g.name)));
            }
        }
        Ok(ParseContext { params, alg, definitions: BTreeMap::new() })
    }

    /// Scalar-only context.
    pub fn scalars(params: ParameterSet) -> Self {
        ParseContext { params, alg: Algebra::new(vec![]).unwrap(), definitions: BTreeMap::new() }
    }

    pub fn define(&mut self, name: &str, value: Scalar) -> Result<()> {
        if name == "i" || self.params.contains(name) || self.alg.index(name).is_some() {
            return Err(Error::Input(format!("cannot redefine `{name}`")));
        }
        self.definitions.insert(name.to_string(), value);
        Ok(())
    }

    pub fn parse(&self, src: &str) -> Result<Element> {
        let toks = tokenize(src)?;
        let mut p = Parser { ctx: self, toks, at: 0, end: src.len() };
        if p.toks.is_empty() {
            return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
        }
        let e = p.expr()?;
        if p.at < p.toks.len() {
            return Err(Error::Syntax { pos: p.pos(), msg: "unexpected trailing input".into() });
        }
        Ok(e)
    }

    pub fn parse_scalar(&self, src: &str) -> Result<Scalar> {
        let e = self.parse(src)?;
        if e.degree().unwrap_or(0) > 0 {
            return Err(Error::Input(format!("`{src}` is not a scalar")));
        }
        Ok(e.coefficient(&crate::freealg::Word::unit()))
    }
}

struct Parser<'a> {
    ctx: &'a ParseContext,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.at) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let neg = self.peek_op() == Some('-');
        if neg {
            self.at += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.at += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.at += 1;
            let pos = self.pos();
            let f = self.factor()?;
            if c == '*' {
                acc = acc.multiply(&f)?;
            } else {
                if f.degree().unwrap_or(0) > 0 {
                    return Err(Error::DivisionByGeneratorExpression);
                }
                let s = f.coefficient(&crate::freealg::Word::unit());
                let inv = s.inv().map_err(|_| Error::Syntax { pos, msg: "division by a non-unit".into() })?;
                acc = acc.multiply(&Element::scalar(&self.ctx.alg, inv))?;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.at += 1;
            let pos = self.pos();
            match self.toks.get(self.at) {
                Some((_, Tok::Int(n))) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Syntax { pos, msg: "exponent too large".into() })?;
                    if e == 0 {
                        return Err(Error::Syntax { pos, msg: "exponent must be positive".into() });
                    }
                    self.at += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::Syntax { pos, msg: "expected a positive integer exponent".into() }),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Element> {
        let pos = self.pos();
        let alg = &self.ctx.alg;
        let Some((_, tok)) = self.toks.get(self.at).cloned() else {
            return Err(Error::Syntax { pos, msg: "unexpected end of input".into() });
        };
        self.at += 1;
        match tok {
            Tok::Int(n) => {
                let r = BigRational::from_integer(n);
                Ok(Element::scalar(alg, Scalar::gauss(GaussRational::new(r, BigRational::from_integer(0.into())))))
            }
            Tok::Ident(name) => {
                if name == "i" {
                    return Ok(Element::scalar(alg, Scalar::imag_unit()));
                }
                if let Some(v) = self.ctx.definitions.get(&name) {
                    return Ok(Element::scalar(alg, v.clone()));
                }
                if let Some(s) = self.ctx.params.scalar(&name) {
                    return Ok(Element::scalar(alg, s));
                }
                if let Some(g) = alg.index(&name) {
                    return Ok(Element::gen(alg, g));
                }
                Err(Error::UnknownSymbol(name))
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Syntax { pos: self.pos(), msg: "expected `)`".into() });
                }
                self.at += 1;
                Ok(e)
            }
            Tok::Op(c) => Err(Error::Syntax { pos, msg: format!("unexpected `{c}`") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Generator;

    fn ctx() -> ParseContext {
        let alg = Algebra::new(vec![Generator::even("x"), Generator::even("y"), Generator::odd("xi")]).unwrap();
        let ps = ParameterSet::new(&["q"], &[], &["h"]).unwrap();
        ParseContext::new(ps, alg).unwrap()
    }

    #[test]
    fn plane_relation() {
        let c = ctx();
        let e = c.parse("x*y - q*y*x").unwrap();
        let x = c.parse("x").unwrap();
        let y = c.parse("y").unwrap();
        assert_eq!(e, x.mul(&y).sub(&y.mul(&x).scale(&Scalar::param("q"))));
        assert!(c.parse("0").unwrap().is_zero());
    }

    #[test]
    fn scalar_fraction() {
        let c = ctx();
        let s = c.parse_scalar("i*(q-1)/(q+1)").unwrap();
        let q = Scalar::param("q");
        let want = Scalar::imag_unit().mul(&q.sub(&Scalar::one())).div(&q.add(&Scalar::one())).unwrap();
        assert_eq!(s, want);
    }

    #[test]
    fn odd_parameter_position() {
        let c = ctx();
        assert_eq!(c.parse("xi*h").unwrap(), c.parse("h*xi").unwrap().neg());
        assert_eq!(c.parse("x*h").unwrap(), c.parse("h*x").unwrap());
    }

    #[test]
    fn errors() {
        let c = ctx();
        assert!(matches!(c.parse("x y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(c.parse("x*"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(c.parse("x/y"), Err(Error::DivisionByGeneratorExpression)));
        assert!(matches!(c.parse("z"), Err(Error::UnknownSymbol(_))));
        assert!(matches!(c.parse("x^0"), Err(Error::Syntax { .. })));
        assert!(matches!(c.parse("1/(q-q)"), Err(Error::Syntax { .. })));
        assert!(matches!(c.parse("x $ y"), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn round_trip_display() {
        let c = ctx();
        for src in ["x*y - q*y*x", "h*xi*y + (q - 1)/(q + 1)*x^2", "-3/2*i*x + (1 - 2*i)", "h*q*x*xi - xi*xi"] {
            let e = c.parse(src).unwrap();
            assert_eq!(c.parse(&e.to_string()).unwrap(), e, "{src} -> {e}");
        }
    }
}
