//! Recursive-descent parser for polynomials with rational and `zeta(N)` coefficients.

use std::sync::Arc;

use num_bigint::BigInt;

use super::poly::MultiPoly;
use crate::cyclo::{CyclotomicNumber as Cyclo, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in \"{s}\"")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: Arc<[String]>,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at token {} in \"{}\"", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn uint(&mut self) -> Result<u32> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                u32::try_from(n).map_err(|_| self.err("integer too large"))
            }
            _ => Err(self.err("expected a non-negative integer")),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                if !d.is_constant() {
                    return Err(self.err("division by a non-constant"));
                }
                let c = d.terms().first().map(|t| t.1.clone()).ok_or(Error::DivisionByZero)?;
                acc = acc.scale(&c.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.vars.clone(), Cyclo::from_rational(Rational::from_integer(n))))
            }
            Some(Tok::Ident(name)) if name == "zeta" => {
                self.pos += 1;
                self.expect('(')?;
                let n = self.uint()?;
                self.expect(')')?;
                if n == 0 {
                    return Err(self.err("zeta(0) is undefined"));
                }
                let z = Cyclo::zeta(n);
                if z.order() > crate::cyclo::max_order() {
                    return Err(Error::OrderOverflow { order: n as u64, max: crate::cyclo::max_order() });
                }
                Ok(MultiPoly::constant(self.vars.clone(), z))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self.vars.iter().position(|v| *v == name).ok_or_else(|| self.err(&format!("unknown variable '{name}'")))?;
                Ok(MultiPoly::var(self.vars.clone(), i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable, zeta(N) or '('")),
        }
    }
}

pub fn parse_poly(src: &str, vars: &Arc<[String]>) -> Result<MultiPoly> {
    if vars.iter().any(|v| v == "zeta") {
        return Err(Error::Parse("'zeta' is reserved".into()));
    }
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, vars: vars.clone(), src };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses a scalar expression such as `1/2 - zeta(8)^3`.
pub fn parse_scalar(src: &str) -> Result<Cyclo> {
    let p = parse_poly(src, &Arc::from(Vec::<String>::new()))?;
    Ok(p.terms().first().map(|t| t.1.clone()).unwrap_or_else(|| Cyclo::zero(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysolve::poly::default_vars;

    #[test]
    fn parses_and_prints_round_trip() {
        let v = default_vars(3);
        let f = parse_poly("x0^2 + x1^2 - x2^2", &v).unwrap();
        assert_eq!(f.to_string(), "x0^2 + x1^2 - x2^2");
        let g = parse_poly("(x0 + zeta(3)*x1)*(x0 - x1)/2", &v).unwrap();
        let again = parse_poly(&g.to_string(), &v).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn scalars() {
        let z = parse_scalar("1 + zeta(4)^2").unwrap();
        assert!(z.is_zero());
        assert_eq!(parse_scalar("3/6").unwrap(), Cyclo::from_rational(Rational::new(1.into(), 2.into())));
        assert!(parse_scalar("x0").is_err());
        assert!(parse_scalar("1/0").is_err());
    }
}
