//! Element-expression grammar for structured-text input.
//!
//! Supported: integer literals (reduced into the target ring), named
//! variables (`t`, `xi`, `X`, ... — the caller decides which names are
//! bound), operators `+ - * ^`, unary minus, parentheses. Anything else is a
//! parse error naming the offending token.

use crate::error::{Error, Result};
use crate::ring::Ring;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Tok>> {
    let mut toks = vec![];
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '0'..='9' => {
                let mut n = 0i64;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|x| x.checked_add(v as i64))
                            .ok_or_else(|| Error::parse("integer literal overflow"))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(n));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            other => {
                return Err(Error::parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            let rhs = self.unary()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    // power := primary ('^' int)?
    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            match self.next() {
                Some(Tok::Int(n)) if n >= 0 => {
                    let n = u32::try_from(n)
                        .map_err(|_| Error::parse(format!("exponent {n} too large")))?;
                    Ok(Expr::Pow(Box::new(base), n))
                }
                Some(t) => Err(Error::parse(format!(
                    "expected non-negative integer exponent, found `{}`",
                    tok_name(&t)
                ))),
                None => Err(Error::parse("expected exponent after `^`, found end of input")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Ident(s)) => Ok(Expr::Var(s)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    Some(t) => Err(Error::parse(format!(
                        "expected `)`, found `{}`",
                        tok_name(&t)
                    ))),
                    None => Err(Error::parse("expected `)`, found end of input")),
                }
            }
            Some(t) => Err(Error::parse(format!("unexpected token `{}`", tok_name(&t)))),
            None => Err(Error::parse("unexpected end of input")),
        }
    }
}

fn tok_name(t: &Tok) -> String {
    match t {
        Tok::Int(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Caret => "^".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
    }
}

pub fn parse(input: &str) -> Result<Expr> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(Error::parse(format!(
            "trailing input at token `{}`",
            tok_name(t)
        )));
    }
    Ok(e)
}

/// Evaluate an expression in any ring, with the given variable bindings.
/// Unbound variables are errors naming the variable.
pub fn eval<R: Ring>(ring: &R, e: &Expr, vars: &BTreeMap<String, R::Elem>) -> Result<R::Elem> {
    Ok(match e {
        Expr::Int(n) => ring.from_int(*n),
        Expr::Var(v) => vars
            .get(v)
            .cloned()
            .ok_or_else(|| Error::parse(format!("unknown variable `{v}`")))?,
        Expr::Neg(a) => ring.neg(&eval(ring, a, vars)?),
        Expr::Add(a, b) => ring.add(&eval(ring, a, vars)?, &eval(ring, b, vars)?),
        Expr::Sub(a, b) => ring.sub(&eval(ring, a, vars)?, &eval(ring, b, vars)?),
        Expr::Mul(a, b) => ring.mul(&eval(ring, a, vars)?, &eval(ring, b, vars)?),
        Expr::Pow(a, n) => ring.pow(&eval(ring, a, vars)?, *n as u64),
    })
}

/// Parse and evaluate in one step.
pub fn parse_in<R: Ring>(ring: &R, input: &str, vars: &BTreeMap<String, R::Elem>) -> Result<R::Elem> {
    eval(ring, &parse(input)?, vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Fq;
    use crate::poly::PolyRing;
    use crate::ring::Ring;

    #[test]
    fn parses_spec_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let pr = PolyRing::new(f3.clone(), "xi");
        let mut vars = BTreeMap::new();
        vars.insert("xi".to_string(), pr.var_elem());
        // "-xi"
        let e = parse_in(&pr, "-xi", &vars).unwrap();
        assert_eq!(e, pr.neg(&pr.var_elem()));
        // "t^2+1" with t bound
        let prt = PolyRing::new(f3.clone(), "t");
        let mut vt = BTreeMap::new();
        vt.insert("t".to_string(), prt.var_elem());
        let e = parse_in(&prt, "t^2+1", &vt).unwrap();
        assert_eq!(e, vec![f3.one(), f3.zero(), f3.one()]);
        // integers reduce mod p
        let e = parse_in(&prt, "4", &vt).unwrap();
        assert_eq!(e, vec![f3.one()]);
        // precedence: 1+2*t^2 vs (1+2)*t^2
        let a = parse_in(&prt, "1+2*t^2", &vt).unwrap();
        assert_eq!(a, vec![f3.one(), f3.zero(), f3.from_int(2)]);
        let b = parse_in(&prt, "(1+2)*t^2", &vt).unwrap();
        assert!(prt.is_zero(&b));
    }

    #[test]
    fn errors_name_offending_token() {
        let err = parse("t^2-").unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("end of input"), "{msg}");
        let err = parse("t^x").unwrap_err();
        assert!(format!("{err}").contains("x"));
        let err = parse("t$2").unwrap_err();
        assert!(format!("{err}").contains("$"));
        let err = parse("t 2").unwrap_err();
        assert!(format!("{err}").contains("trailing"));
        let f3 = Fq::new(3, 1).unwrap();
        let err = parse_in(&f3, "y+1", &BTreeMap::new()).unwrap_err();
        assert!(format!("{err}").contains("y"));
    }

    #[test]
    fn unary_minus_binds_tighter_than_sub() {
        let f5 = Fq::new(5, 1).unwrap();
        let v = BTreeMap::new();
        assert_eq!(parse_in(&f5, "-2-2", &v).unwrap(), f5.from_int(-4));
        assert_eq!(parse_in(&f5, "2--2", &v).unwrap(), f5.from_int(4));
        assert_eq!(parse_in(&f5, "-2^2", &v).unwrap(), f5.from_int(-4));
    }
}
