use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use crate::arith::Q;
use crate::error::{Error, Result};

type QTerms = BTreeMap<Vec<u32>, Q>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
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
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Var(chars[start..i].iter().collect())));
        } else if "+-*^()/".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
    rational: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.here(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn constant(&self, c: Q) -> QTerms {
        let mut m = QTerms::new();
        if !c.is_zero() {
            m.insert(vec![0; self.vars.len()], c);
        }
        m
    }

    fn expr(&mut self) -> Result<QTerms> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = add(&acc, &t, Q::one());
            } else if self.eat('-') {
                let t = self.term()?;
                acc = add(&acc, &t, -Q::one());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QTerms> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let t = self.unary()?;
                acc = mul(&acc, &t);
            } else if self.peek() == Some(&Tok::Op('/')) {
                if !self.rational {
                    return self.err("division is not allowed here");
                }
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::Int(d)) if !d.is_zero() => {
                        self.pos += 1;
                        let inv = Q::new(BigInt::one(), d);
                        acc = acc.into_iter().map(|(e, c)| (e, c * &inv)).collect();
                    }
                    _ => return self.err("expected a nonzero integer after `/`"),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QTerms> {
        if self.eat('-') {
            let t = self.unary()?;
            return Ok(t.into_iter().map(|(e, c)| (e, -c)).collect());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<QTerms> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| Error::Syntax { pos: self.here(), msg: "exponent too large".into() })?;
                    let mut acc = self.constant(Q::one());
                    for _ in 0..k {
                        acc = mul(&acc, &base);
                    }
                    Ok(acc)
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<QTerms> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.constant(Q::from_integer(n)))
            }
            Some(Tok::Var(name)) => {
                let Some(i) = self.vars.iter().position(|v| *v == name) else {
                    return Err(Error::UnknownVariable(name));
                };
                self.pos += 1;
                let mut e = vec![0; self.vars.len()];
                e[i] = 1;
                Ok([(e, Q::one())].into_iter().collect())
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn add(a: &QTerms, b: &QTerms, sign: Q) -> QTerms {
    let mut out = a.clone();
    for (e, c) in b {
        let slot = out.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c * &sign;
        if slot.is_zero() {
            out.remove(e);
        }
    }
    out
}

fn mul(a: &QTerms, b: &QTerms) -> QTerms {
    let mut out = QTerms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e.clone()).or_insert_with(Q::zero);
            *slot += ca * cb;
            if slot.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

fn run(text: &str, vars: &[String], rational: bool) -> Result<QTerms> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), vars, rational };
    let t = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

/// Parses an integer polynomial in the given variables.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MultiPoly> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let t = run(text, &vars, false)?;
    Ok(MultiPoly::from_terms(vars, t.into_iter().map(|(e, c)| (e, c.to_integer()))))
}

/// Variable names in order of first appearance.
pub fn infer_variables(text: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for (_, t) in lex(text)? {
        if let Tok::Var(v) = t {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// A parsed polynomial that may have had rational coefficients: `poly`
/// equals `scale` times the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ClearedPoly {
    pub poly: MultiPoly,
    pub scale: BigInt,
}

/// Parses with `/INT` allowed and clears denominators. Variables are
/// inferred by first appearance when `vars` is `None`.
pub fn parse_rational_poly(text: &str, vars: Option<&[&str]>) -> Result<ClearedPoly> {
    let vars: Vec<String> = match vars {
        Some(v) => v.iter().map(|s| s.to_string()).collect(),
        None => infer_variables(text)?,
    };
    let t = run(text, &vars, true)?;
    let l = t.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lq = Q::from_integer(l.clone());
    Ok(ClearedPoly {
        poly: MultiPoly::from_terms(vars, t.into_iter().map(|(e, c)| (e, (c * &lq).to_integer()))),
        scale: l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f = parse_poly("x^2+y^2", &["x", "y"]).unwrap();
        assert_eq!(f, MultiPoly::from_ints(&["x", "y"], &[(&[2, 0], 1), (&[0, 2], 1)]));
        let g = parse_poly("x*y+z^3", &["x", "y", "z"]).unwrap();
        assert_eq!(g, MultiPoly::from_ints(&["x", "y", "z"], &[(&[1, 1, 0], 1), (&[0, 0, 3], 1)]));
        let h = parse_poly("y^2-x^3", &["x", "y"]).unwrap();
        assert_eq!(h, MultiPoly::from_ints(&["x", "y"], &[(&[0, 2], 1), (&[3, 0], -1)]));
    }

    #[test]
    fn precedence_and_parentheses() {
        let f = parse_poly("-x^2 + 2*(x + 1)^2 - (3)", &["x"]).unwrap();
        assert_eq!(f, MultiPoly::from_ints(&["x"], &[(&[2], 1), (&[1], 4), (&[0], -1)]));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("x + ", &["x"]), Err(Error::Syntax { pos: 4, .. })));
        assert_eq!(parse_poly("x + w", &["x"]), Err(Error::UnknownVariable("w".into())));
        assert!(matches!(parse_poly("x/2", &["x"]), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("x ^ y", &["x", "y"]), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x $ y", &["x", "y"]), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn rational_input_is_cleared() {
        let c = parse_rational_poly("x^2/3 + y/2", None).unwrap();
        assert_eq!(c.scale, BigInt::from(6));
        assert_eq!(c.poly, MultiPoly::from_ints(&["x", "y"], &[(&[2, 0], 2), (&[0, 1], 3)]));
        assert_eq!(infer_variables("z*x + y").unwrap(), vec!["z", "x", "y"]);
    }
}
