//! Canonical text form, expression parsing, and the JSON encoding of `Poly`.
//!
//! The canonical form lists terms in descending graded-lex order with
//! explicit `^` exponents and `*` products, e.g.
//! `21*a1^2 + 2*a1*a3 + a3^2`. The parser accepts a superset (parentheses,
//! sums and products of subexpressions) so the stored display fixtures can be
//! transcribed factor by factor; printing always emits the canonical form.

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::vars::VarId;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.magnitude();
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

/// Parse failure, with a short description of what went wrong.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error: {0}")]
pub struct ParseError(pub String);

impl FromStr for Poly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Poly, ParseError> {
        let mut p = Parser::new(s);
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(ParseError(format!(
                "unexpected input at byte {}: {:?}",
                p.pos,
                p.rest()
            )));
        }
        Ok(poly)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(s: &str) -> Parser {
        Parser {
            chars: s.chars().collect(),
            pos: 0,
        }
    }

    fn rest(&self) -> String {
        self.chars[self.pos..].iter().take(16).collect()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut neg = false;
        match self.peek() {
            Some('+') => {
                self.bump();
            }
            Some('-') => {
                self.bump();
                neg = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    // factor := base ('^' uint)?
    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.uint()?;
            if e > u16::MAX as u32 {
                return Err(ParseError(format!("exponent {} too large", e)));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    // base := integer | variable | '(' expr ')'
    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(ParseError(format!("expected ')' near {:?}", self.rest())));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.bigint()?;
                Ok(Poly::constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                match VarId::from_name(&name) {
                    Some(v) => Ok(Poly::var(v)),
                    None => Err(ParseError(format!("unknown variable {:?}", name))),
                }
            }
            other => Err(ParseError(format!("unexpected {:?}", other))),
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let mut s = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn bigint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        BigInt::from_str(&s).map_err(|e| ParseError(format!("bad integer {:?}: {}", s, e)))
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        let n = self.bigint()?;
        u32::try_from(n).map_err(|_| ParseError("exponent out of range".into()))
    }
}

/// One term of the JSON encoding: decimal coefficient plus the map of
/// nonzero exponents.
#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: BTreeMap<String, u16>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exps: m.vars().map(|(v, e)| (v.name().to_string(), e)).collect(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Poly, D::Error> {
        let terms = Vec::<TermJson>::deserialize(deserializer)?;
        let mut out = Poly::zero();
        for t in terms {
            let c = BigInt::from_str(&t.coeff)
                .map_err(|e| D::Error::custom(format!("bad coefficient {:?}: {}", t.coeff, e)))?;
            let mut m = Monomial::ONE;
            for (name, e) in &t.exps {
                let v = VarId::from_name(name)
                    .ok_or_else(|| D::Error::custom(format!("unknown variable {:?}", name)))?;
                m = m.mul(&Monomial::var_pow(v, *e));
            }
            out = out.add(&Poly::term(c, m));
        }
        Ok(out)
    }
}
