//! Text form of weights.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! sum     := ['-'] product (('+' | '-') product)*
//! product := power ('*' power)*
//! power   := atom ['^' integer]
//! atom    := integer ['/' integer] | ident | '(' sum ')'
//! ident   := [a-z][a-z0-9_]*
//! ```
//!
//! Printing emits monomials in ascending [`Monomial`] order with the
//! coefficient first (`3*x1*w2`, `1/2*z1`), so two weights print the same
//! exactly when they are equal.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Poly, Scalar, Var, Weight};
use crate::error::Error;

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(s)?;
        let mut p = Parser { input: s, tokens, pos: 0 };
        let w = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, Error> {
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
            out.push(Tok::Int(digits.parse().expect("digit run")));
        } else if c.is_ascii_lowercase() {
            let start = i;
            while i < chars.len() && matches!(chars[i], 'a'..='z' | '0'..='9' | '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::WeightParse { input: s.to_string(), reason: format!("unexpected character `{c}`") });
        }
    }
    if out.is_empty() {
        return Err(Error::WeightParse { input: s.to_string(), reason: "empty weight".into() });
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, reason: &str) -> Error {
        Error::WeightParse { input: self.input.to_string(), reason: format!("{reason} at token {}", self.pos) }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Weight, Error> {
        let mut acc = if self.eat('-') { -self.product()? } else { self.product()? };
        loop {
            if self.eat('+') {
                acc = &acc + &self.product()?;
            } else if self.eat('-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Weight, Error> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Weight, Error> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().map_err(|_| self.fail("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.fail("expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Weight, Error> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.pos += 1;
                            if d.is_zero() {
                                return Err(Error::DivisionByZero);
                            }
                            Ok(Weight::Scalar(Scalar::new(n, d)))
                        }
                        _ => Err(self.fail("expected an integer denominator")),
                    }
                } else {
                    Ok(Weight::Scalar(Scalar::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Weight::Poly(Poly::var(Var::new(&name)?)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let w = self.sum()?;
                if !self.eat(')') {
                    return Err(self.fail("missing `)`"));
                }
                Ok(w)
            }
            _ => Err(self.fail("expected a number, variable or `(`")),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Scalar(s) => write!(f, "{s}"),
            Weight::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}
