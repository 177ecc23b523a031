//! Series expression grammar.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := INT | '(' '-'? INT ('/' INT)? ')'
//! atom     := INT | 't' INT | 'sqrt2' | 'O' '(' expr ')' | IDENT | '(' expr ')'
//! ```
//!
//! `t_i` is the monomial `x^{e_i}`; `O(m)` is the zero series truncated at
//! the exponent of the monomial `m`. [`Series`]'s `Display` emits this
//! grammar, and parsing a rendering returns the identical series.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::coeff::{Coeff, CoeffField};
use crate::error::{Error, Result};
use crate::group::ExpVec;
use crate::series::{Precision, Series};
use crate::Rat;

/// Everything an expression needs besides its text.
#[derive(Clone, Debug)]
pub struct ParseContext<'a> {
    pub dim: usize,
    pub field: CoeffField,
    pub precision: Precision,
    pub bindings: Option<&'a HashMap<String, Series>>,
}

impl<'a> ParseContext<'a> {
    pub fn new(dim: usize, field: CoeffField, precision: Precision) -> Self {
        ParseContext {
            dim,
            field,
            precision,
            bindings: None,
        }
    }

    pub fn with_bindings(mut self, bindings: &'a HashMap<String, Series>) -> Self {
        self.bindings = Some(bindings);
        self
    }
}

/// Parses and evaluates an expression.
pub fn parse_series(src: &str, ctx: &ParseContext<'_>) -> Result<Series> {
    let mut p = Parser { src, pos: 0, ctx };
    let s = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    if !s.in_field(ctx.field) {
        return Err(Error::OutsideField(s.to_string()));
    }
    Ok(s.pad_to(ctx.dim))
}

/// Parses a `;`-separated list of expressions.
pub fn parse_series_list(src: &str, ctx: &ParseContext<'_>) -> Result<Vec<Series>> {
    src.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_series(s, ctx))
        .collect()
}

struct Parser<'s, 'c> {
    src: &'s str,
    pos: usize,
    ctx: &'c ParseContext<'c>,
}

impl Parser<'_, '_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn ident(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c == '_' || c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit()))
            .map(|(i, c)| i + c.len_utf8())
            .last()?;
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    fn expr(&mut self) -> Result<Series> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Series> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                acc = acc.div(&rhs, &self.ctx.precision)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Series> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Series> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let q = self.exponent()?;
        if q.is_integer() {
            let e = q
                .to_integer()
                .to_i64()
                .ok_or_else(|| self.err("exponent too large"))?;
            base.powi(e, &self.ctx.precision)
        } else {
            base.power(&q, &self.ctx.precision)
        }
    }

    fn exponent(&mut self) -> Result<Rat> {
        if self.eat('(') {
            let neg = self.eat('-');
            let n = self.integer()?;
            let d = if self.eat('/') { self.integer()? } else { BigInt::one() };
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            self.expect(')')?;
            let q = Rat::new(n, d);
            Ok(if neg { -q } else { q })
        } else {
            Ok(Rat::from_integer(self.integer()?))
        }
    }

    fn atom(&mut self) -> Result<Series> {
        self.skip_ws();
        let dim = self.ctx.dim;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let s = self.expr()?;
                self.expect(')')?;
                Ok(s)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Series::from_rat(Rat::from_integer(n), dim))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let name = self.ident().expect("alphabetic start").to_string();
                self.atom_named(&name, start)
            }
            _ => Err(self.err("expected an atom")),
        }
    }

    fn atom_named(&mut self, name: &str, start: usize) -> Result<Series> {
        let dim = self.ctx.dim;
        if name == "sqrt2" {
            if self.ctx.field == CoeffField::Rational {
                self.pos = start;
                return Err(self.err("sqrt2 is not in the rational coefficient field"));
            }
            return Ok(Series::constant(Coeff::sqrt2(), dim));
        }
        if name == "O" {
            self.expect('(')?;
            let inner_pos = self.pos;
            let m = self.expr()?;
            self.expect(')')?;
            return match m.terms() {
                [(e, c)] if c.is_one() && m.is_exact() => Ok(Series::big_o(e.pad_to(dim))),
                _ => {
                    self.pos = inner_pos;
                    Err(self.err("O(...) takes a monomial with coefficient 1"))
                }
            };
        }
        if let Some(idx) = name.strip_prefix('t').and_then(|d| d.parse::<usize>().ok()) {
            if idx == 0 || idx > dim {
                self.pos = start;
                return Err(self.err(&format!("t{idx} outside ambient dimension {dim}")));
            }
            return Ok(Series::x_pow(ExpVec::unit(dim, idx)));
        }
        match self.ctx.bindings.and_then(|b| b.get(name)) {
            Some(s) => Ok(s.pad_to(dim)),
            None => {
                self.pos = start;
                Err(self.err(&format!("unknown identifier {name:?}")))
            }
        }
    }
}
