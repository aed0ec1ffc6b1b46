//! Text grammar for polynomials and algebra elements.
//!
//! ```text
//! poly   := term (("+"|"-") term)* ;
//! term   := [coeff ["*"]] factor (factor)* ;   juxtaposition is left-associative
//! factor := var ["^" nat] | "(" poly ")" ["^" nat] ;
//! var    := "x" nat ;  coeff := ["-"] nat ["/" nat] ;
//! ```
//!
//! `a b^s` is `((a b) b) ... b` with `s` copies of `b`. A leading minus on the
//! first term and the literal `0` are also accepted. Elements use the same
//! coefficient syntax with basis vectors `e<k>` (or `e_<k>`).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};
use crate::term::{FreePolynomial, LeftNormedWord, Monomial, Poly, Term, VarIndex};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Var(u32),
    Basis(u32),
    Nat(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        let start = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        (start, j)
    };
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'x' | b'e' => {
                let mut j = i + 1;
                if c == b'e' && j < bytes.len() && bytes[j] == b'_' {
                    j += 1;
                }
                let (s, e) = digits(j);
                if s == e {
                    return Err(Error::parse(i, format!("expected index after '{}'", c as char)));
                }
                let k: u32 = text[s..e]
                    .parse()
                    .map_err(|_| Error::parse(s, "index too large"))?;
                if k == 0 {
                    return Err(Error::ZeroVariable);
                }
                out.push((i, if c == b'x' { Tok::Var(k) } else { Tok::Basis(k) }));
                i = e;
            }
            b'0'..=b'9' => {
                let (s, e) = digits(i);
                let n: BigInt = text[s..e].parse().expect("digits");
                out.push((i, Tok::Nat(n)));
                i = e;
            }
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            _ => {
                return Err(Error::parse(i, format!("unexpected character '{}'", c as char)));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    text: &'a str,
    domain: Domain,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.text.len())
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect_nat(&mut self, what: &str) -> Result<BigInt> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Nat(n)) => Ok(n),
            _ => Err(Error::parse(at, format!("expected {what}"))),
        }
    }

    /// `["-"] nat ["/" nat]` when present.
    fn coeff(&mut self) -> Result<Option<BigRational>> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = match self.peek() {
            Some(Tok::Nat(_)) => self.expect_nat("numerator")?,
            _ if neg => return Ok(Some(-BigRational::one())),
            _ => return Ok(None),
        };
        let den = if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let at = self.offset();
            let d = self.expect_nat("denominator")?;
            if d.is_zero() {
                return Err(Error::parse(at, "zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        let q = BigRational::new(num, den);
        Ok(Some(if neg { -q } else { q }))
    }

    fn exponent(&mut self) -> Result<usize> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        let at = self.offset();
        let n = self.expect_nat("exponent")?;
        if n.is_zero() {
            return Err(Error::ZeroExponent);
        }
        n.try_into().map_err(|_| Error::parse(at, "exponent too large"))
    }

    fn poly(&mut self) -> Result<FreePolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FreePolynomial> {
        let c = self.coeff()?;
        if c.is_some() && self.peek() == Some(&Tok::Star) {
            self.pos += 1;
        }
        let mut factors: Vec<FreePolynomial> = Vec::new();
        while let Some((f, s)) = self.factor()? {
            for _ in 0..s {
                factors.push(f.clone());
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                if !matches!(self.peek(), Some(Tok::Var(_) | Tok::LParen)) {
                    return Err(Error::parse(self.offset(), "expected a factor after '*'"));
                }
            }
        }
        let mut it = factors.into_iter();
        let mut acc = it
            .next()
            .ok_or_else(|| Error::parse(self.offset(), "expected a factor"))?;
        for f in it {
            acc = acc.free_mul(&f)?;
        }
        match c {
            Some(q) => acc.scale(&self.domain.from_rational(&q)?),
            None => Ok(acc),
        }
    }

    fn factor(&mut self) -> Result<Option<(FreePolynomial, usize)>> {
        let base = match self.peek() {
            Some(Tok::Var(k)) => {
                let k = *k;
                self.pos += 1;
                FreePolynomial::var(self.domain, k)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.poly()?;
                let at = self.offset();
                if self.bump() != Some(Tok::RParen) {
                    return Err(Error::parse(at, "expected ')'"));
                }
                inner
            }
            _ => return Ok(None),
        };
        let s = self.exponent()?;
        Ok(Some((base, s)))
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return Err(Error::parse(self.offset(), "unexpected trailing input"));
        }
        Ok(())
    }
}

/// Parses a polynomial with rational coefficients.
pub fn parse(text: &str) -> Result<FreePolynomial> {
    parse_in(text, Domain::Rational)
}

/// Parses a polynomial, mapping coefficients into `domain`.
pub fn parse_in(text: &str, domain: Domain) -> Result<FreePolynomial> {
    if text.trim() == "0" {
        return Ok(FreePolynomial::zero(domain));
    }
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        text,
        domain,
    };
    let out = p.poly()?;
    p.finish()?;
    Ok(out)
}

/// Parses `c*e<k>` terms joined by `+`/`-` into `(k, coefficient)` pairs.
/// Repeated basis vectors are summed.
pub fn parse_element_terms(text: &str) -> Result<Vec<(usize, BigRational)>> {
    if text.trim() == "0" {
        return Ok(Vec::new());
    }
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        text,
        domain: Domain::Rational,
    };
    let mut out = Vec::new();
    let mut sign = BigRational::one();
    loop {
        let c = p.coeff()?;
        if c.is_some() && p.peek() == Some(&Tok::Star) {
            p.pos += 1;
        }
        let at = p.offset();
        let k = match p.bump() {
            Some(Tok::Basis(k)) => k as usize,
            _ => return Err(Error::parse(at, "expected basis vector e<k>")),
        };
        out.push((k, &sign * c.unwrap_or_else(BigRational::one)));
        match p.peek() {
            Some(Tok::Plus) => sign = BigRational::one(),
            Some(Tok::Minus) => sign = -BigRational::one(),
            None => break,
            _ => return Err(Error::parse(p.offset(), "expected '+' or '-'")),
        }
        p.pos += 1;
    }
    Ok(out)
}

/// Parses a `x<k>=<element>` binding; returns the variable and the element text.
pub fn split_binding(text: &str) -> Result<(VarIndex, &str)> {
    let (lhs, rhs) = text
        .split_once('=')
        .ok_or_else(|| Error::parse(0, "expected x<k>=<element>"))?;
    let lhs = lhs.trim();
    let k: u32 = lhs
        .strip_prefix('x')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(0, format!("bad variable '{lhs}'")))?;
    Ok((VarIndex::new(k)?, rhs))
}

fn write_runs<T: PartialEq>(
    f: &mut fmt::Formatter<'_>,
    items: &[T],
    mut write_one: impl FnMut(&mut fmt::Formatter<'_>, &T) -> fmt::Result,
) -> fmt::Result {
    let mut i = 0;
    while i < items.len() {
        let mut j = i + 1;
        while j < items.len() && items[j] == items[i] {
            j += 1;
        }
        if i > 0 {
            write!(f, " ")?;
        }
        write_one(f, &items[i])?;
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spine = self.spine();
        write_runs(f, &spine, |f, t| match t {
            Term::Leaf(v) => write!(f, "{v}"),
            node => write!(f, "({node})"),
        })
    }
}

impl fmt::Display for LeftNormedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_runs(f, self.letters(), |f, v| write!(f, "{v}"))
    }
}

impl<M: Monomial> fmt::Display for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs} ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Writes `c*e<k>` terms in increasing index order; `0` when empty.
pub(crate) fn format_element<'s>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, &'s Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if !abs.is_one() {
            write!(f, "{abs}*")?;
        }
        write!(f, "e{k}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
