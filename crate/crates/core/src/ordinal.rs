//! Ordinals below epsilon-zero in Cantor normal form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `Σ ω^exponent · coefficient`, exponents strictly decreasing, coefficients positive.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn natural(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::natural(1), 1)
    }

    /// `ω^exponent · coefficient`; a zero coefficient gives 0.
    pub fn omega_pow(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![(exponent, coefficient)],
        }
    }

    /// Builds an ordinal from CNF terms, checking the decreasing-exponent invariant.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Option<Self> {
        let decreasing = terms.windows(2).all(|w| w[0].0 > w[1].0);
        let positive = terms.iter().all(|(_, c)| *c > 0);
        (decreasing && positive).then_some(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_natural().is_some()
    }

    pub fn as_natural(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Standard, non-commutative ordinal addition.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.leading_exponent() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> =
            self.terms.iter().take_while(|(e, _)| e > lead).cloned().collect();
        let mut rest = other.terms.iter().cloned();
        let (e, mut c) = rest.next().expect("nonzero");
        if let Some((_, same)) = self.terms.iter().find(|(x, _)| x == lead) {
            c += same;
        }
        terms.push((e, c));
        terms.extend(rest);
        Ordinal { terms }
    }

    /// Hessenberg natural sum: merge the normal forms, adding coefficients.
    pub fn natural_sum(&self, other: &Ordinal) -> Ordinal {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    Ordering::Greater => {
                        terms.push((ea.clone(), *ca));
                        a.next();
                    }
                    Ordering::Less => {
                        terms.push((eb.clone(), *cb));
                        b.next();
                    }
                    Ordering::Equal => {
                        terms.push((ea.clone(), ca + cb));
                        a.next();
                        b.next();
                    }
                },
                (Some(t), None) | (None, Some(t)) => {
                    terms.push((*t).clone());
                    if a.peek().is_some() {
                        a.next();
                    } else {
                        b.next();
                    }
                }
                (None, None) => break,
            }
        }
        Ordinal { terms }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(&other.terms) {
            match ea.cmp(eb).then(ca.cmp(cb)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::natural(n)
    }
}

pub fn ord_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

pub fn ord_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.add(b)
}

pub fn ord_nat_sum(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.natural_sum(b)
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e.as_natural() {
                Some(0) => write!(f, "{c}")?,
                Some(1) => write!(f, "w*{c}")?,
                Some(n) => write!(f, "w^{n}*{c}")?,
                None => write!(f, "w^({e})*{c}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

/// Parses `w^E*c + …`. Terms are combined with ordinary ordinal addition, so
/// `1 + w` reads as `w`.
impl FromStr for Ordinal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = OrdParser { src: s.as_bytes(), pos: 0 };
        let o = p.sum()?;
        p.ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(o)
    }
}

struct OrdParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl OrdParser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.err("natural number out of range"))
    }

    fn sum(&mut self) -> Result<Ordinal> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal> {
        if self.eat(b'w') {
            let exponent = if self.eat(b'^') {
                if self.eat(b'(') {
                    let e = self.sum()?;
                    if !self.eat(b')') {
                        return Err(self.err("expected ')'"));
                    }
                    e
                } else if self.eat(b'w') {
                    Ordinal::omega()
                } else {
                    Ordinal::natural(self.nat()?)
                }
            } else {
                Ordinal::natural(1)
            };
            let coefficient = if self.eat(b'*') { self.nat()? } else { 1 };
            Ok(Ordinal::omega_pow(exponent, coefficient))
        } else {
            Ok(Ordinal::natural(self.nat()?))
        }
    }
}
