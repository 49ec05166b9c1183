//! Surreals in finite Conway normal form `Σ rᵢ·ω^{yᵢ}`.
//!
//! Exponents are themselves [`CnfSurreal`]s and coefficients are nonzero
//! rationals. The representation is canonical, so structural equality is
//! surreal equality on this layer.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gameform::{Context, FormId};
use crate::numeric::Rational;
use crate::ordinal::Ordinal;

/// Terms are kept with strictly decreasing exponents and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CnfSurreal {
    terms: Vec<(CnfSurreal, Rational)>,
}

impl CnfSurreal {
    pub fn zero() -> Self {
        CnfSurreal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        CnfSurreal::from_rational(Rational::one())
    }

    pub fn omega() -> Self {
        CnfSurreal::omega_pow(CnfSurreal::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        CnfSurreal::monomial(CnfSurreal::zero(), r)
    }

    /// `r·ω^exponent`; zero when `r` is zero.
    pub fn monomial(exponent: CnfSurreal, r: Rational) -> Self {
        if r.is_zero() {
            return CnfSurreal::zero();
        }
        CnfSurreal {
            terms: vec![(exponent, r)],
        }
    }

    /// The ω-map on this layer: the single term `1·ω^x`.
    pub fn omega_pow(x: CnfSurreal) -> Self {
        CnfSurreal::monomial(x, Rational::one())
    }

    /// A finite number form lands on the constant term.
    pub fn from_form(ctx: &mut Context, x: FormId) -> Result<Self> {
        Ok(CnfSurreal::from_rational(ctx.value(x)?.to_rational()))
    }

    /// Mirrors an ordinal's Cantor normal form.
    pub fn from_ordinal(alpha: &Ordinal) -> Self {
        CnfSurreal {
            terms: alpha
                .terms()
                .iter()
                .map(|(e, c)| (CnfSurreal::from_ordinal(e), Rational::from_integer(*c)))
                .collect(),
        }
    }

    /// Checks the canonical-form invariants.
    pub fn from_terms(terms: Vec<(CnfSurreal, Rational)>) -> Option<Self> {
        let decreasing = terms.windows(2).all(|w| w[0].0 > w[1].0);
        let nonzero = terms.iter().all(|(_, c)| !c.is_zero());
        (decreasing && nonzero).then_some(CnfSurreal { terms })
    }

    /// Sorts, merges equal exponents and drops vanishing terms.
    pub fn from_unsorted_terms(mut terms: Vec<(CnfSurreal, Rational)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(CnfSurreal, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = &*lc + &c,
                _ => out.push((e, c)),
            }
            if out.last().is_some_and(|(_, c)| c.is_zero()) {
                out.pop();
            }
        }
        CnfSurreal { terms: out }
    }

    pub fn terms(&self) -> &[(CnfSurreal, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn signum(&self) -> Ordering {
        match self.terms.first() {
            None => Ordering::Equal,
            Some((_, c)) => sign(c),
        }
    }

    /// The rational this value equals, if it has no infinite or infinitesimal part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(e, c)] if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum().is_lt() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        CnfSurreal {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                Ordering::Greater => {
                    terms.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((eb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        terms.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        CnfSurreal { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                terms.push((ea.add(eb), ca * cb));
            }
        }
        CnfSurreal::from_unsorted_terms(terms)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return CnfSurreal::zero();
        }
        CnfSurreal {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    /// Leading exponent and coefficient.
    pub fn leader(&self) -> Result<(CnfSurreal, Rational)> {
        self.terms.first().cloned().ok_or(Error::ZeroOperand)
    }

    /// `r⁻¹·ω^{−y}` for a monomial `r·ω^y`.
    pub fn mono_inverse(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [] => Err(Error::ZeroOperand),
            [(e, c)] => Ok(CnfSurreal::monomial(e.neg(), c.recip()?)),
            _ => Err(Error::NotMonomial(self.to_string())),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(CnfSurreal::one(), |acc, _| acc.mul(self))
    }
}

fn sign(c: &Rational) -> Ordering {
    c.cmp(&Rational::zero())
}

/// Leading terms dominate: the first differing term decides the sign of the difference.
impl Ord for CnfSurreal {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut i = 0;
        loop {
            match (self.terms.get(i), other.terms.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some((_, c)), None) => return sign(c),
                (None, Some((_, c))) => return sign(c).reverse(),
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    Ordering::Greater => return sign(ca),
                    Ordering::Less => return sign(cb).reverse(),
                    Ordering::Equal if ca != cb => return ca.cmp(cb),
                    Ordering::Equal => i += 1,
                },
            }
        }
    }
}

impl PartialOrd for CnfSurreal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for CnfSurreal {
    fn from(r: Rational) -> Self {
        CnfSurreal::from_rational(r)
    }
}

impl From<i64> for CnfSurreal {
    fn from(n: i64) -> Self {
        CnfSurreal::from_rational(Rational::from_integer(n))
    }
}

pub fn cnf_cmp(a: &CnfSurreal, b: &CnfSurreal) -> Ordering {
    a.cmp(b)
}

pub fn cnf_add(a: &CnfSurreal, b: &CnfSurreal) -> CnfSurreal {
    a.add(b)
}

pub fn cnf_neg(a: &CnfSurreal) -> CnfSurreal {
    a.neg()
}

pub fn cnf_mul(a: &CnfSurreal, b: &CnfSurreal) -> CnfSurreal {
    a.mul(b)
}

pub fn omega_pow(x: &CnfSurreal) -> CnfSurreal {
    CnfSurreal::omega_pow(x.clone())
}

pub fn leader(x: &CnfSurreal) -> Result<(CnfSurreal, Rational)> {
    x.leader()
}

pub fn cnf_terms(x: &CnfSurreal) -> Vec<(CnfSurreal, Rational)> {
    x.terms.clone()
}

pub fn mono_inverse(x: &CnfSurreal) -> Result<CnfSurreal> {
    x.mono_inverse()
}

fn require_nonnegative(x: &CnfSurreal) -> Result<()> {
    if x.signum().is_lt() {
        Err(Error::NegativeOperand(x.to_string()))
    } else {
        Ok(())
    }
}

/// `a·n < b` for every positive integer `n`. Defined for nonnegative operands.
pub fn inf_less(a: &CnfSurreal, b: &CnfSurreal) -> Result<bool> {
    require_nonnegative(a)?;
    require_nonnegative(b)?;
    Ok(match (a.terms.first(), b.terms.first()) {
        (_, None) => false,
        (None, Some(_)) => true,
        (Some((ea, _)), Some((eb, _))) => ea < eb,
    })
}

/// Each of `|a|`, `|b|` is bounded by an integer multiple of the other.
pub fn commensurate(a: &CnfSurreal, b: &CnfSurreal) -> Result<bool> {
    match (a.terms.first(), b.terms.first()) {
        (Some((ea, _)), Some((eb, _))) => Ok(ea == eb),
        _ => Err(Error::ZeroOperand),
    }
}

impl fmt::Display for CnfSurreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != Rational::one() {
                if mag.is_integer() {
                    write!(f, "{mag}*")?;
                } else {
                    write!(f, "({mag})*")?;
                }
            }
            f.write_str("w")?;
            match e.as_rational() {
                Some(r) if r == Rational::one() => {}
                Some(r) if r.is_integer() => write!(f, "^{r}")?,
                _ => write!(f, "^({e})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CnfSurreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cnf({self})")
    }
}

/// Evaluates CNF text such as `3*w^2 - 2*w^(1/2) + 5 + (7/4)*w^-1`.
///
/// `p/q` written without spaces is one literal. Powers of `w` take any
/// exponent; other bases take natural exponents. Division is only by monomials.
impl FromStr for CnfSurreal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = CnfParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct CnfParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl CnfParser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CnfSurreal> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CnfSurreal> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                let d = self.factor()?;
                acc = acc.mul(&d.mono_inverse()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<CnfSurreal> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let exponent = self.factor()?;
        if base == CnfSurreal::omega() {
            return Ok(CnfSurreal::omega_pow(exponent));
        }
        let n = exponent
            .as_rational()
            .filter(Rational::is_integer)
            .and_then(|r| i64::try_from(r.numer().clone()).ok())
            .filter(|n| n.unsigned_abs() <= 64)
            .ok_or_else(|| Error::Syntax {
                column: at + 1,
                message: "only w takes non-integer exponents".to_string(),
            })?;
        if n >= 0 {
            Ok(base.pow(n as u32))
        } else {
            base.pow(n.unsigned_abs() as u32).mono_inverse()
        }
    }

    fn atom(&mut self) -> Result<CnfSurreal> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                Ok(CnfSurreal::omega())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = |p: &mut Self| {
                    while p.src.get(p.pos).is_some_and(u8::is_ascii_digit) {
                        p.pos += 1;
                    }
                };
                digits(self);
                if self.src.get(self.pos) == Some(&b'/')
                    && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
                {
                    self.pos += 1;
                    digits(self);
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let r: Rational = text.parse().map_err(|e| match e {
                    Error::DivByZero => Error::DivByZero,
                    _ => self.err("invalid number"),
                })?;
                Ok(CnfSurreal::from_rational(r))
            }
            _ => Err(self.err("expected a number, 'w' or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> CnfSurreal {
        s.parse().unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(cnf_cmp(&c("w"), &c("1000")), Ordering::Greater);
        assert_eq!(cnf_cmp(&c("3*w^2 - 2*w^(1/2)"), &c("3*w^2")), Ordering::Less);
        assert_eq!(cnf_cmp(&c("0"), &c("0")), Ordering::Equal);
        assert_eq!(cnf_cmp(&c("w^-1"), &c("1/1000")), Ordering::Less);
        assert_eq!(cnf_cmp(&c("w^-1"), &c("0")), Ordering::Greater);
        assert_eq!(cnf_cmp(&c("w - 1000"), &c("w^(1/2)")), Ordering::Greater);
    }

    #[test]
    fn addition_examples() {
        assert_eq!(cnf_add(&c("3*w^2 + 5"), &c("-3*w^2 + w")), c("w + 5"));
        let a = c("2*w^(w) - w^-1");
        assert_eq!(cnf_add(&a, &CnfSurreal::zero()), a);
        assert_eq!(cnf_neg(&c("3*w^2 - 2*w^(1/2)")), c("-3*w^2 + 2*w^(1/2)"));
        assert!(cnf_add(&a, &cnf_neg(&a)).is_zero());
    }

    #[test]
    fn multiplication_examples() {
        let a = c("w^(1/2)");
        let b = c("w^(w)");
        assert_eq!(cnf_mul(&a, &b), omega_pow(&cnf_add(&c("1/2"), &c("w"))));
        assert_eq!(cnf_mul(&c("2*w + 3"), &CnfSurreal::one()), c("2*w + 3"));
        assert_eq!(cnf_mul(&c("2*w + 3"), &c("w - 1")), c("2*w^2 + w - 3"));
        assert!(cnf_mul(&a, &CnfSurreal::zero()).is_zero());
    }

    #[test]
    fn omega_pow_examples() {
        assert_eq!(omega_pow(&CnfSurreal::zero()), CnfSurreal::one());
        assert_eq!(omega_pow(&CnfSurreal::one()), CnfSurreal::omega());
        let eps = omega_pow(&c("-1"));
        assert_eq!(eps.to_string(), "w^-1");
        assert!(eps > CnfSurreal::zero());
        assert_eq!(cnf_mul(&eps, &CnfSurreal::omega()), CnfSurreal::one());
    }

    #[test]
    fn inf_less_examples() {
        assert!(inf_less(&c("w^(1/2)"), &c("w")).unwrap());
        assert!(inf_less(&c("1"), &c("w")).unwrap());
        assert!(!inf_less(&c("3*w"), &c("5*w")).unwrap());
        assert!(inf_less(&c("0"), &c("w^-5")).unwrap());
        assert!(!inf_less(&c("0"), &c("0")).unwrap());
        assert!(matches!(inf_less(&c("-1"), &c("w")), Err(Error::NegativeOperand(_))));
    }

    #[test]
    fn commensurate_examples() {
        assert!(commensurate(&c("3*w"), &c("5*w")).unwrap());
        assert!(c("3*w").scale(&q("2")) > c("5*w"));
        assert!(c("5*w").scale(&q("2")) > c("3*w"));
        assert!(!commensurate(&c("1"), &c("w")).unwrap());
        let a = c("-7*w^(w) + 1");
        assert!(commensurate(&a, &a).unwrap());
        assert!(commensurate(&a, &c("w^(w)")).unwrap());
        assert_eq!(commensurate(&c("0"), &a), Err(Error::ZeroOperand));
    }

    #[test]
    fn leader_examples() {
        let x = c("3*w^2 - 2*w^(1/2) + 5");
        assert_eq!(leader(&x).unwrap(), (c("2"), q("3")));
        assert_eq!(leader(&c("7/4")).unwrap(), (CnfSurreal::zero(), q("7/4")));
        assert_eq!(leader(&CnfSurreal::zero()), Err(Error::ZeroOperand));
        let a = c("w^3 - w");
        let b = c("4*w^2 + 1");
        assert_eq!(leader(&cnf_add(&a, &b)).unwrap().0, leader(&a).unwrap().0);
    }

    #[test]
    fn terms_examples() {
        assert!(cnf_terms(&CnfSurreal::zero()).is_empty());
        let x = c("3*w^2 + w^(1/2)*(-2) + 5");
        assert_eq!(
            cnf_terms(&x),
            vec![(c("2"), q("3")), (c("1/2"), q("-2")), (c("0"), q("5"))]
        );
        assert_eq!(CnfSurreal::from_terms(cnf_terms(&x)), Some(x));
        let tower = omega_pow(&CnfSurreal::omega());
        assert_eq!(cnf_terms(&tower), vec![(CnfSurreal::omega(), q("1"))]);
        assert_eq!(CnfSurreal::from_terms(vec![(c("0"), q("1")), (c("1"), q("1"))]), None);
        assert_eq!(CnfSurreal::from_terms(vec![(c("1"), q("0"))]), None);
    }

    #[test]
    fn mono_inverse_examples() {
        assert_eq!(mono_inverse(&CnfSurreal::omega()).unwrap(), c("w^-1"));
        assert_eq!(mono_inverse(&c("4")).unwrap(), c("1/4"));
        assert!(matches!(mono_inverse(&c("3*w^2 + 1")), Err(Error::NotMonomial(_))));
        assert_eq!(mono_inverse(&CnfSurreal::zero()), Err(Error::ZeroOperand));
        let m = c("(2/3)*w^(w - 1/2)");
        assert_eq!(cnf_mul(&m, &mono_inverse(&m).unwrap()), CnfSurreal::one());
    }

    #[test]
    fn text_format() {
        for s in [
            "0",
            "3*w^2 - 2*w^(1/2) + 5 + (7/4)*w^-1",
            "w^(w)",
            "-w + 1/3",
            "w^(w^(w) + 1) - (1/2)*w^(-1/2)",
        ] {
            assert_eq!(c(s).to_string(), s);
        }
        assert_eq!(c("w*3 + 5 + w^2*0").to_string(), "3*w + 5");
        assert_eq!(c("(w + 1)^2").to_string(), "w^2 + 2*w + 1");
        assert!(matches!("3*w^".parse::<CnfSurreal>(), Err(Error::Syntax { column: 5, .. })));
        assert!(matches!("2^(1/2)".parse::<CnfSurreal>(), Err(Error::Syntax { .. })));
    }

    #[test]
    fn from_ordinal_mirrors_cnf() {
        let a: Ordinal = "w^(w*1)*2 + w*3 + 4".parse().unwrap();
        assert_eq!(CnfSurreal::from_ordinal(&a), c("2*w^(w) + 3*w + 4"));
        assert_eq!(CnfSurreal::from_ordinal(&Ordinal::zero()), CnfSurreal::zero());
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=9).prop_map(|(p, q)| Rational::new(p, q))
    }

    fn cnf(depth: u32) -> BoxedStrategy<CnfSurreal> {
        if depth == 0 {
            return rational().prop_map(CnfSurreal::from_rational).boxed();
        }
        prop::collection::vec((cnf(depth - 1), rational()), 0..=4)
            .prop_map(CnfSurreal::from_unsorted_terms)
            .boxed()
    }

    fn nonneg(depth: u32) -> BoxedStrategy<CnfSurreal> {
        cnf(depth).prop_map(|x| x.abs()).boxed()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ordered_ring_laws(a in cnf(2), b in cnf(2), x in cnf(2)) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).add(&x), a.add(&b.add(&x)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&x), a.mul(&b.mul(&x)));
            prop_assert_eq!(a.mul(&b.add(&x)), a.mul(&b).add(&a.mul(&x)));
            prop_assert_eq!(a.add(&CnfSurreal::zero()), a.clone());
            prop_assert_eq!(a.mul(&CnfSurreal::one()), a.clone());
            prop_assert!(a.add(&a.neg()).is_zero());
            prop_assert_eq!(a.neg().neg(), a.clone());
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            if a < b {
                prop_assert!(a.add(&x) < b.add(&x));
            }
            if a > CnfSurreal::zero() && b > CnfSurreal::zero() {
                prop_assert!(a.mul(&b) > CnfSurreal::zero());
            }
            if a <= b && b <= x {
                prop_assert!(a <= x);
            }
        }

        #[test]
        fn terms_round_trip(a in cnf(2)) {
            let ts = cnf_terms(&a);
            prop_assert!(ts.windows(2).all(|w| w[0].0 > w[1].0));
            prop_assert_eq!(CnfSurreal::from_terms(ts), Some(a.clone()));
            prop_assert_eq!(a.to_string().parse::<CnfSurreal>().unwrap(), a);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn omega_pow_homomorphism(a in cnf(2), b in cnf(2)) {
            prop_assert_eq!(
                cnf_mul(&omega_pow(&a), &omega_pow(&b)),
                omega_pow(&cnf_add(&a, &b))
            );
            if a < b {
                prop_assert!(inf_less(&omega_pow(&a), &omega_pow(&b)).unwrap());
            }
        }

        #[test]
        fn inf_less_matches_quantified_definition(a in nonneg(2), b in nonneg(2)) {
            let quantified = (1..=1000i64).all(|n| a.scale(&Rational::from_integer(n)) < b);
            prop_assert_eq!(inf_less(&a, &b).unwrap(), quantified);
        }

        #[test]
        fn leader_residual_is_infinitely_smaller(x in cnf(2)) {
            prop_assume!(!x.is_zero());
            let (y, r) = leader(&x).unwrap();
            let w_y = omega_pow(&y);
            let residual = x.sub(&w_y.scale(&r)).abs();
            prop_assert!(inf_less(&residual, &w_y).unwrap());
            prop_assert!(commensurate(&x, &w_y).unwrap());
        }
    }
}
