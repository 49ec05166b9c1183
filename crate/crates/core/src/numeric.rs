//! Exact scalars: dyadic rationals, general rationals, and the simplest-dyadic
//! selector used to pick canonical representatives.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A number of the form `numerator / 2^exponent`.
///
/// Always normalized: either `exponent == 0` or `numerator` is odd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u64,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u64) -> Self {
        let mut d = Dyadic {
            numerator: numerator.into(),
            exponent,
        };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic::new(0, 0)
    }

    pub fn one() -> Self {
        Dyadic::new(1, 0)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n, 0)
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let twos = self.numerator.trailing_zeros().unwrap_or(0).min(self.exponent);
        if twos > 0 {
            self.numerator >>= twos;
            self.exponent -= twos;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    pub fn signum(&self) -> Ordering {
        self.numerator.sign_cmp()
    }

    /// Rounds toward negative infinity.
    pub fn floor(&self) -> BigInt {
        self.numerator.div_floor(&(BigInt::one() << self.exponent))
    }

    /// Rounds toward zero.
    pub fn trunc(&self) -> BigInt {
        let den = BigInt::one() << self.exponent;
        &self.numerator / den
    }

    /// Length of the sign expansion, i.e. the birthday of the canonical form.
    pub fn birthday(&self) -> BigInt {
        if self.is_integer() {
            self.numerator.abs()
        } else {
            self.trunc().abs() + 1 + BigInt::from(self.exponent)
        }
    }

    /// Halves the value exactly.
    pub fn half(&self) -> Self {
        Dyadic::new(self.numerator.clone(), self.exponent + 1)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }

    /// Returns the dyadic with the same value, if the rational is dyadic.
    pub fn from_rational(q: &Rational) -> Option<Self> {
        let den = q.denom();
        let bits = den.trailing_zeros().unwrap_or(0);
        if den >> bits != BigInt::one() {
            return None;
        }
        Some(Dyadic::new(q.numer().clone(), bits))
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u64) {
        let e = self.exponent.max(other.exponent);
        (
            &self.numerator << (e - self.exponent),
            &other.numerator << (e - other.exponent),
            e,
        )
    }

    /// Exact quotient; the result is rational in general.
    pub fn checked_div(&self, other: &Self) -> Result<Rational> {
        self.to_rational().checked_div(&other.to_rational())
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.numerator * &rhs.numerator, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -&self.numerator,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($ty:ident: $($tr:ident $method:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Dyadic: Add add, Sub sub, Mul mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_integer(n)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigInt::one() << self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let q: Rational = s.parse()?;
        Dyadic::from_rational(&q).ok_or_else(|| Error::NotDyadic(s.trim().to_string()))
    }
}

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics if `denominator` is zero.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// The exact square root, when it is rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

forward_owned!(Rational: Add add, Sub sub, Mul mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<&Dyadic> for Rational {
    fn from(d: &Dyadic) -> Self {
        d.to_rational()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |message: &str| Error::Syntax {
            column: 1,
            message: format!("{message}: {s:?}"),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad("invalid numerator"))?;
        let den: BigInt = den.parse().map_err(|_| bad("invalid denominator"))?;
        if den.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(Rational::new(num, den))
    }
}

/// An open interval whose missing bounds stand for minus / plus infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedInterval {
    lower: Option<Rational>,
    upper: Option<Rational>,
}

impl BoundedInterval {
    pub fn new(lower: Option<Rational>, upper: Option<Rational>) -> Result<Self> {
        if let (Some(l), Some(u)) = (&lower, &upper) {
            if l >= u {
                return Err(Error::EmptyInterval {
                    lower: l.to_string(),
                    upper: u.to_string(),
                });
            }
        }
        Ok(BoundedInterval { lower, upper })
    }

    pub fn unbounded() -> Self {
        BoundedInterval {
            lower: None,
            upper: None,
        }
    }

    pub fn lower(&self) -> Option<&Rational> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&Rational> {
        self.upper.as_ref()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|l| l < q) && self.upper.as_ref().is_none_or(|u| q < u)
    }

    /// Width of the interval, `None` when unbounded.
    pub fn width(&self) -> Option<Rational> {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => Some(u - l),
            _ => None,
        }
    }

    fn negated(&self) -> Self {
        BoundedInterval {
            lower: self.upper.as_ref().map(|u| -u),
            upper: self.lower.as_ref().map(|l| -l),
        }
    }
}

impl fmt::Display for BoundedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lower {
            Some(l) => write!(f, "({l}, ")?,
            None => write!(f, "(-inf, ")?,
        }
        match &self.upper {
            Some(u) => write!(f, "{u})"),
            None => write!(f, "+inf)"),
        }
    }
}

/// The dyadic with the shortest sign expansion strictly inside `interval`.
///
/// An integer inside the interval wins (smallest magnitude first); otherwise
/// the unit interval bracketing it is bisected until a midpoint falls inside.
pub fn simplest_dyadic(interval: &BoundedInterval) -> Result<Dyadic> {
    if let (Some(l), Some(u)) = (&interval.lower, &interval.upper) {
        if l >= u {
            return Err(Error::EmptyInterval {
                lower: l.to_string(),
                upper: u.to_string(),
            });
        }
    }
    let zero = Rational::zero();
    if interval.contains(&zero) {
        return Ok(Dyadic::zero());
    }
    match &interval.lower {
        Some(l) if *l >= zero => Ok(simplest_positive(l, interval.upper.as_ref())),
        _ => {
            // The interval lies at or below zero.
            let flipped = interval.negated();
            let l = flipped.lower.as_ref().expect("bounded below after negation");
            Ok(-simplest_positive(l, flipped.upper.as_ref()))
        }
    }
}

fn simplest_positive(lower: &Rational, upper: Option<&Rational>) -> Dyadic {
    let base = lower.floor();
    let next = Rational::from_integer(&base + 1);
    if upper.is_none_or(|u| next < *u) {
        return Dyadic::from_integer(base + 1);
    }
    let upper = upper.expect("checked above");
    let mut lo = Dyadic::from_integer(base.clone());
    let mut hi = Dyadic::from_integer(base + 1);
    loop {
        let mid = (&lo + &hi).half();
        let m = mid.to_rational();
        if *lower < m && m < *upper {
            return mid;
        }
        if m <= *lower {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// A scalar operand that is either dyadic or a general rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Dyadic(Dyadic),
    Rational(Rational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn to_rational(&self) -> Rational {
        match self {
            Scalar::Dyadic(d) => d.to_rational(),
            Scalar::Rational(q) => q.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Dyadic(d) => d.fmt(f),
            Scalar::Rational(q) => q.fmt(f),
        }
    }
}

/// Exact arithmetic on mixed scalars. Dyadic inputs stay dyadic under
/// `+`, `-` and `*`; everything else is computed over the rationals.
pub fn dyadic_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    if let (Scalar::Dyadic(x), Scalar::Dyadic(y)) = (a, b) {
        match op {
            ArithOp::Add => return Ok(Scalar::Dyadic(x + y)),
            ArithOp::Sub => return Ok(Scalar::Dyadic(x - y)),
            ArithOp::Mul => return Ok(Scalar::Dyadic(x * y)),
            ArithOp::Div => {}
        }
    }
    let (x, y) = (a.to_rational(), b.to_rational());
    Ok(Scalar::Rational(match op {
        ArithOp::Add => &x + &y,
        ArithOp::Sub => &x - &y,
        ArithOp::Mul => &x * &y,
        ArithOp::Div => x.checked_div(&y)?,
    }))
}
