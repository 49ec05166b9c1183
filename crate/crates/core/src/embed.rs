//! Embeddings of integers, dyadics, rationals and ordinals into surreal forms.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value as Json};

use crate::cnf::CnfSurreal;
use crate::gameform::{Context, FormId};
use crate::numeric::{simplest_dyadic, BoundedInterval, Dyadic, Rational};
use crate::ordinal::Ordinal;

/// `s_Z`: `0 ↦ {|}`, `i ↦ {s_Z(i-1)|}` for positive and `{|s_Z(i+1)}` for negative `i`.
pub fn s_z(ctx: &mut Context, i: i64) -> FormId {
    ctx.dyadic(&Dyadic::from_integer(i))
}

/// `s_D`: integers via [`s_z`], `(2j+1)/2^(p+1) ↦ {s_D(j/2^p) | s_D((j+1)/2^p)}`.
pub fn s_d(ctx: &mut Context, d: &Dyadic) -> FormId {
    ctx.dyadic(d)
}

/// A rational materialized as the dyadic cut
/// `{ ⌈q·2ⁿ − 1⌉/2ⁿ | ⌊q·2ⁿ + 1⌋/2ⁿ }` for `n = 0..=depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutNumber {
    pub target: Rational,
    pub depth: u32,
    /// Per-level left endpoint, index `n`.
    pub left_values: Vec<Dyadic>,
    /// Per-level right endpoint, index `n`.
    pub right_values: Vec<Dyadic>,
    pub left_options: Vec<FormId>,
    pub right_options: Vec<FormId>,
}

impl CutNumber {
    /// `(max left, min right)`.
    pub fn bracket(&self) -> BoundedInterval {
        let lo = self.left_values.iter().max().map(Dyadic::to_rational);
        let hi = self.right_values.iter().min().map(Dyadic::to_rational);
        BoundedInterval::new(lo, hi).expect("cut brackets are nonempty")
    }

    /// Bracket at a given level only.
    pub fn level(&self, n: usize) -> (Dyadic, Dyadic) {
        (self.left_values[n].clone(), self.right_values[n].clone())
    }

    pub fn simplest(&self) -> Dyadic {
        simplest_dyadic(&self.bracket()).expect("nonempty bracket")
    }

    /// The finite form `{left options | right options}` of this approximation.
    pub fn form(&self, ctx: &mut Context) -> FormId {
        ctx.form(self.left_options.iter().copied(), self.right_options.iter().copied())
    }

    pub fn to_json(&self) -> Json {
        let bracket = self.bracket();
        json!({
            "target": self.target.to_string(),
            "depth": self.depth,
            "left": dedup_sorted(&self.left_values),
            "right": dedup_sorted(&self.right_values),
            "interval": [
                bracket.lower().map(ToString::to_string),
                bracket.upper().map(ToString::to_string),
            ],
        })
    }
}

fn dedup_sorted(values: &[Dyadic]) -> Vec<String> {
    let mut v = values.to_vec();
    v.sort();
    v.dedup();
    v.iter().map(ToString::to_string).collect()
}

/// The raw cut for any rational, dyadic or not.
pub fn dyadic_cut(ctx: &mut Context, q: &Rational, depth: u32) -> CutNumber {
    let mut left_values = Vec::with_capacity(depth as usize + 1);
    let mut right_values = Vec::with_capacity(depth as usize + 1);
    for n in 0..=depth {
        let scale = Rational::from_integer(BigInt::one() << n);
        let scaled = q * &scale;
        let lo = (&scaled - &Rational::one()).ceil();
        let hi = (&scaled + &Rational::one()).floor();
        left_values.push(Dyadic::new(lo, n as u64));
        right_values.push(Dyadic::new(hi, n as u64));
    }
    let mut left_options: Vec<FormId> = left_values.iter().map(|d| ctx.dyadic(d)).collect();
    let mut right_options: Vec<FormId> = right_values.iter().map(|d| ctx.dyadic(d)).collect();
    left_options.sort();
    left_options.dedup();
    right_options.sort();
    right_options.dedup();
    CutNumber {
        target: q.clone(),
        depth,
        left_values,
        right_values,
        left_options,
        right_options,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealImage {
    /// The target was dyadic: exactly `s_D(q)`.
    Exact(FormId),
    Cut(CutNumber),
}

/// `s_R` on exact rationals. Dyadic arguments map to `s_D` exactly; others
/// are returned as a cut materialized to `depth`.
pub fn s_r(ctx: &mut Context, q: &Rational, depth: u32) -> RealImage {
    match Dyadic::from_rational(q) {
        Some(d) => RealImage::Exact(ctx.dyadic(&d)),
        None => RealImage::Cut(dyadic_cut(ctx, q, depth)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdinalImage {
    /// Finite ordinals are the integer forms `s_Z(n)`.
    Form(FormId),
    /// Infinite ordinals mirror their Cantor normal form on the CNF layer.
    Cnf(CnfSurreal),
}

pub fn s_on(ctx: &mut Context, alpha: &Ordinal) -> OrdinalImage {
    match alpha.as_natural() {
        Some(n) => OrdinalImage::Form(ctx.dyadic(&Dyadic::from_integer(n))),
        None => OrdinalImage::Cnf(CnfSurreal::from_ordinal(alpha)),
    }
}

/// True when no form reachable from `x` has a right option.
pub fn has_empty_right_sets(ctx: &Context, x: FormId) -> bool {
    ctx.right(x).is_empty() && ctx.left(x).iter().all(|&l| has_empty_right_sets(ctx, l))
}
