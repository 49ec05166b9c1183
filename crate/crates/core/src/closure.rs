//! Reciprocals and square roots as option-generating closures.
//!
//! Both operations define a number through options that are computed from
//! earlier options of the same number. Each round adds the options that the
//! current ones generate; option values are tracked as exact rationals. A
//! round that adds nothing is a fixpoint and yields an exact finite form,
//! otherwise the result is a certified bracket.

use std::collections::HashSet;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::gameform::{Context, FormId};
use crate::numeric::{simplest_dyadic, BoundedInterval, Dyadic, Rational};

pub const MAX_INV_STEPS: usize = 64;
pub const MAX_SQRT_STEPS: usize = 16;
/// Iteration stops, unfinished, once either side holds this many options.
pub const MAX_OPTIONS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// The exact rational the bracket closes in on.
    Exact(Rational),
    /// An irrational square root, recorded by its radicand.
    SquareRootOf(Rational),
}

impl Target {
    /// Whether `q` is strictly below the target.
    pub fn above(&self, q: &Rational) -> bool {
        match self {
            Target::Exact(t) => q < t,
            Target::SquareRootOf(x) => q.is_negative() || &(q * q) < x,
        }
    }

    /// Whether `q` is strictly above the target.
    pub fn below(&self, q: &Rational) -> bool {
        match self {
            Target::Exact(t) => q > t,
            Target::SquareRootOf(x) => !q.is_negative() && &(q * q) > x,
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Exact(t) => write!(f, "{t}"),
            Target::SquareRootOf(x) => write!(f, "sqrt({x})"),
        }
    }
}

/// Option values generated so far, in generation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutApprox {
    pub left_values: Vec<Rational>,
    pub right_values: Vec<Rational>,
    pub target: Target,
    /// Rounds actually run.
    pub steps: usize,
    /// The last round generated nothing new.
    pub fixpoint: bool,
}

impl CutApprox {
    pub fn interval(&self) -> BoundedInterval {
        cut_interval(self)
    }

    pub fn extract(&self) -> Dyadic {
        cut_extract(self)
    }

    /// The finite form `{L | R}` over all option values, when every value is dyadic.
    pub fn form(&self, ctx: &mut Context) -> Option<FormId> {
        let side = |ctx: &mut Context, vals: &[Rational]| -> Option<Vec<FormId>> {
            vals.iter()
                .map(|q| Dyadic::from_rational(q).map(|d| ctx.dyadic(&d)))
                .collect()
        };
        let l = side(ctx, &self.left_values)?;
        let r = side(ctx, &self.right_values)?;
        Some(ctx.form(l, r))
    }

    /// The form when the closure terminated, which is then exact.
    pub fn exact_form(&self, ctx: &mut Context) -> Option<FormId> {
        if self.fixpoint {
            self.form(ctx)
        } else {
            None
        }
    }

    /// Every left value is below the target and every right value above it.
    pub fn certified(&self) -> bool {
        self.left_values.iter().all(|l| self.target.above(l))
            && self.right_values.iter().all(|r| self.target.below(r))
    }

    /// The same bracket multiplied by `k`. A square-root target only scales by `k ≥ 0`.
    pub fn scaled(&self, k: &Rational) -> Option<CutApprox> {
        let mul = |v: &[Rational]| v.iter().map(|q| q * k).collect::<Vec<_>>();
        let (mut left, mut right) = (mul(&self.left_values), mul(&self.right_values));
        if k.is_negative() {
            std::mem::swap(&mut left, &mut right);
        }
        let target = match &self.target {
            Target::Exact(t) => Target::Exact(t * k),
            Target::SquareRootOf(_) if k.is_negative() => return None,
            Target::SquareRootOf(x) => Target::SquareRootOf(x * &(k * k)),
        };
        Some(CutApprox {
            left_values: left,
            right_values: right,
            target,
            steps: self.steps,
            fixpoint: self.fixpoint && !k.is_zero(),
        })
    }

    pub fn to_json(&self) -> Json {
        let iv = self.interval();
        json!({
            "left": self.left_values.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "right": self.right_values.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "interval": [iv.lower().map(ToString::to_string), iv.upper().map(ToString::to_string)],
            "target": self.target.to_string(),
            "steps": self.steps,
            "exact": self.fixpoint,
        })
    }
}

/// `(max left, min right)`, unbounded on an empty side.
pub fn cut_interval(c: &CutApprox) -> BoundedInterval {
    let lo = c.left_values.iter().max().cloned();
    let hi = c.right_values.iter().min().cloned();
    BoundedInterval::new(lo, hi).expect("certified brackets are nonempty")
}

pub fn cut_extract(c: &CutApprox) -> Dyadic {
    simplest_dyadic(&cut_interval(c)).expect("nonempty bracket")
}

fn positive_value(ctx: &mut Context, x: FormId) -> Result<Rational> {
    let v = ctx.value(x)?.to_rational();
    if !v.is_positive() {
        return Err(Error::NotPositive(v.to_string()));
    }
    Ok(v)
}

fn option_values(ctx: &mut Context, opts: &[FormId]) -> Vec<Rational> {
    opts.iter()
        .map(|&o| ctx.value(o).expect("options of numbers are numbers").to_rational())
        .collect()
}

/// `{0, x^L | x^R}` with only the positive options kept; equivalent to `x > 0`.
pub fn inverse_rep(ctx: &mut Context, x: FormId) -> Result<FormId> {
    positive_value(ctx, x)?;
    let (pl, pr) = positive_options(ctx, x);
    let zero = ctx.zero();
    let left: Vec<FormId> = std::iter::once(zero)
        .chain(pl.iter().map(|q| ctx.dyadic(&Dyadic::from_rational(q).expect("dyadic values"))))
        .collect();
    let right: Vec<FormId> = pr
        .iter()
        .map(|q| ctx.dyadic(&Dyadic::from_rational(q).expect("dyadic values")))
        .collect();
    Ok(ctx.form(left, right))
}

fn positive_options(ctx: &mut Context, x: FormId) -> (Vec<Rational>, Vec<Rational>) {
    let l = ctx.left(x).to_vec();
    let r = ctx.right(x).to_vec();
    let keep = |v: Vec<Rational>| {
        let mut v: Vec<Rational> = v.into_iter().filter(Rational::is_positive).collect();
        v.sort();
        v.dedup();
        v
    };
    (keep(option_values(ctx, &l)), keep(option_values(ctx, &r)))
}

/// Append-only option list with a membership index.
#[derive(Default)]
struct Side {
    values: Vec<Rational>,
    seen: HashSet<Rational>,
}

impl Side {
    fn from_seeds(seeds: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Side::default();
        s.extend(seeds.into_iter().collect());
        s
    }

    /// Adds the unseen values in ascending order; returns how many were new.
    fn extend(&mut self, mut batch: Vec<Rational>) -> usize {
        batch.sort();
        batch.dedup();
        let before = self.values.len();
        for q in batch {
            if self.seen.insert(q.clone()) {
                self.values.push(q);
            }
        }
        self.values.len() - before
    }
}

fn check_steps(steps: usize, max: usize) -> Result<()> {
    if steps > max {
        return Err(Error::BudgetTooLarge {
            what: "steps",
            requested: steps,
            max,
        });
    }
    Ok(())
}

/// Runs the reciprocal closure of `x > 0` for up to `steps` rounds.
///
/// With `p` the value of `x` and `p'` ranging over its positive options,
/// a generated option `y'` of `1/x` produces `(1 + (p' − p)·y') / p'`; it is a
/// left option when `p'` and `y'` lie on opposite sides, a right option when
/// on the same side. A round first extends the left options from what is
/// already known, then the right options including those new left options.
pub fn inv_iterate(ctx: &mut Context, x: FormId, steps: usize) -> Result<CutApprox> {
    check_steps(steps, MAX_INV_STEPS)?;
    let p = positive_value(ctx, x)?;
    let (pl, pr) = positive_options(ctx, x);
    let gen = |pv: &Rational, y: &Rational| -> Rational {
        (&Rational::one() + &(&(pv - &p) * y)).checked_div(pv).expect("positive option")
    };
    let mut left = Side::from_seeds([Rational::zero()]);
    let mut right = Side::default();
    // next unread index of (left, right) for each batch
    let mut for_left = (0, 0);
    let mut for_right = (0, 0);
    let mut rounds = 0;
    let mut fixpoint = false;
    while rounds < steps {
        rounds += 1;
        let mut batch = Vec::new();
        for yl in &left.values[for_left.0..] {
            batch.extend(pr.iter().map(|q| gen(q, yl)));
        }
        for yr in &right.values[for_left.1..] {
            batch.extend(pl.iter().map(|q| gen(q, yr)));
        }
        for_left = (left.values.len(), right.values.len());
        let new_left = left.extend(batch);

        let mut batch = Vec::new();
        for yl in &left.values[for_right.0..] {
            batch.extend(pl.iter().map(|q| gen(q, yl)));
        }
        for yr in &right.values[for_right.1..] {
            batch.extend(pr.iter().map(|q| gen(q, yr)));
        }
        for_right = (left.values.len(), right.values.len());
        let new_right = right.extend(batch);

        if new_left == 0 && new_right == 0 {
            fixpoint = true;
            break;
        }
        if left.values.len() > MAX_OPTIONS || right.values.len() > MAX_OPTIONS {
            break;
        }
    }
    Ok(CutApprox {
        left_values: left.values,
        right_values: right.values,
        target: Target::Exact(p.recip()?),
        steps: rounds,
        fixpoint,
    })
}

/// The reciprocal closure for any nonzero `x`, mirroring negative inputs.
pub fn inverse(ctx: &mut Context, x: FormId, steps: usize) -> Result<CutApprox> {
    let v = ctx.value(x)?;
    match v.signum() {
        std::cmp::Ordering::Equal => Err(Error::DivByZero),
        std::cmp::Ordering::Greater => inv_iterate(ctx, x, steps),
        std::cmp::Ordering::Less => {
            let nx = ctx.neg(x);
            Ok(inv_iterate(ctx, nx, steps)?
                .scaled(&Rational::from_integer(-1))
                .expect("exact targets scale"))
        }
    }
}

/// Square roots of the nonnegative option values of `x`.
pub fn sqrt_seed(ctx: &mut Context, x: FormId) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let v = ctx.value(x)?.to_rational();
    if v.is_negative() {
        return Err(Error::NegativeOperand(v.to_string()));
    }
    let l = ctx.left(x).to_vec();
    let r = ctx.right(x).to_vec();
    let roots = |vals: Vec<Rational>| -> Result<Vec<Rational>> {
        let mut out: Vec<Rational> = vals
            .into_iter()
            .filter(|q| !q.is_negative())
            .map(|q| q.sqrt_exact().ok_or_else(|| Error::SeedNotRational(q.to_string())))
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    };
    Ok((roots(option_values(ctx, &l))?, roots(option_values(ctx, &r))?))
}

/// Runs the square-root closure of `x ≥ 0` seeded from its own options.
pub fn sqrt_iterate(ctx: &mut Context, x: FormId, steps: usize) -> Result<CutApprox> {
    let (l, r) = sqrt_seed(ctx, x)?;
    let v = ctx.value(x)?.to_rational();
    sqrt_iterate_seeded(&v, l, r, steps)
}

/// The square-root closure from explicit seeds.
///
/// `S(A, B) = {(x + a·b)/(a + b) : a ∈ A, b ∈ B, a + b ≠ 0}`; each round sets
/// `L' = L ∪ S(L, R)` and `R' = R ∪ S(L, L) ∪ S(R, R)` from the previous sets.
pub fn sqrt_iterate_seeded(
    radicand: &Rational,
    seeds_left: Vec<Rational>,
    seeds_right: Vec<Rational>,
    steps: usize,
) -> Result<CutApprox> {
    check_steps(steps, MAX_SQRT_STEPS)?;
    if radicand.is_negative() {
        return Err(Error::NegativeOperand(radicand.to_string()));
    }
    let s = |a: &Rational, b: &Rational| -> Option<Rational> {
        let den = a + b;
        (!den.is_zero()).then(|| (radicand + &(a * b)).checked_div(&den).expect("nonzero"))
    };
    let mut left = Side::from_seeds(seeds_left);
    let mut right = Side::from_seeds(seeds_right);
    // sizes before the previous round; pairs of old elements were already combined
    let (mut old_l, mut old_r) = (0, 0);
    let mut rounds = 0;
    let mut fixpoint = false;
    while rounds < steps {
        rounds += 1;
        let (nl, nr) = (left.values.len(), right.values.len());
        let (lv, rv) = (&left.values[..nl], &right.values[..nr]);
        let mut new_l = Vec::new();
        for (i, a) in lv.iter().enumerate() {
            for (j, b) in rv.iter().enumerate() {
                if i >= old_l || j >= old_r {
                    new_l.extend(s(a, b));
                }
            }
        }
        let mut new_r = Vec::new();
        for (vals, old) in [(lv, old_l), (rv, old_r)] {
            for j in old..vals.len() {
                for i in 0..=j {
                    new_r.extend(s(&vals[i], &vals[j]));
                }
            }
        }
        (old_l, old_r) = (nl, nr);
        let added = left.extend(new_l) + right.extend(new_r);
        if added == 0 {
            fixpoint = true;
            break;
        }
        if left.values.len() > MAX_OPTIONS || right.values.len() > MAX_OPTIONS {
            break;
        }
    }
    let target = match radicand.sqrt_exact() {
        Some(root) => Target::Exact(root),
        None => Target::SquareRootOf(radicand.clone()),
    };
    Ok(CutApprox {
        left_values: left.values,
        right_values: right.values,
        target,
        steps: rounds,
        fixpoint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn qs(v: &[&str]) -> Vec<Rational> {
        v.iter().map(|s| q(s)).collect()
    }

    fn dy(ctx: &mut Context, s: &str) -> FormId {
        ctx.dyadic(&s.parse().unwrap())
    }

    #[test]
    fn inverse_rep_examples() {
        let mut ctx = Context::new();
        let five = dy(&mut ctx, "5");
        let p = inverse_rep(&mut ctx, five).unwrap();
        assert_eq!(ctx.to_text(p), "{0,4|}");
        assert!(ctx.equiv(p, five));
        let one = dy(&mut ctx, "1");
        assert_eq!(inverse_rep(&mut ctx, one).unwrap(), one);
        let half = dy(&mut ctx, "1/2");
        let p = inverse_rep(&mut ctx, half).unwrap();
        assert_eq!(ctx.to_text(p), "{0|1}");
        let z = ctx.zero();
        assert!(matches!(inverse_rep(&mut ctx, z), Err(Error::NotPositive(_))));
        let m = dy(&mut ctx, "-3/4");
        assert!(matches!(inverse_rep(&mut ctx, m), Err(Error::NotPositive(_))));
    }

    #[test]
    fn inverse_of_five_trace() {
        let mut ctx = Context::new();
        let five = dy(&mut ctx, "5");
        let c = inv_iterate(&mut ctx, five, 3).unwrap();
        assert_eq!(c.left_values, qs(&["0", "3/16", "51/256"]));
        assert_eq!(c.right_values, qs(&["1/4", "13/64", "205/1024"]));
        assert_eq!(c.target, Target::Exact(q("1/5")));
        assert!(!c.fixpoint);
        let iv = c.interval();
        assert_eq!((iv.lower(), iv.upper()), (Some(&q("51/256")), Some(&q("205/1024"))));
        assert!(iv.contains(&q("1/5")));
        for k in 1..=12 {
            let c = inv_iterate(&mut ctx, five, k).unwrap();
            assert!(c.certified());
            assert!(c.interval().contains(&q("1/5")));
        }
    }

    #[test]
    fn inverse_fixpoints() {
        let mut ctx = Context::new();
        let two = dy(&mut ctx, "2");
        let c = inv_iterate(&mut ctx, two, 4).unwrap();
        assert!(c.fixpoint);
        assert_eq!(c.steps, 2);
        assert_eq!((c.left_values.clone(), c.right_values.clone()), (qs(&["0"]), qs(&["1"])));
        let f = c.exact_form(&mut ctx).unwrap();
        assert_eq!(ctx.to_text(f), "{0|1}");
        assert_eq!(cut_extract(&c), "1/2".parse().unwrap());
        let one = dy(&mut ctx, "1");
        let prod = ctx.mul(two, f);
        assert!(ctx.equiv(prod, one));

        let c = inv_iterate(&mut ctx, one, 1).unwrap();
        assert!(c.fixpoint);
        assert_eq!(c.exact_form(&mut ctx), Some(one));
    }

    #[test]
    fn inverse_handles_sign_and_zero() {
        let mut ctx = Context::new();
        let m2 = dy(&mut ctx, "-2");
        let c = inverse(&mut ctx, m2, 8).unwrap();
        assert!(c.fixpoint && c.certified());
        let f = c.exact_form(&mut ctx).unwrap();
        assert_eq!(ctx.value(f).unwrap(), "-1/2".parse().unwrap());
        let z = ctx.zero();
        assert_eq!(inverse(&mut ctx, z, 8), Err(Error::DivByZero));
        assert!(matches!(inv_iterate(&mut ctx, m2, 65), Err(Error::BudgetTooLarge { .. })));
    }

    #[test]
    fn sqrt_seed_examples() {
        let mut ctx = Context::new();
        let zero = ctx.zero();
        let one = dy(&mut ctx, "1");
        let four = ctx.form([zero, one], []);
        assert_eq!(sqrt_seed(&mut ctx, four).unwrap(), (qs(&["0", "1"]), vec![]));
        assert_eq!(sqrt_seed(&mut ctx, one).unwrap(), (qs(&["0"]), vec![]));
        let canonical_four = dy(&mut ctx, "4");
        assert!(matches!(sqrt_seed(&mut ctx, canonical_four), Err(Error::SeedNotRational(_))));
    }

    #[test]
    fn sqrt_of_four() {
        let four = q("4");
        let run = |k| sqrt_iterate_seeded(&four, qs(&["0", "1"]), vec![], k).unwrap();
        assert_eq!(run(1).right_values, qs(&["5/2", "4"]));
        let c2 = run(2);
        let iv = c2.interval();
        assert_eq!((iv.lower(), iv.upper()), (Some(&q("13/7")), Some(&q("41/20"))));
        assert!(c2.left_values.contains(&q("8/5")));
        assert!(c2.right_values.contains(&q("28/13")));
        assert_eq!(c2.target, Target::Exact(q("2")));
        let mut prev: Option<Rational> = None;
        for k in 1..=6 {
            let c = run(k);
            assert!(c.certified());
            assert!(c.interval().contains(&q("2")));
            let w = c.interval().width().unwrap();
            if let Some(p) = prev {
                assert!(w < p);
            }
            prev = Some(w);
        }
    }

    #[test]
    fn sqrt_from_form_options() {
        let mut ctx = Context::new();
        let zero = ctx.zero();
        let one = dy(&mut ctx, "1");
        let two = ctx.form([zero, one], []);
        let c = sqrt_iterate(&mut ctx, two, 2).unwrap();
        assert_eq!(c.target, Target::SquareRootOf(q("2")));
        let iv = c.interval();
        assert_eq!((iv.lower(), iv.upper()), (Some(&q("7/5")), Some(&q("17/12"))));
    }

    #[test]
    fn sqrt_trivial_fixpoints() {
        let mut ctx = Context::new();
        let one = dy(&mut ctx, "1");
        let c = sqrt_iterate(&mut ctx, one, 5).unwrap();
        assert!(c.fixpoint);
        assert_eq!(c.exact_form(&mut ctx), Some(one));
        let zero = ctx.zero();
        let c = sqrt_iterate(&mut ctx, zero, 5).unwrap();
        assert!(c.fixpoint);
        assert_eq!(c.exact_form(&mut ctx), Some(zero));
        let f = c.exact_form(&mut ctx).unwrap();
        let sq = ctx.mul(f, f);
        assert!(ctx.equiv(sq, zero));
    }

    #[test]
    fn sqrt_of_two_is_certified_but_inexact() {
        let c = sqrt_iterate_seeded(&q("2"), qs(&["0", "1"]), vec![], 5).unwrap();
        assert_eq!(c.target, Target::SquareRootOf(q("2")));
        assert!(!c.fixpoint);
        assert!(c.certified());
        let iv = c.interval();
        let (lo, hi) = (iv.lower().unwrap(), iv.upper().unwrap());
        assert!(lo * lo < q("2") && q("2") < hi * hi);
        assert!(iv.width().unwrap() < q("1/1000000000"));
    }

    #[test]
    fn cut_interval_unbounded_right() {
        let c = CutApprox {
            left_values: qs(&["0", "3/2"]),
            right_values: vec![],
            target: Target::Exact(q("2")),
            steps: 1,
            fixpoint: false,
        };
        let iv = cut_interval(&c);
        assert_eq!((iv.lower(), iv.upper()), (Some(&q("3/2")), None));
        assert_eq!(cut_extract(&c), "2".parse().unwrap());
    }

    #[test]
    fn identical_inputs_identical_sequences() {
        let mut a = Context::new();
        let mut b = Context::new();
        let xa = dy(&mut a, "3/8");
        let xb = dy(&mut b, "3/8");
        assert_eq!(inv_iterate(&mut a, xa, 6).unwrap(), inv_iterate(&mut b, xb, 6).unwrap());
    }
}
