//! Evaluation of parsed expressions.
//!
//! Plain literals stay exact rationals until they meet a game form or an
//! ω-term. Brace forms live on the game-form layer, anything built from `w`
//! on the CNF layer, and combining the two is an error. Division and `sqrt`
//! on game forms run the option closures under the step budget.

use std::collections::BTreeMap;
use std::fmt;

use surreal_core::closure::{self, CutApprox};
use surreal_core::cnf::{cnf_cmp, CnfSurreal};
use surreal_core::embed::{dyadic_cut, CutNumber};
use surreal_core::gameform::{Context, FormId};
use surreal_core::signexp::SignExpansion;
use surreal_core::{Dyadic, Error as CoreError, Rational};

use crate::ast::{BinOp, Expr, Func, Stmt};
use crate::error::{CliError, Result};

/// Exponents above this are refused rather than multiplied out.
pub const MAX_POWER: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub steps: usize,
    pub max_day: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { steps: 8, max_day: 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layer {
    Gameform,
    Signexp,
    Cnf,
    Cut,
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Layer::Gameform => "GAMEFORM",
            Layer::Signexp => "SIGNEXP",
            Layer::Cnf => "CNF",
            Layer::Cut => "CUT",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Form(FormId),
    /// An exact rational: literals, values, birthdays, comparisons.
    Number(Rational),
    Signs(SignExpansion),
    Cnf(CnfSurreal),
    Cut(CutApprox),
    RealCut(CutNumber),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub layer: Layer,
    pub payload: Payload,
    /// The operations that ran, with their budgets.
    pub provenance: Vec<String>,
}

fn mismatch(msg: &str) -> CliError {
    CliError::LayerMismatch(msg.to_string())
}

/// One evaluation context: the form arena, its caches and the `let` bindings.
#[derive(Default)]
pub struct Session {
    pub ctx: Context,
    pub config: Config,
    vars: BTreeMap<String, Payload>,
}

impl Session {
    pub fn new(config: Config) -> Self {
        Session {
            ctx: Context::new(),
            config,
            vars: BTreeMap::new(),
        }
    }

    /// Runs a statement; a `let` also returns the bound name.
    pub fn run(&mut self, stmt: &Stmt) -> Result<(Option<String>, EvalResult)> {
        match stmt {
            Stmt::Let(name, e) => {
                let r = self.eval(e)?;
                self.vars.insert(name.clone(), r.payload.clone());
                Ok((Some(name.clone()), r))
            }
            Stmt::Expr(e) => Ok((None, self.eval(e)?)),
        }
    }

    pub fn eval(&mut self, e: &Expr) -> Result<EvalResult> {
        let mut prov = Vec::new();
        let v = self.value(e, &mut prov)?;
        let (layer, payload) = match v {
            Payload::Form(_) => (Layer::Gameform, v),
            Payload::Cnf(_) => (Layer::Cnf, v),
            Payload::Signs(_) => (Layer::Signexp, v),
            Payload::Cut(_) | Payload::RealCut(_) => (Layer::Cut, v),
            Payload::Number(q) if e.mentions_omega() => (Layer::Cnf, Payload::Cnf(CnfSurreal::from_rational(q))),
            Payload::Number(q) => match Dyadic::from_rational(&q) {
                Some(_) => (Layer::Gameform, Payload::Number(q)),
                None => {
                    let depth = self.config.steps as u32;
                    prov.push(format!("cut(depth={depth})"));
                    (Layer::Cut, Payload::RealCut(dyadic_cut(&mut self.ctx, &q, depth)))
                }
            },
        };
        Ok(EvalResult {
            layer,
            payload,
            provenance: prov,
        })
    }

    fn value(&mut self, e: &Expr, prov: &mut Vec<String>) -> Result<Payload> {
        Ok(match e {
            Expr::Num(q) => Payload::Number(q.clone()),
            Expr::Omega => Payload::Cnf(CnfSurreal::omega()),
            Expr::Var(name) => self.vars.get(name).cloned().ok_or_else(|| CliError::Unbound(name.clone()))?,
            Expr::Brace(l, r) => {
                let mut side = |s: &mut Self, items: &[Expr]| -> Result<Vec<FormId>> {
                    items
                        .iter()
                        .map(|o| {
                            let v = s.value(o, prov)?;
                            s.form_of(v)
                        })
                        .collect()
                };
                let left = side(self, l)?;
                let right = side(self, r)?;
                let f = self.ctx.form(left, right);
                if !self.ctx.is_number(f) {
                    return Err(CoreError::NotANumber(self.ctx.to_text(f)).into());
                }
                Payload::Form(f)
            }
            Expr::Neg(a) => {
                let v = self.value(a, prov)?;
                self.negate(v)?
            }
            Expr::Bin(BinOp::Div, a, b) => {
                let a = self.value(a, prov)?;
                let b = self.value(b, prov)?;
                self.divide(a, b, prov)?
            }
            Expr::Bin(op, a, b) => {
                let a = self.value(a, prov)?;
                let b = self.value(b, prov)?;
                self.arith(*op, a, b, prov)?
            }
            Expr::Pow(a, b) => {
                let a = self.value(a, prov)?;
                let b = self.value(b, prov)?;
                self.power(a, b, prov)?
            }
            Expr::Call(func, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.value(a, prov)?);
                }
                self.call(*func, vals, prov)?
            }
        })
    }

    fn form_of(&mut self, v: Payload) -> Result<FormId> {
        match v {
            Payload::Form(f) => Ok(f),
            Payload::Number(q) => {
                let d = Dyadic::from_rational(&q).ok_or_else(|| CoreError::NotDyadic(q.to_string()))?;
                Ok(self.ctx.dyadic(&d))
            }
            Payload::Signs(s) => Ok(s.to_canonical_form(&mut self.ctx)),
            Payload::Cnf(_) => Err(mismatch("an ω-term cannot be used as a game form")),
            Payload::Cut(_) | Payload::RealCut(_) => Err(mismatch("an approximation cannot be used as an exact operand")),
        }
    }

    fn cnf_of(&mut self, v: Payload) -> Result<CnfSurreal> {
        match v {
            Payload::Cnf(c) => Ok(c),
            Payload::Number(q) => Ok(CnfSurreal::from_rational(q)),
            Payload::Signs(s) => Ok(CnfSurreal::from_rational(s.to_dyadic().to_rational())),
            Payload::Form(_) => Err(mismatch("game forms and ω-terms do not mix; convert with cnf(...)")),
            Payload::Cut(_) | Payload::RealCut(_) => Err(mismatch("an approximation cannot be used as an exact operand")),
        }
    }

    /// The exact rational value of a finite operand.
    fn rational_of(&mut self, v: Payload) -> Result<Rational> {
        match v {
            Payload::Number(q) => Ok(q),
            Payload::Cnf(c) => c.as_rational().ok_or_else(|| mismatch("expected a finite value")),
            other => {
                let f = self.form_of(other)?;
                Ok(self.ctx.value(f)?.to_rational())
            }
        }
    }

    fn negate(&mut self, v: Payload) -> Result<Payload> {
        Ok(match v {
            Payload::Number(q) => Payload::Number(-q),
            Payload::Form(f) => Payload::Form(self.ctx.neg(f)),
            Payload::Cnf(c) => Payload::Cnf(c.neg()),
            Payload::Signs(s) => Payload::Signs(s.negate()),
            Payload::Cut(c) => Payload::Cut(c.scaled(&Rational::from_integer(-1)).ok_or_else(|| {
                CliError::Unsupported("negating a square-root bracket".to_string())
            })?),
            Payload::RealCut(c) => {
                let depth = c.depth;
                Payload::RealCut(dyadic_cut(&mut self.ctx, &-c.target, depth))
            }
        })
    }

    fn arith(&mut self, op: BinOp, a: Payload, b: Payload, prov: &mut Vec<String>) -> Result<Payload> {
        if let (Payload::Number(x), Payload::Number(y)) = (&a, &b) {
            return Ok(Payload::Number(match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => unreachable!("division is handled separately"),
            }));
        }
        if matches!(a, Payload::Cnf(_)) || matches!(b, Payload::Cnf(_)) {
            let (x, y) = (self.cnf_of(a)?, self.cnf_of(b)?);
            return Ok(Payload::Cnf(match op {
                BinOp::Add => x.add(&y),
                BinOp::Sub => x.sub(&y),
                BinOp::Mul => x.mul(&y),
                BinOp::Div => unreachable!("division is handled separately"),
            }));
        }
        let (x, y) = (self.form_of(a)?, self.form_of(b)?);
        let f = match op {
            BinOp::Add => self.ctx.add(x, y),
            BinOp::Sub => self.ctx.sub(x, y),
            BinOp::Mul => self.ctx.mul(x, y),
            BinOp::Div => unreachable!("division is handled separately"),
        };
        prov.push(format!("{op:?}").to_lowercase());
        Ok(Payload::Form(f))
    }

    fn divide(&mut self, a: Payload, b: Payload, prov: &mut Vec<String>) -> Result<Payload> {
        if matches!(a, Payload::Cnf(_)) || matches!(b, Payload::Cnf(_)) {
            let (x, y) = (self.cnf_of(a)?, self.cnf_of(b)?);
            return Ok(Payload::Cnf(x.mul(&y.mono_inverse()?)));
        }
        let divisor = self.form_of(b)?;
        let inv = self.inverse(divisor, prov)?;
        match inv {
            Payload::Form(f) => {
                let x = self.form_of(a)?;
                let one = self.ctx.form([self.ctx.zero()], []);
                if x == one {
                    return Ok(Payload::Form(f));
                }
                prov.push("mul".to_string());
                Ok(Payload::Form(self.ctx.mul(x, f)))
            }
            Payload::Cut(c) => {
                let k = self.rational_of(a)?;
                Ok(Payload::Cut(c.scaled(&k).expect("reciprocal targets are exact")))
            }
            _ => unreachable!("inverse yields a form or a bracket"),
        }
    }

    /// The reciprocal closure: an exact form at a fixpoint, else the bracket.
    fn inverse(&mut self, x: FormId, prov: &mut Vec<String>) -> Result<Payload> {
        let steps = self.config.steps;
        let c = closure::inverse(&mut self.ctx, x, steps)?;
        prov.push(format!("inv(steps={steps})"));
        Ok(match c.exact_form(&mut self.ctx) {
            Some(f) if self.ctx.is_number(f) => Payload::Form(f),
            _ => Payload::Cut(c),
        })
    }

    fn power(&mut self, a: Payload, b: Payload, prov: &mut Vec<String>) -> Result<Payload> {
        if a == Payload::Cnf(CnfSurreal::omega()) {
            let e = self.cnf_of(b)?;
            return Ok(Payload::Cnf(CnfSurreal::omega_pow(e)));
        }
        let n = match &b {
            Payload::Number(q) if q.is_integer() => q.numer().clone(),
            Payload::Cnf(c) if c.as_rational().is_some_and(|q| q.is_integer()) => {
                c.as_rational().expect("checked").numer().clone()
            }
            _ => return Err(CliError::Unsupported("exponents other than integers apply only to w".to_string())),
        };
        let n: i64 = i64::try_from(&n).map_err(|_| CliError::Unsupported("exponent too large".to_string()))?;
        if n.unsigned_abs() > MAX_POWER as u64 {
            return Err(CliError::Unsupported(format!("exponent {n} exceeds {MAX_POWER}")));
        }
        let m = n.unsigned_abs() as u32;
        match a {
            Payload::Number(q) if n >= 0 => Ok(Payload::Number(q.pow(m))),
            Payload::Number(q) => Ok(Payload::Number(q.recip()?.pow(m))),
            Payload::Cnf(c) if n >= 0 => Ok(Payload::Cnf(c.pow(m))),
            Payload::Cnf(c) => Ok(Payload::Cnf(c.mono_inverse()?.pow(m))),
            other => {
                if n < 0 {
                    return Err(CliError::Unsupported("negative powers of game forms; use inv(...)".to_string()));
                }
                let x = self.form_of(other)?;
                let mut acc = self.ctx.form([self.ctx.zero()], []);
                for _ in 0..m {
                    acc = self.ctx.mul(acc, x);
                }
                prov.push(format!("pow({m})"));
                Ok(Payload::Form(acc))
            }
        }
    }

    fn call(&mut self, func: Func, mut args: Vec<Payload>, prov: &mut Vec<String>) -> Result<Payload> {
        let a = args.remove(0);
        match func {
            Func::Born => match a {
                Payload::Signs(s) => Ok(Payload::Number(Rational::from_integer(s.len() as i64))),
                Payload::Cnf(c) => match c.as_rational() {
                    Some(q) => self.call(Func::Born, vec![Payload::Number(q)], prov),
                    None => Err(mismatch("born is defined on finite game forms")),
                },
                other => {
                    let f = self.form_of(other)?;
                    Ok(Payload::Number(Rational::from_integer(self.ctx.born(f))))
                }
            },
            Func::Value => match a {
                Payload::Cnf(c) => Ok(Payload::Cnf(c)),
                Payload::Number(q) => Ok(Payload::Number(q)),
                Payload::Cut(_) | Payload::RealCut(_) => {
                    Err(mismatch("an approximation has no exact value; see its interval"))
                }
                other => {
                    let f = self.form_of(other)?;
                    prov.push("value".to_string());
                    Ok(Payload::Number(self.ctx.value(f)?.to_rational()))
                }
            },
            Func::Sign => match a {
                Payload::Signs(s) => Ok(Payload::Signs(s)),
                Payload::Cnf(c) => match c.as_rational() {
                    Some(q) => self.call(Func::Sign, vec![Payload::Number(q)], prov),
                    None => Err(mismatch("sign expansions are computed for finite values")),
                },
                other => {
                    let f = self.form_of(other)?;
                    let d = self.ctx.value(f)?;
                    Ok(Payload::Signs(SignExpansion::from_dyadic(&d)))
                }
            },
            Func::Cnf => match a {
                Payload::Form(f) => Ok(Payload::Cnf(CnfSurreal::from_form(&mut self.ctx, f)?)),
                other => Ok(Payload::Cnf(self.cnf_of(other)?)),
            },
            Func::Simplify => match a {
                Payload::Form(f) => {
                    prov.push("canonicalize".to_string());
                    Ok(Payload::Form(self.ctx.canonicalize(f)?))
                }
                Payload::Cut(_) | Payload::RealCut(_) => Err(mismatch("an approximation has no canonical form")),
                other => Ok(other),
            },
            Func::Cmp => {
                let b = args.remove(0);
                let ord = match (a, b) {
                    (Payload::Number(x), Payload::Number(y)) => x.cmp(&y),
                    (a, b) if matches!(a, Payload::Cnf(_)) || matches!(b, Payload::Cnf(_)) => {
                        let (x, y) = (self.cnf_of(a)?, self.cnf_of(b)?);
                        cnf_cmp(&x, &y)
                    }
                    (a, b) => {
                        let (x, y) = (self.form_of(a)?, self.form_of(b)?);
                        match (self.ctx.leq(x, y), self.ctx.leq(y, x)) {
                            (true, true) => std::cmp::Ordering::Equal,
                            (true, false) => std::cmp::Ordering::Less,
                            _ => std::cmp::Ordering::Greater,
                        }
                    }
                };
                Ok(Payload::Number(Rational::from_integer(ord as i64)))
            }
            Func::Sqrt => self.sqrt(a, prov),
            Func::Inv => match a {
                Payload::Cnf(c) => Ok(Payload::Cnf(c.mono_inverse()?)),
                other => {
                    let f = self.form_of(other)?;
                    self.inverse(f, prov)
                }
            },
        }
    }

    /// Brace forms seed the closure with the roots of their options; a plain
    /// rational `q` is seeded with `{0 | q + 1}`.
    fn sqrt(&mut self, a: Payload, prov: &mut Vec<String>) -> Result<Payload> {
        let steps = self.config.steps;
        let c = match a {
            Payload::Form(f) => {
                prov.push(format!("sqrt(steps={steps})"));
                closure::sqrt_iterate(&mut self.ctx, f, steps)?
            }
            Payload::Cut(_) | Payload::RealCut(_) => return Err(mismatch("an approximation cannot be used as an exact operand")),
            Payload::Cnf(ref c) if c.as_rational().is_none() => {
                return Err(CliError::Unsupported("square roots of ω-terms".to_string()))
            }
            other => {
                let q = self.rational_of(other)?;
                let left = if q.is_positive() { vec![Rational::zero()] } else { vec![] };
                let right = vec![&q + &Rational::one()];
                prov.push(format!("sqrt(seeds={{0|{}}}, steps={steps})", &q + &Rational::one()));
                closure::sqrt_iterate_seeded(&q, left, right, steps)?
            }
        };
        Ok(match c.exact_form(&mut self.ctx) {
            Some(f) if self.ctx.is_number(f) => Payload::Form(f),
            _ => Payload::Cut(c),
        })
    }
}
