//! Hereditarily finite game forms `{L | R}`.
//!
//! Forms live in an interning arena owned by a [`Context`]: option sets are
//! stored sorted and deduplicated, so two forms are structurally equal exactly
//! when their [`FormId`]s are equal. The context also owns the memo tables for
//! comparison and arithmetic, which are exponential without caching.

use std::fmt::Write as _;
use std::rc::Rc;

use rustc_hash::FxHashMap;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::numeric::{simplest_dyadic, BoundedInterval, Dyadic};
use crate::ordinal::Ordinal;

/// Handle to an interned form. Only meaningful together with the [`Context`]
/// that created it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FormId(u32);

impl FormId {
    fn idx(self) -> usize {
        self.0 as usize
    }

    pub fn raw(self) -> u32 {
        self.0
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Node {
    left: Rc<[FormId]>,
    right: Rc<[FormId]>,
}

/// Arena plus caches. Single-threaded; independent contexts share nothing.
pub struct Context {
    nodes: Vec<Node>,
    interned: FxHashMap<Node, FormId>,
    leq_memo: FxHashMap<(FormId, FormId), bool>,
    add_memo: FxHashMap<(FormId, FormId), FormId>,
    mul_memo: FxHashMap<(FormId, FormId), FormId>,
    neg_memo: Vec<Option<FormId>>,
    number_memo: Vec<Option<bool>>,
    born_memo: Vec<Option<u64>>,
    value_memo: Vec<Option<Dyadic>>,
    dyadic_memo: FxHashMap<Dyadic, FormId>,
}

impl Default for Context {
    fn default() -> Self {
        Context::new()
    }
}

impl Context {
    pub fn new() -> Self {
        let mut ctx = Context {
            nodes: Vec::new(),
            interned: FxHashMap::default(),
            leq_memo: FxHashMap::default(),
            add_memo: FxHashMap::default(),
            mul_memo: FxHashMap::default(),
            neg_memo: Vec::new(),
            number_memo: Vec::new(),
            born_memo: Vec::new(),
            value_memo: Vec::new(),
            dyadic_memo: FxHashMap::default(),
        };
        ctx.form([], []);
        ctx
    }

    /// Number of distinct forms interned so far.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Interns `{left | right}`.
    pub fn form(
        &mut self,
        left: impl IntoIterator<Item = FormId>,
        right: impl IntoIterator<Item = FormId>,
    ) -> FormId {
        let mut l: Vec<FormId> = left.into_iter().collect();
        let mut r: Vec<FormId> = right.into_iter().collect();
        l.sort_unstable();
        l.dedup();
        r.sort_unstable();
        r.dedup();
        let node = Node {
            left: l.into(),
            right: r.into(),
        };
        if let Some(&id) = self.interned.get(&node) {
            return id;
        }
        let id = FormId(u32::try_from(self.nodes.len()).expect("arena overflow"));
        self.nodes.push(node.clone());
        self.interned.insert(node, id);
        self.neg_memo.push(None);
        self.number_memo.push(None);
        self.born_memo.push(None);
        self.value_memo.push(None);
        id
    }

    /// `{|}`
    pub fn zero(&self) -> FormId {
        FormId(0)
    }

    pub fn left(&self, x: FormId) -> &[FormId] {
        &self.nodes[x.idx()].left
    }

    pub fn right(&self, x: FormId) -> &[FormId] {
        &self.nodes[x.idx()].right
    }

    fn options(&self, x: FormId) -> (Rc<[FormId]>, Rc<[FormId]>) {
        let n = &self.nodes[x.idx()];
        (n.left.clone(), n.right.clone())
    }

    /// Conway comparison: `x ≤ y` iff no `x^L ≥ y` and no `y^R ≤ x`.
    pub fn leq(&mut self, x: FormId, y: FormId) -> bool {
        if let Some(&b) = self.leq_memo.get(&(x, y)) {
            return b;
        }
        let (xl, _) = self.options(x);
        let (_, yr) = self.options(y);
        let result = !xl.iter().any(|&l| self.leq(y, l)) && !yr.iter().any(|&r| self.leq(r, x));
        self.leq_memo.insert((x, y), result);
        result
    }

    pub fn lt(&mut self, x: FormId, y: FormId) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    /// `L ≪ R`: no right element is `≤` any left element.
    pub fn ll(&mut self, left: &[FormId], right: &[FormId]) -> bool {
        left.iter()
            .all(|&l| right.iter().all(|&r| !self.leq(r, l)))
    }

    pub fn equiv(&mut self, x: FormId, y: FormId) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    /// Runs `compute` on every not-yet-cached form reachable from `root`,
    /// children before parents, without recursing on the call stack.
    fn bottom_up(
        &mut self,
        root: FormId,
        cached: impl Fn(&Self, FormId) -> bool,
        mut compute: impl FnMut(&mut Self, FormId),
    ) {
        let mut stack = vec![root];
        while let Some(&top) = stack.last() {
            if cached(self, top) {
                stack.pop();
                continue;
            }
            let node = &self.nodes[top.idx()];
            let pending = node
                .left
                .iter()
                .chain(node.right.iter())
                .copied()
                .find(|&c| !cached(self, c));
            match pending {
                Some(child) => stack.push(child),
                None => {
                    compute(self, top);
                    stack.pop();
                }
            }
        }
    }

    /// Hereditary Concept check: every option is a number and `L ≪ R`.
    /// Options are numbers by the time a node is examined, so `L ≪ R`
    /// reduces to comparing their exact values.
    pub fn is_number(&mut self, x: FormId) -> bool {
        self.classify(x);
        self.number_memo[x.idx()].expect("computed")
    }

    fn classify(&mut self, x: FormId) {
        self.bottom_up(
            x,
            |c, f| c.number_memo[f.idx()].is_some(),
            |c, f| {
                let n = &c.nodes[f.idx()];
                let opts_ok = n.left.iter().chain(n.right.iter()).all(|o| c.number_memo[o.idx()] == Some(true));
                let v = if opts_ok {
                    let lower = n.left.iter().map(|o| c.value_memo[o.idx()].as_ref().expect("child first")).max();
                    let upper = n.right.iter().map(|o| c.value_memo[o.idx()].as_ref().expect("child first")).min();
                    match (lower, upper) {
                        (Some(l), Some(u)) if l >= u => None,
                        (lower, upper) => {
                            let interval = BoundedInterval::new(
                                lower.map(Dyadic::to_rational),
                                upper.map(Dyadic::to_rational),
                            )
                            .expect("ordered bounds");
                            Some(simplest_dyadic(&interval).expect("nonempty"))
                        }
                    }
                } else {
                    None
                };
                c.number_memo[f.idx()] = Some(v.is_some());
                c.value_memo[f.idx()] = v;
            },
        );
    }

    /// `-x = {-x^R | -x^L}`
    pub fn neg(&mut self, x: FormId) -> FormId {
        if let Some(n) = self.neg_memo[x.idx()] {
            return n;
        }
        let (l, r) = self.options(x);
        let new_left: Vec<FormId> = r.iter().map(|&o| self.neg(o)).collect();
        let new_right: Vec<FormId> = l.iter().map(|&o| self.neg(o)).collect();
        let n = self.form(new_left, new_right);
        self.neg_memo[x.idx()] = Some(n);
        n
    }

    /// `x + y = {x^L + y, x + y^L | x^R + y, x + y^R}`
    pub fn add(&mut self, x: FormId, y: FormId) -> FormId {
        if let Some(&s) = self.add_memo.get(&(x, y)) {
            return s;
        }
        let (xl, xr) = self.options(x);
        let (yl, yr) = self.options(y);
        let mut left = Vec::with_capacity(xl.len() + yl.len());
        for &a in xl.iter() {
            left.push(self.add(a, y));
        }
        for &b in yl.iter() {
            left.push(self.add(x, b));
        }
        let mut right = Vec::with_capacity(xr.len() + yr.len());
        for &a in xr.iter() {
            right.push(self.add(a, y));
        }
        for &b in yr.iter() {
            right.push(self.add(x, b));
        }
        let s = self.form(left, right);
        self.add_memo.insert((x, y), s);
        s
    }

    pub fn sub(&mut self, x: FormId, y: FormId) -> FormId {
        let ny = self.neg(y);
        self.add(x, ny)
    }

    /// `a·y + x·b − a·b` for one option pair.
    fn mul_option(&mut self, x: FormId, y: FormId, a: FormId, b: FormId) -> FormId {
        let p = self.mul(a, y);
        let q = self.mul(x, b);
        let r = self.mul(a, b);
        let pq = self.add(p, q);
        self.sub(pq, r)
    }

    /// Conway product with the four option families.
    pub fn mul(&mut self, x: FormId, y: FormId) -> FormId {
        if let Some(&p) = self.mul_memo.get(&(x, y)) {
            return p;
        }
        let (xl, xr) = self.options(x);
        let (yl, yr) = self.options(y);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for &a in xl.iter() {
            for &b in yl.iter() {
                left.push(self.mul_option(x, y, a, b));
            }
        }
        for &a in xr.iter() {
            for &b in yr.iter() {
                left.push(self.mul_option(x, y, a, b));
            }
        }
        for &a in xl.iter() {
            for &b in yr.iter() {
                right.push(self.mul_option(x, y, a, b));
            }
        }
        for &a in xr.iter() {
            for &b in yl.iter() {
                right.push(self.mul_option(x, y, a, b));
            }
        }
        let p = self.form(left, right);
        self.mul_memo.insert((x, y), p);
        p
    }

    /// Birthday of a finite form: 0 for `{|}`, else one more than its oldest option.
    pub fn born(&mut self, x: FormId) -> u64 {
        self.bottom_up(
            x,
            |c, f| c.born_memo[f.idx()].is_some(),
            |c, f| {
                let n = &c.nodes[f.idx()];
                let b = n
                    .left
                    .iter()
                    .chain(n.right.iter())
                    .map(|o| c.born_memo[o.idx()].expect("child first") + 1)
                    .max()
                    .unwrap_or(0);
                c.born_memo[f.idx()] = Some(b);
            },
        );
        self.born_memo[x.idx()].expect("computed")
    }

    pub fn born_form(&mut self, x: FormId) -> Ordinal {
        Ordinal::natural(self.born(x))
    }

    /// The dyadic value: the simplest dyadic strictly between the largest
    /// left value and the smallest right value.
    pub fn value(&mut self, x: FormId) -> Result<Dyadic> {
        if !self.is_number(x) {
            return Err(Error::NotANumber(self.to_text(x)));
        }
        Ok(self.value_memo[x.idx()].clone().expect("computed"))
    }

    /// The canonical form of a dyadic, built by halving recursion:
    /// `(2j+1)/2^(p+1) ↦ {j/2^p | (j+1)/2^p}`, integers as `{n-1|}` / `{|n+1}`.
    pub fn dyadic(&mut self, d: &Dyadic) -> FormId {
        if let Some(&f) = self.dyadic_memo.get(d) {
            return f;
        }
        let f = if d.is_integer() {
            let step = Dyadic::from_integer(if d.signum().is_gt() { -1 } else { 1 });
            // walk toward zero until a cached integer, then build back outward
            let mut chain = Vec::new();
            let mut cur = d.clone();
            let mut prev = loop {
                if let Some(&f) = self.dyadic_memo.get(&cur) {
                    break f;
                }
                if cur.is_zero() {
                    let z = self.zero();
                    self.dyadic_memo.insert(cur, z);
                    break z;
                }
                let next = &cur + &step;
                chain.push(cur);
                cur = next;
            };
            for v in chain.into_iter().rev() {
                prev = if v.signum().is_gt() {
                    self.form([prev], [])
                } else {
                    self.form([], [prev])
                };
                self.dyadic_memo.insert(v, prev);
            }
            prev
        } else {
            let p = d.exponent() - 1;
            let j: num_bigint::BigInt = (d.numerator() - 1u32) / 2u32;
            let lo = Dyadic::new(j.clone(), p);
            let hi = Dyadic::new(j + 1, p);
            let l = self.dyadic(&lo);
            let r = self.dyadic(&hi);
            let f = self.form([l], [r]);
            self.dyadic_memo.insert(d.clone(), f);
            f
        };
        f
    }

    /// The unique canonical form with the same value.
    pub fn canonicalize(&mut self, x: FormId) -> Result<FormId> {
        let v = self.value(x)?;
        Ok(self.dyadic(&v))
    }

    /// True when `x` is exactly the canonical form of its value.
    pub fn is_canonical(&mut self, x: FormId) -> bool {
        match self.value(x) {
            Ok(v) => self.dyadic(&v) == x,
            Err(_) => false,
        }
    }

    /// Brace text with canonical options abbreviated to their values,
    /// e.g. `{0|1}` or `{-1,0|1}`. This is the form the expression parser reads back.
    pub fn to_text(&mut self, x: FormId) -> String {
        let mut out = String::new();
        self.write_braces(x, &mut out);
        out
    }

    fn write_braces(&mut self, x: FormId, out: &mut String) {
        let (l, r) = self.options(x);
        out.push('{');
        self.write_options(&l, out);
        out.push('|');
        self.write_options(&r, out);
        out.push('}');
    }

    fn write_options(&mut self, opts: &[FormId], out: &mut String) {
        let mut opts = opts.to_vec();
        if opts.iter().all(|&o| self.is_number(o)) {
            opts.sort_by_cached_key(|&o| self.value(o).expect("numbers have values"));
        }
        for (i, &o) in opts.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            if self.is_canonical(o) {
                let v = self.value(o).expect("canonical forms are numbers");
                let _ = write!(out, "{v}");
            } else {
                self.write_braces(o, out);
            }
        }
    }

    /// Fully nested brace text with no abbreviations: `{{|}|{{|}|}}`.
    pub fn to_nested_text(&self, x: FormId) -> String {
        let mut out = String::new();
        self.write_nested(x, &mut out);
        out
    }

    fn write_nested(&self, x: FormId, out: &mut String) {
        let n = &self.nodes[x.idx()];
        out.push('{');
        for (i, o) in n.left.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.write_nested(*o, out);
        }
        out.push('|');
        for (i, o) in n.right.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.write_nested(*o, out);
        }
        out.push('}');
    }

    /// Recursive JSON `{"left":[…],"right":[…]}`.
    pub fn to_json(&self, x: FormId) -> Json {
        let n = &self.nodes[x.idx()];
        json!({
            "left": n.left.iter().map(|&o| self.to_json(o)).collect::<Vec<_>>(),
            "right": n.right.iter().map(|&o| self.to_json(o)).collect::<Vec<_>>(),
        })
    }
}
