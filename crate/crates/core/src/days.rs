//! Day-by-day construction under an explicit order relation.
//!
//! `Day(Ord, α)` collects the forms whose options were born on earlier days
//! and whose left options are `≪_Ord` their right options. The order itself
//! is grown pair by pair with [`extend_order`] until it matches `≤`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::gameform::{Context, FormId};
use crate::numeric::Dyadic;
use crate::ordinal::Ordinal;
use crate::signexp::all_of_length;

/// Largest day that is enumerated in full.
pub const MAX_DAY: usize = 2;
pub const MAX_CANONICAL_DAY: usize = 16;
pub const MAX_TREE_DEPTH: usize = 8;
pub const MAX_PAIR_CHAIN: usize = 20;

/// A finite relation on interned forms; `(x, y)` reads `x ≤_Ord y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderRelation {
    pairs: BTreeSet<(FormId, FormId)>,
}

impl OrderRelation {
    pub fn new() -> Self {
        OrderRelation::default()
    }

    pub fn contains(&self, x: FormId, y: FormId) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn insert(&mut self, x: FormId, y: FormId) -> bool {
        self.pairs.insert((x, y))
    }

    pub fn remove(&mut self, x: FormId, y: FormId) -> bool {
        self.pairs.remove(&(x, y))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &BTreeSet<(FormId, FormId)> {
        &self.pairs
    }

    pub fn is_subset(&self, other: &BTreeSet<(FormId, FormId)>) -> bool {
        self.pairs.is_subset(other)
    }

    /// Keeps only pairs with both ends in `universe`.
    pub fn restrict(&self, universe: &[FormId]) -> OrderRelation {
        let set: BTreeSet<FormId> = universe.iter().copied().collect();
        self.pairs
            .iter()
            .filter(|(x, y)| set.contains(x) && set.contains(y))
            .copied()
            .collect()
    }

    /// `L ≪_Ord R`: no `(r, l)` with `r ∈ R`, `l ∈ L` is in the relation.
    pub fn ll(&self, left: &[FormId], right: &[FormId]) -> bool {
        left.iter().all(|&l| right.iter().all(|&r| !self.contains(r, l)))
    }
}

impl FromIterator<(FormId, FormId)> for OrderRelation {
    fn from_iter<I: IntoIterator<Item = (FormId, FormId)>>(iter: I) -> Self {
        OrderRelation {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// `{(x, y) ∈ universe² : x ≤ y}` using the game-form comparison.
pub fn leq_graph(ctx: &mut Context, universe: &[FormId]) -> OrderRelation {
    let mut out = OrderRelation::new();
    for &x in universe {
        for &y in universe {
            if ctx.leq(x, y) {
                out.insert(x, y);
            }
        }
    }
    out
}

fn check_day(alpha: usize) -> Result<()> {
    if alpha > MAX_DAY {
        return Err(Error::DayTooLarge {
            requested: alpha,
            cap: MAX_DAY,
        });
    }
    Ok(())
}

fn subsets(items: &[FormId]) -> Vec<Vec<FormId>> {
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &f)| f)
                .collect()
        })
        .collect()
}

/// All pairs `{L | R}` with `L, R ⊆ pool`, in subset-mask order.
fn candidates(ctx: &mut Context, pool: &[FormId]) -> Vec<FormId> {
    let subs = subsets(pool);
    let mut out = Vec::with_capacity(subs.len() * subs.len());
    for l in &subs {
        for r in &subs {
            out.push(ctx.form(l.iter().copied(), r.iter().copied()));
        }
    }
    out
}

/// The unrestricted stages `Games_0 ⊆ … ⊆ Games_α`, each over all earlier ones.
pub fn games(ctx: &mut Context, alpha: usize) -> Result<Vec<FormId>> {
    check_day(alpha)?;
    let mut pool = vec![ctx.zero()];
    for _ in 0..alpha {
        pool = candidates(ctx, &pool);
    }
    pool.sort_unstable();
    Ok(pool)
}

/// Cumulative stages `Day(Ord, 0), …, Day(Ord, α)` and each form's first day.
struct Stages {
    days: Vec<Vec<FormId>>,
    born: BTreeMap<FormId, usize>,
}

fn stages(ctx: &mut Context, ord: &OrderRelation, alpha: usize) -> Result<Stages> {
    check_day(alpha)?;
    let zero = ctx.zero();
    let mut days = vec![vec![zero]];
    let mut born = BTreeMap::from([(zero, 0)]);
    for k in 1..=alpha {
        let prev = days[k - 1].clone();
        let mut day: Vec<FormId> = candidates(ctx, &prev)
            .into_iter()
            .filter(|&f| ord.ll(ctx.left(f), ctx.right(f)))
            .collect();
        day.sort_unstable();
        day.dedup();
        for &f in &day {
            born.entry(f).or_insert(k);
        }
        days.push(day);
    }
    Ok(Stages { days, born })
}

pub fn day_with_relation(ctx: &mut Context, ord: &OrderRelation, alpha: usize) -> Result<Vec<FormId>> {
    Ok(stages(ctx, ord, alpha)?.days.swap_remove(alpha))
}

/// The first day on which `x` appears under `ord`.
pub fn born_rel(ctx: &mut Context, ord: &OrderRelation, x: FormId) -> Result<Ordinal> {
    let st = stages(ctx, ord, MAX_DAY)?;
    st.born
        .get(&x)
        .map(|&b| Ordinal::natural(b as u64))
        .ok_or(Error::NotBornWithinCap { cap: MAX_DAY })
}

/// `Comp(Ord, A)`: on every pair of `A`, membership in `ord` agrees with
/// `L_x ≪_Ord {y} ∧ {x} ≪_Ord R_y`.
pub fn comp_holds<'a>(
    ctx: &Context,
    ord: &OrderRelation,
    pairs: impl IntoIterator<Item = &'a (FormId, FormId)>,
) -> bool {
    pairs.into_iter().all(|&(x, y)| {
        let rule = ord.ll(ctx.left(x), &[y]) && ord.ll(&[x], ctx.right(y));
        ord.contains(x, y) == rule
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Bound {
    Closed,
    Open,
}

fn product(st: &Stages, alpha: usize, beta: usize, bound: Bound) -> BTreeSet<(FormId, FormId)> {
    let within = |b: usize| match bound {
        Bound::Closed => b <= beta,
        Bound::Open => b < beta,
    };
    let day = &st.days[alpha];
    let mut out = BTreeSet::new();
    for &x in day {
        for &y in day {
            let (bx, by) = (st.born[&x], st.born[&y]);
            let keep = (bx < alpha && by < alpha)
                || (bx == alpha && within(by))
                || (within(bx) && by == alpha);
            if keep {
                out.insert((x, y));
            }
        }
    }
    out
}

/// Pairs of `Day(Ord, α)²` whose birthdays are both below `α`, or one of
/// which is `α` while the other is at most `β`.
pub fn prod_c(ctx: &mut Context, ord: &OrderRelation, alpha: usize, beta: usize) -> Result<BTreeSet<(FormId, FormId)>> {
    let st = stages(ctx, ord, alpha)?;
    Ok(product(&st, alpha, beta, Bound::Closed))
}

/// As [`prod_c`] with the bound on the other birthday strict.
pub fn prod_o(ctx: &mut Context, ord: &OrderRelation, alpha: usize, beta: usize) -> Result<BTreeSet<(FormId, FormId)>> {
    let st = stages(ctx, ord, alpha)?;
    Ok(product(&st, alpha, beta, Bound::Open))
}

/// One step of the order construction: adds every pair coupling a form born
/// on day `α` with one born on day `β` that passes the comparison rule.
pub fn extend_order(ctx: &mut Context, ord: &OrderRelation, alpha: usize, beta: usize) -> Result<OrderRelation> {
    if beta > alpha {
        return Err(Error::NotCompatible(format!("beta {beta} exceeds alpha {alpha}")));
    }
    let st = stages(ctx, ord, alpha)?;
    let open = product(&st, alpha, beta, Bound::Open);
    if !ord.is_subset(&open) {
        return Err(Error::NotCompatible(format!(
            "relation has pairs outside Prod^O({alpha},{beta})"
        )));
    }
    if !comp_holds(ctx, ord, &open) {
        return Err(Error::NotCompatible(format!(
            "relation breaks the comparison rule on Prod^O({alpha},{beta})"
        )));
    }
    let mut out = ord.clone();
    let day = &st.days[alpha];
    for &x in day {
        for &y in day {
            let (bx, by) = (st.born[&x], st.born[&y]);
            let coupled = (bx == alpha && by == beta) || (bx == beta && by == alpha);
            if coupled && ord.ll(ctx.left(x), &[y]) && ord.ll(&[x], ctx.right(y)) {
                out.insert(x, y);
            }
        }
    }
    Ok(out)
}

/// The order on `Day(n)`, built by iterating [`extend_order`] over `(α, β)`
/// lexicographically with `β` inner.
pub fn no_order(ctx: &mut Context, n: usize) -> Result<OrderRelation> {
    check_day(n)?;
    let mut ord = OrderRelation::new();
    for alpha in 0..=n {
        for beta in 0..=alpha {
            ord = extend_order(ctx, &ord, alpha, beta)?;
        }
    }
    Ok(ord)
}

/// Pairs `(L, R)` of subsets of an `n`-element chain with `max L < min R`.
///
/// Counted by the largest element of `L`: an empty `L` leaves `R` free, and a
/// largest element `k` leaves `2^(k-1)` choices below it and `2^(n-k)` above.
pub fn count_valid_pairs(n: usize) -> Result<u64> {
    if n > MAX_PAIR_CHAIN {
        return Err(Error::BudgetTooLarge {
            what: "chain length",
            requested: n,
            max: MAX_PAIR_CHAIN,
        });
    }
    let empty_left = 1u64 << n;
    let by_max: u64 = (1..=n).map(|k| (1u64 << (k - 1)) * (1u64 << (n - k))).sum();
    Ok(empty_left + by_max)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DayReport {
    pub day_index: usize,
    pub candidate_count: u64,
    pub number_count: u64,
    /// Values first reached on this day, ascending.
    pub new_class_values: Vec<Dyadic>,
    pub universe: Vec<FormId>,
}

impl DayReport {
    pub fn to_json(&self) -> Json {
        json!({
            "day": self.day_index,
            "candidates": self.candidate_count,
            "numbers": self.number_count,
            "new_values": self.new_class_values.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "day         {}", self.day_index);
        let _ = writeln!(out, "candidates  {}", self.candidate_count);
        let _ = writeln!(out, "numbers     {}", self.number_count);
        let vals: Vec<String> = self.new_class_values.iter().map(ToString::to_string).collect();
        let _ = write!(out, "new values  {}", vals.join(" "));
        out
    }
}

/// Candidates, numbers and new values of day `n` under the constructed order.
pub fn enumerate_day(ctx: &mut Context, n: usize) -> Result<DayReport> {
    let ord = no_order(ctx, n)?;
    let st = stages(ctx, &ord, n)?;
    let candidate_count = match n {
        0 => 1,
        _ => {
            let side = 1u64 << st.days[n - 1].len();
            side * side
        }
    };
    let values = |ctx: &mut Context, forms: &[FormId]| -> Result<BTreeSet<Dyadic>> {
        forms.iter().map(|&f| ctx.value(f)).collect()
    };
    let now = values(ctx, &st.days[n])?;
    let before = match n {
        0 => BTreeSet::new(),
        _ => values(ctx, &st.days[n - 1])?,
    };
    Ok(DayReport {
        day_index: n,
        candidate_count,
        number_count: st.days[n].len() as u64,
        new_class_values: now.difference(&before).cloned().collect(),
        universe: st.days[n].clone(),
    })
}

/// Dyadics whose sign expansion has exactly `n` signs, ascending.
pub fn new_canonical_values(n: usize) -> Result<Vec<Dyadic>> {
    if n > MAX_CANONICAL_DAY {
        return Err(Error::DayTooLarge {
            requested: n,
            cap: MAX_CANONICAL_DAY,
        });
    }
    let mut v: Vec<Dyadic> = all_of_length(n).map(|e| e.to_dyadic()).collect();
    v.sort();
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeFormat {
    Dot,
    Json,
}

/// The binary tree of canonical values down to `depth`, edges labeled `+`/`-`.
pub fn export_tree(depth: usize, format: TreeFormat) -> Result<String> {
    if depth > MAX_TREE_DEPTH {
        return Err(Error::BudgetTooLarge {
            what: "tree depth",
            requested: depth,
            max: MAX_TREE_DEPTH,
        });
    }
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for len in 0..=depth {
        for e in all_of_length(len) {
            let v = e.to_dyadic();
            if let Some(&last) = e.signs().last() {
                let mut parent = e.signs().to_vec();
                parent.pop();
                let p = crate::signexp::SignExpansion::new(parent).to_dyadic();
                let label = match last {
                    crate::signexp::Sign::Plus => "+",
                    crate::signexp::Sign::Minus => "-",
                };
                edges.push((p, v.clone(), label));
            }
            nodes.push((v, e));
        }
    }
    Ok(match format {
        TreeFormat::Dot => {
            let mut out = String::from("digraph surreal {\n");
            for (v, e) in &nodes {
                let _ = writeln!(out, "  \"{v}\" [label=\"{v}\", day={}];", e.len());
            }
            for (p, c, l) in &edges {
                let _ = writeln!(out, "  \"{p}\" -> \"{c}\" [label=\"{l}\"];");
            }
            out.push_str("}\n");
            out
        }
        TreeFormat::Json => {
            let doc = json!({
                "schema": "surreal/1",
                "depth": depth,
                "nodes": nodes.iter().map(|(v, e)| json!({
                    "value": v.to_string(),
                    "day": e.len(),
                    "signs": e.to_string(),
                })).collect::<Vec<_>>(),
                "edges": edges.iter().map(|(p, c, l)| json!({
                    "from": p.to_string(),
                    "to": c.to_string(),
                    "label": l,
                })).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
    })
}
