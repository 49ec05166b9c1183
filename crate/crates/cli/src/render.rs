//! Output in the text, JSON and DOT formats.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value as Json};
use surreal_core::closure::CutApprox;
use surreal_core::embed::CutNumber;
use surreal_core::gameform::{Context, FormId};

use crate::error::{CliError, Result};
use crate::eval::{EvalResult, Payload};

/// Forms with more distinct subforms than this are summarized instead of printed.
pub const MAX_PRINTED_NODES: usize = 200;

pub const SCHEMA: &str = "surreal/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Table,
}

/// Distinct subforms of `x`, `x` first.
pub fn subforms(ctx: &Context, x: FormId) -> Vec<FormId> {
    let mut seen = BTreeMap::new();
    let mut order = vec![x];
    seen.insert(x, 0usize);
    let mut i = 0;
    while i < order.len() {
        let f = order[i];
        for &o in ctx.left(f).iter().chain(ctx.right(f)) {
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(o) {
                e.insert(order.len());
                order.push(o);
            }
        }
        i += 1;
    }
    order
}

pub fn form_text(ctx: &mut Context, x: FormId) -> String {
    let n = subforms(ctx, x).len();
    if n > MAX_PRINTED_NODES {
        let v = ctx.value(x).map(|v| v.to_string()).unwrap_or_else(|_| "?".into());
        return format!("<form with {n} subforms, born {}, value {v}>", ctx.born(x));
    }
    ctx.to_text(x)
}

fn values(v: &[impl ToString]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn bounds(lo: Option<&surreal_core::Rational>, hi: Option<&surreal_core::Rational>) -> String {
    let s = |b: Option<&surreal_core::Rational>, inf: &str| b.map_or(inf.to_string(), ToString::to_string);
    format!("({}, {})", s(lo, "-inf"), s(hi, "inf"))
}

pub fn cut_text(c: &CutApprox) -> String {
    let iv = c.interval();
    let state = if c.fixpoint { "exact" } else { "approximate" };
    format!(
        "{{{}|{}}} in {}, target {}, steps={}, {state}",
        values(&c.left_values),
        values(&c.right_values),
        bounds(iv.lower(), iv.upper()),
        c.target,
        c.steps
    )
}

pub fn real_cut_text(c: &CutNumber) -> String {
    let iv = c.bracket();
    let mut l = c.left_values.clone();
    let mut r = c.right_values.clone();
    l.sort();
    l.dedup();
    r.sort();
    r.dedup();
    format!(
        "{{{}|{}}} in {}, target {}, depth {}",
        values(&l),
        values(&r),
        bounds(iv.lower(), iv.upper()),
        c.target,
        c.depth
    )
}

pub fn text(ctx: &mut Context, r: &EvalResult) -> String {
    match &r.payload {
        Payload::Form(f) => form_text(ctx, *f),
        Payload::Number(q) => q.to_string(),
        Payload::Signs(s) if s.is_empty() => "(empty)".to_string(),
        Payload::Signs(s) => s.to_string(),
        Payload::Cnf(c) => c.to_string(),
        Payload::Cut(c) => cut_text(c),
        Payload::RealCut(c) => real_cut_text(c),
    }
}

fn payload_json(ctx: &mut Context, p: &Payload) -> Json {
    match p {
        Payload::Form(f) => {
            let n = subforms(ctx, *f).len();
            json!({
                "form": if n <= MAX_PRINTED_NODES { ctx.to_json(*f) } else { Json::Null },
                "text": form_text(ctx, *f),
                "born": ctx.born(*f),
                "value": ctx.value(*f).ok().map(|v| v.to_string()),
            })
        }
        Payload::Number(q) => json!({ "value": q.to_string() }),
        Payload::Signs(s) => json!({ "signs": s.to_string(), "value": s.to_dyadic().to_string() }),
        Payload::Cnf(c) => json!({
            "text": c.to_string(),
            "terms": c.terms().iter().map(|(e, r)| json!([e.to_string(), r.to_string()])).collect::<Vec<_>>(),
        }),
        Payload::Cut(c) => c.to_json(),
        Payload::RealCut(c) => c.to_json(),
    }
}

pub fn json(ctx: &mut Context, r: &EvalResult) -> Json {
    json!({
        "schema": SCHEMA,
        "layer": r.layer.to_string(),
        "result": payload_json(ctx, &r.payload),
        "provenance": r.provenance,
    })
}

/// The subform DAG, edges labeled `L` and `R`.
pub fn dot(ctx: &mut Context, x: FormId) -> Result<String> {
    let nodes = subforms(ctx, x);
    if nodes.len() > MAX_PRINTED_NODES * 10 {
        return Err(CliError::Unsupported(format!("form has {} subforms", nodes.len())));
    }
    let index: BTreeMap<FormId, usize> = nodes.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut out = String::from("digraph form {\n");
    for (i, &f) in nodes.iter().enumerate() {
        let label = match ctx.value(f) {
            Ok(v) if ctx.is_canonical(f) => v.to_string(),
            Ok(v) => format!("= {v}"),
            Err(_) => "?".to_string(),
        };
        let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
    }
    for (i, &f) in nodes.iter().enumerate() {
        for (side, opts) in [("L", ctx.left(f)), ("R", ctx.right(f))] {
            for o in opts {
                let _ = writeln!(out, "  n{i} -> n{} [label=\"{side}\"];", index[o]);
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Renders an evaluation result in `format`. `table` falls back to text.
pub fn render(ctx: &mut Context, r: &EvalResult, format: Format) -> Result<String> {
    match format {
        Format::Text | Format::Table => Ok(text(ctx, r)),
        Format::Json => Ok(json(ctx, r).to_string()),
        Format::Dot => match r.payload {
            Payload::Form(f) => dot(ctx, f),
            _ => Err(CliError::Unsupported("dot output needs a game form".to_string())),
        },
    }
}
