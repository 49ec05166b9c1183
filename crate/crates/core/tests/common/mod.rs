#![allow(dead_code)]

use proptest::prelude::*;
use surreal_core::gameform::{Context, FormId};

#[derive(Clone, Debug)]
pub struct Shape {
    pub left: Vec<Shape>,
    pub right: Vec<Shape>,
}

pub fn shape(depth: u32) -> BoxedStrategy<Shape> {
    let leaf = Just(Shape { left: vec![], right: vec![] }).boxed();
    if depth == 0 {
        return leaf;
    }
    let sub = shape(depth - 1);
    (
        prop::collection::vec(sub.clone(), 0..=2),
        prop::collection::vec(sub, 0..=2),
    )
        .prop_map(|(left, right)| Shape { left, right })
        .boxed()
}

/// Interns the shape, dropping right options that would break `L ≪ R`.
pub fn build(ctx: &mut Context, s: &Shape) -> FormId {
    let left: Vec<FormId> = s.left.iter().map(|c| build(ctx, c)).collect();
    let mut right = Vec::new();
    for c in &s.right {
        let r = build(ctx, c);
        if left.iter().all(|&l| !ctx.leq(r, l)) {
            right.push(r);
        }
    }
    ctx.form(left, right)
}

/// Interns the shape as is; usually not a number.
pub fn build_raw(ctx: &mut Context, s: &Shape) -> FormId {
    let left: Vec<FormId> = s.left.iter().map(|c| build_raw(ctx, c)).collect();
    let right: Vec<FormId> = s.right.iter().map(|c| build_raw(ctx, c)).collect();
    ctx.form(left, right)
}
