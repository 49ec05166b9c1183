//! The acceptance criteria, one PASS/FAIL line each, with runtime limits.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use surreal_cli::parser::parse;
use surreal_cli::{Config, Payload, Session};
use surreal_core::closure::{inv_iterate, sqrt_iterate, sqrt_iterate_seeded};
use surreal_core::cnf::{cnf_terms, inf_less, leader, omega_pow};
use surreal_core::days::{
    comp_holds, count_valid_pairs, day_with_relation, enumerate_day, export_tree, leq_graph, new_canonical_values,
    no_order, TreeFormat,
};
use surreal_core::embed::{has_empty_right_sets, s_d, s_on, s_r, OrdinalImage, RealImage};
use surreal_core::signexp::{all_of_length, lex_cmp};
use surreal_core::testing::{random_cnf, random_dyadic, random_number};
use surreal_core::{closure, CnfSurreal, Context, Dyadic, FormId, Ordinal, Rational};

type Outcome = Result<(), String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn d(s: &str) -> Dyadic {
    s.parse().unwrap()
}

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn day_combinatorics() -> Outcome {
    let mut ctx = Context::new();
    let one = enumerate_day(&mut ctx, 1).map_err(|e| e.to_string())?;
    check((one.candidate_count, one.number_count) == (4, 3), || format!("day 1: {one:?}"))?;
    let two = enumerate_day(&mut ctx, 2).map_err(|e| e.to_string())?;
    check((two.candidate_count, two.number_count) == (64, 20), || format!("day 2: {two:?}"))?;
    let want: Vec<Dyadic> = ["-2", "-1/2", "1/2", "2"].iter().map(|s| d(s)).collect();
    check(two.new_class_values == want, || format!("new classes {:?}", two.new_class_values))?;
    let mut s = Session::new(Config::default());
    let r = s.eval(&parse("born({1|})").unwrap()).map_err(|e| e.to_string())?;
    check(r.payload == Payload::Number(Rational::from_integer(2)), || format!("{r:?}"))
}

/// Pairs of subsets `(L, R)` of `{1..n}` with every element of `L` below every element of `R`.
fn subset_pairs(n: usize) -> u64 {
    let subsets: Vec<Vec<usize>> = (0..1u32 << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let mut count = 0;
    for l in &subsets {
        for r in &subsets {
            if l.iter().all(|a| r.iter().all(|b| a < b)) {
                count += 1;
            }
        }
    }
    count
}

fn candidate_formula() -> Outcome {
    for n in 1..=12usize {
        let formula = (n as u64 + 2) * (1 << (n - 1));
        let counted = count_valid_pairs(n).map_err(|e| e.to_string())?;
        let brute = subset_pairs(n);
        check(counted == formula && brute == formula, || {
            format!("n = {n}: count {counted}, brute {brute}, formula {formula}")
        })?;
    }
    Ok(())
}

fn tree_reproduction() -> Outcome {
    let dot = export_tree(3, TreeFormat::Dot).map_err(|e| e.to_string())?;
    let labels: Vec<&str> = dot
        .lines()
        .filter(|l| l.contains("day="))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let got: BTreeSet<Dyadic> = labels.iter().map(|s| d(s)).collect();
    let want: BTreeSet<Dyadic> = [
        "0", "-1", "1", "-2", "-1/2", "1/2", "2", "-3", "-3/2", "-3/4", "-1/4", "1/4", "3/4", "3/2", "3",
    ]
    .iter()
    .map(|s| d(s))
    .collect();
    check(labels.len() == 15 && got == want, || format!("tree values {labels:?}"))?;
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    check(edges.len() == 14, || format!("{} edges", edges.len()))?;
    for e in &edges {
        let parts: Vec<&str> = e.split('"').collect();
        let (p, c, label) = (d(parts[1]), d(parts[3]), parts[5]);
        let ok = match label {
            "+" => c > p,
            "-" => c < p,
            _ => false,
        };
        check(ok, || format!("edge {e}"))?;
    }
    for n in 0..=12 {
        let v = new_canonical_values(n).map_err(|e| e.to_string())?;
        check(v.len() == 1 << n, || format!("day {n}: {} new values", v.len()))?;
    }
    Ok(())
}

fn inverse_trace() -> Outcome {
    let mut ctx = Context::new();
    let five = s_d(&mut ctx, &d("5"));
    let c = inv_iterate(&mut ctx, five, 3).map_err(|e| e.to_string())?;
    let show = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    check(show(&c.left_values) == ["0", "3/16", "51/256"], || format!("left {:?}", show(&c.left_values)))?;
    check(show(&c.right_values) == ["1/4", "13/64", "205/1024"], || {
        format!("right {:?}", show(&c.right_values))
    })?;
    let (fifth, one, x) = (q("1/5"), Rational::one(), q("5"));
    for k in 1..=3 {
        let c = inv_iterate(&mut ctx, five, k).map_err(|e| e.to_string())?;
        check(c.interval().contains(&fifth), || format!("step {k}: {}", c.interval()))?;
    }
    check(c.left_values.iter().all(|l| &x * l < one), || "x·l < 1".into())?;
    check(c.right_values.iter().all(|r| &x * r > one), || "x·r > 1".into())
}

fn number_of_birthday(ctx: &mut Context, rng: &mut StdRng, max: u32) -> FormId {
    random_number(ctx, rng, max)
}

/// Operand birthdays, each at most 4, summing to at most `total`.
fn budget(rng: &mut StdRng, n: usize, total: u32) -> Vec<u32> {
    loop {
        let b: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
        if b.iter().sum::<u32>() <= total {
            return b;
        }
    }
}

fn field_axioms() -> Outcome {
    let mut r = rng(5);
    let cases = 1000;
    for case in 0..cases {
        let mut ctx = Context::new();
        let zero = ctx.zero();
        let one = ctx.form([zero], []);
        let f: Vec<FormId> = (0..3).map(|_| number_of_birthday(&mut ctx, &mut r, 4)).collect();
        let (x, y, z) = (f[0], f[1], f[2]);
        let fail = |law: &str| format!("case {case}: {law}");
        let (xy, yx) = (ctx.add(x, y), ctx.add(y, x));
        check(xy == yx, || fail("x + y = y + x"))?;
        let (l, yz) = (ctx.add(xy, z), ctx.add(y, z));
        let rr = ctx.add(x, yz);
        check(l == rr, || fail("(x + y) + z = x + (y + z)"))?;
        check(ctx.add(x, zero) == x, || fail("x + 0 = x"))?;
        let nx = ctx.neg(x);
        let s = ctx.add(x, nx);
        check(ctx.equiv(s, zero), || fail("x + (-x) ≈ 0"))?;
        check(ctx.mul(x, one) == x, || fail("x · 1 = x"))?;

        let b = budget(&mut r, 3, 5);
        let g: Vec<FormId> = b.iter().map(|&m| number_of_birthday(&mut ctx, &mut r, m)).collect();
        let (x, y, z) = (g[0], g[1], g[2]);
        let (xy, yx) = (ctx.mul(x, y), ctx.mul(y, x));
        check(xy == yx, || fail("x · y = y · x"))?;
        let yz = ctx.add(y, z);
        let lhs = ctx.mul(x, yz);
        let xz = ctx.mul(x, z);
        let rhs = ctx.add(xy, xz);
        check(ctx.equiv(lhs, rhs), || fail("x · (y + z) ≈ x·y + x·z"))?;
        let l = ctx.mul(xy, z);
        let yz = ctx.mul(y, z);
        let rr = ctx.mul(x, yz);
        check(ctx.equiv(l, rr), || fail("(x · y) · z ≈ x · (y · z)"))?;
    }
    let mut tested = 0;
    while tested < cases {
        let mut ctx = Context::new();
        let x = number_of_birthday(&mut ctx, &mut r, 4);
        let v = ctx.value(x).unwrap();
        let mag = if v < Dyadic::zero() { -v } else { v };
        if !["1/2", "1", "2"].iter().any(|s| mag == d(s)) {
            continue;
        }
        tested += 1;
        let c = closure::inverse(&mut ctx, x, 12).map_err(|e| e.to_string())?;
        let inv = match c.exact_form(&mut ctx) {
            Some(f) => ctx.value(f).unwrap(),
            None => c.extract(),
        };
        let inv = ctx.dyadic(&inv);
        let p = ctx.mul(x, inv);
        let one = ctx.form([ctx.zero()], []);
        check(ctx.equiv(p, one), || format!("x · x⁻¹ ≈ 1 for {}", ctx.to_text(x)))?;
    }
    Ok(())
}

fn oracle_homomorphism() -> Outcome {
    let mut r = rng(6);
    for case in 0..200 {
        let mut ctx = Context::new();
        let b = budget(&mut r, 2, 6);
        let x = number_of_birthday(&mut ctx, &mut r, b[0]);
        let y = number_of_birthday(&mut ctx, &mut r, b[1]);
        let (vx, vy) = (ctx.value(x).unwrap(), ctx.value(y).unwrap());
        let s = ctx.add(x, y);
        let p = ctx.mul(x, y);
        let (vs, vp) = (ctx.value(s).map_err(|e| e.to_string())?, ctx.value(p).map_err(|e| e.to_string())?);
        check(vs == &vx + &vy && vp == &vx * &vy, || {
            format!("case {case}: {vx}, {vy} gave sum {vs}, product {vp}")
        })?;
    }
    Ok(())
}

fn order_uniqueness() -> Outcome {
    let mut ctx = Context::new();
    let ord = no_order(&mut ctx, 2).map_err(|e| e.to_string())?;
    let day = day_with_relation(&mut ctx, &ord, 2).map_err(|e| e.to_string())?;
    check(day.len() == 20, || format!("{} forms on day 2", day.len()))?;
    check(ord.restrict(&day) == leq_graph(&mut ctx, &day), || "constructed order differs from ≤".into())?;
    let all: Vec<(FormId, FormId)> = day.iter().flat_map(|&x| day.iter().map(move |&y| (x, y))).collect();
    check(comp_holds(&ctx, &ord, &all), || "constructed order violates Comp".into())?;
    let mut r = rng(7);
    for _ in 0..50 {
        let (x, y) = all[r.gen_range(0..all.len())];
        let mut bad = ord.clone();
        if !bad.remove(x, y) {
            bad.insert(x, y);
        }
        check(!comp_holds(&ctx, &bad, &all), || format!("toggling ({x:?}, {y:?}) kept Comp"))?;
    }
    Ok(())
}

fn sign_expansion_order() -> Outcome {
    let all: Vec<_> = (0..=8).flat_map(all_of_length).collect();
    let values: Vec<Dyadic> = all.iter().map(|e| e.to_dyadic()).collect();
    for (a, va) in all.iter().zip(&values) {
        for (b, vb) in all.iter().zip(&values) {
            check(lex_cmp(a, b) == va.cmp(vb), || format!("{a} vs {b}"))?;
        }
    }
    Ok(())
}

fn sqrt_certificates() -> Outcome {
    let four = q("4");
    let mut prev: Option<(Rational, Rational)> = None;
    for k in 1..=6 {
        let c = sqrt_iterate_seeded(&four, vec![q("0"), q("1")], vec![], k).map_err(|e| e.to_string())?;
        check(c.left_values.iter().all(|l| l.is_negative() || l * l < four), || format!("k = {k}: l² < 4"))?;
        check(c.right_values.iter().all(|r| r * r > four), || format!("k = {k}: r² > 4"))?;
        let iv = c.interval();
        let (lo, hi) = match (iv.lower(), iv.upper()) {
            (Some(l), Some(h)) => (l.clone(), h.clone()),
            _ => return Err(format!("k = {k}: unbounded bracket {iv}")),
        };
        if k == 2 {
            check((lo.clone(), hi.clone()) == (q("13/7"), q("41/20")), || format!("k = 2: {iv}"))?;
        }
        if let Some((pl, ph)) = &prev {
            check(&lo > pl && &hi < ph, || format!("k = {k}: {iv} does not shrink"))?;
        }
        prev = Some((lo, hi));
    }
    let mut ctx = Context::new();
    let mut fixpoints = 0;
    let candidates = surreal_core::days::games(&mut ctx, 2).map_err(|e| e.to_string())?;
    for x in candidates {
        let Ok(c) = sqrt_iterate(&mut ctx, x, 6) else { continue };
        if let Some(f) = c.exact_form(&mut ctx) {
            fixpoints += 1;
            let ff = ctx.mul(f, f);
            check(ctx.equiv(ff, x), || format!("sqrt fixpoint of {}", ctx.to_text(x)))?;
        }
    }
    check(fixpoints >= 2, || format!("only {fixpoints} fixpoints"))
}

fn cnf_layer() -> Outcome {
    check(omega_pow(&CnfSurreal::zero()) == CnfSurreal::one(), || "ω^0 ≠ 1".into())?;
    let mut r = rng(10);
    for _ in 0..200 {
        let (a, b) = (random_cnf(&mut r, 1), random_cnf(&mut r, 1));
        let lhs = omega_pow(&a.add(&b));
        let rhs = omega_pow(&a).mul(&omega_pow(&b));
        check(lhs == rhs, || format!("ω^({a}) · ω^({b})"))?;
    }
    let mut samples = 0;
    while samples < 200 {
        let x = random_cnf(&mut r, 2);
        if x.is_zero() {
            continue;
        }
        samples += 1;
        let (y, c) = leader(&x).map_err(|e| e.to_string())?;
        let head = CnfSurreal::monomial(y.clone(), c);
        let residual = x.sub(&head).abs();
        check(inf_less(&residual, &omega_pow(&y)).map_err(|e| e.to_string())?, || {
            format!("residual of {x} is not infinitely below ω^({y})")
        })?;
        let terms = cnf_terms(&x);
        check(CnfSurreal::from_terms(terms.clone()) == Some(x.clone()), || format!("terms of {x}"))?;
        let mut shuffled = terms.clone();
        shuffled.reverse();
        check(CnfSurreal::from_unsorted_terms(shuffled) == x, || format!("reordered terms of {x}"))?;
        let text: CnfSurreal = x.to_string().parse().map_err(|e: surreal_core::Error| e.to_string())?;
        check(text == x, || format!("text of {x}"))?;
    }
    Ok(())
}

/// A dyadic whose sign expansion has at most `len` signs.
fn short_dyadic(rng: &mut StdRng, len: usize) -> Dyadic {
    let n = rng.gen_range(0..=len);
    let all: Vec<_> = all_of_length(n).collect();
    all[rng.gen_range(0..all.len())].to_dyadic()
}

fn embedding_laws() -> Outcome {
    let mut r = rng(11);
    for _ in 0..100 {
        let mut ctx = Context::new();
        let (a, b) = (random_dyadic(&mut r, 16, 3), random_dyadic(&mut r, 16, 3));
        let (fa, fb) = (s_d(&mut ctx, &a), s_d(&mut ctx, &b));
        let depth = r.gen_range(0..8);
        check(s_r(&mut ctx, &a.to_rational(), depth) == RealImage::Exact(fa), || format!("s_R({a}) ≠ s_D({a})"))?;
        let sum = ctx.add(fa, fb);
        let target = s_d(&mut ctx, &(&a + &b));
        check(ctx.equiv(sum, target), || format!("s_D({a} + {b})"))?;
        check(ctx.leq(fa, fb) == (a <= b), || format!("order of {a}, {b}"))?;
        let (a, b) = (short_dyadic(&mut r, 4), short_dyadic(&mut r, 2));
        let (fa, fb) = (s_d(&mut ctx, &a), s_d(&mut ctx, &b));
        let prod = ctx.mul(fa, fb);
        let target = s_d(&mut ctx, &(&a * &b));
        check(ctx.equiv(prod, target), || format!("s_D({a} · {b})"))?;
    }
    let mut ctx = Context::new();
    match s_on(&mut ctx, &Ordinal::natural(3)) {
        OrdinalImage::Form(f) => check(has_empty_right_sets(&ctx, f), || "s_On(3) has a right option".into()),
        OrdinalImage::Cnf(c) => Err(format!("s_On(3) landed on {c}")),
    }
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { name: "1 day combinatorics", limit: secs(1), run: day_combinatorics },
        Criterion { name: "2 candidate formula", limit: secs(5), run: candidate_formula },
        Criterion { name: "3 tree of canonical values", limit: None, run: tree_reproduction },
        Criterion { name: "4 inverse trace", limit: secs(1), run: inverse_trace },
        Criterion { name: "5 field axioms", limit: secs(60), run: field_axioms },
        Criterion { name: "6 oracle homomorphism", limit: None, run: oracle_homomorphism },
        Criterion { name: "7 order uniqueness", limit: secs(10), run: order_uniqueness },
        Criterion { name: "8 sign-expansion order", limit: None, run: sign_expansion_order },
        Criterion { name: "9 square-root certificates", limit: secs(5), run: sqrt_certificates },
        Criterion { name: "10 CNF layer", limit: secs(10), run: cnf_layer },
        Criterion { name: "11 embedding laws", limit: None, run: embedding_laws },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(()), Some(limit)) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(()) => println!("PASS  {:<28} {took:>10.2?}", c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:<28} {took:>10.2?}  {why}", c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

