//! Random generators shared by the test suites.

use rand::Rng;

use crate::cnf::CnfSurreal;
use crate::gameform::{Context, FormId};
use crate::numeric::{Dyadic, Rational};

/// A random number form born on day `max_born` or earlier, usually not canonical.
pub fn random_number<R: Rng + ?Sized>(ctx: &mut Context, rng: &mut R, max_born: u32) -> FormId {
    if max_born == 0 {
        return ctx.zero();
    }
    loop {
        let side = |ctx: &mut Context, rng: &mut R| -> Vec<FormId> {
            let n = rng.gen_range(0..=2);
            (0..n)
                .map(|_| {
                    let b = rng.gen_range(0..max_born);
                    random_number(ctx, rng, b)
                })
                .collect()
        };
        let l = side(ctx, rng);
        let r = side(ctx, rng);
        let f = ctx.form(l, r);
        if ctx.is_number(f) {
            return f;
        }
    }
}

/// `n / 2^k` with `|n| ≤ max_numerator` and `k ≤ max_exponent`.
pub fn random_dyadic<R: Rng + ?Sized>(rng: &mut R, max_numerator: i64, max_exponent: u64) -> Dyadic {
    Dyadic::new(
        rng.gen_range(-max_numerator..=max_numerator),
        rng.gen_range(0..=max_exponent),
    )
}

/// `p / q` with `|p| ≤ 9` and `1 ≤ q ≤ 9`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9))
}

/// Up to four terms, exponents nested `depth` levels deep.
pub fn random_cnf<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> CnfSurreal {
    if depth == 0 {
        return CnfSurreal::from_rational(random_rational(rng));
    }
    let n = rng.gen_range(0..=4);
    let terms = (0..n)
        .map(|_| (random_cnf(rng, depth - 1), random_rational(rng)))
        .collect();
    CnfSurreal::from_unsorted_terms(terms)
}
