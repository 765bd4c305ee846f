//! Budget-aware versions of the classic generator combinators.

use rand::distributions::uniform::SampleUniform;
use rand::Rng;

use crate::cost::{Budget, GenContext};
use crate::error::GenFailure;
use crate::generator::{budget_gate, Generator};

/// Uniform draw from `[lo, hi]`. Spends nothing.
pub fn choose<T>(lo: T, hi: T) -> Generator<T>
where
    T: SampleUniform + PartialOrd + Copy + Send + Sync + 'static,
{
    // Written as a negation so unordered floats are rejected too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(lo <= hi) {
        return Generator::fail(GenFailure::empty_choice("LessArbitrary.choose used with empty range"));
    }
    Generator::from_fn(move |ctx| Ok(ctx.rng().gen_range(lo..=hi)))
}

/// Picks one of `gens` uniformly and runs it.
pub fn oneof<T: 'static>(gens: Vec<Generator<T>>) -> Generator<T> {
    if gens.is_empty() {
        return Generator::fail(GenFailure::empty_choice("LessArbitrary.oneof used with empty list"));
    }
    Generator::from_fn(move |ctx| {
        let i = ctx.rng().gen_range(0..gens.len());
        gens[i].run(ctx)
    })
}

/// Picks one of `xs` uniformly.
pub fn elements<T: Clone + Send + Sync + 'static>(xs: Vec<T>) -> Generator<T> {
    if xs.is_empty() {
        return Generator::fail(GenFailure::empty_choice("LessArbitrary.elements used with empty list"));
    }
    Generator::from_fn(move |ctx| {
        let i = ctx.rng().gen_range(0..xs.len());
        Ok(xs[i].clone())
    })
}

/// Ordered `(weight, generator)` entries for [`frequency`].
pub type WeightedChoice<T> = Vec<(i64, Generator<T>)>;

/// Runs one of the entries, chosen with probability proportional to its weight.
///
/// Zero-weight entries are never chosen. An empty list, a negative weight or
/// an all-zero list yields a generator that fails on every run.
pub fn frequency<T: 'static>(entries: WeightedChoice<T>) -> Generator<T> {
    if entries.is_empty() {
        return Generator::fail(GenFailure::empty_choice("LessArbitrary.frequency used with empty list"));
    }
    if entries.iter().any(|(w, _)| *w < 0) {
        return Generator::fail(GenFailure::bad_weights("LessArbitrary.frequency: negative weight"));
    }
    if entries.iter().all(|(w, _)| *w == 0) {
        return Generator::fail(GenFailure::bad_weights("LessArbitrary.frequency: all weights were zero"));
    }
    let weights: Vec<u64> = entries.iter().map(|(w, _)| *w as u64).collect();
    let gens: Vec<Generator<T>> = entries.into_iter().map(|(_, g)| g).collect();
    Generator::from_fn(move |ctx| {
        let i = pick_weighted(ctx, &weights)?;
        gens[i].run(ctx)
    })
}

/// Draws `n` uniformly from `[1, total]` and walks the weights, subtracting
/// each one until `n` fits.
pub(crate) fn pick_weighted(ctx: &mut GenContext, weights: &[u64]) -> Result<usize, GenFailure> {
    let total: u64 = weights.iter().sum();
    if total == 0 {
        return Err(GenFailure::empty_choice("LessArbitrary.pick used with empty list"));
    }
    let mut n = ctx.rng().gen_range(1..=total);
    for (i, &w) in weights.iter().enumerate() {
        if n <= w {
            return Ok(i);
        }
        n -= w;
    }
    Err(GenFailure::empty_choice("LessArbitrary.pick used with empty list"))
}

/// Uniform integer in `[1, max(1, remaining)]`, for sizing collections.
pub fn budget_choose() -> Generator<i64> {
    Generator::from_fn(|ctx| {
        let hi = ctx.remaining().units().max(1);
        Ok(ctx.rng().gen_range(1..=hi))
    })
}

/// Retries `g` until `pred` holds, spending one unit per rejected draw.
///
/// A predicate that is never satisfied exhausts the floor and fails with
/// `LoopBreakerMissing` instead of looping forever.
pub fn such_that<T: 'static>(
    g: Generator<T>,
    pred: impl Fn(&T) -> bool + Send + Sync + 'static,
) -> Generator<T> {
    Generator::from_fn(move |ctx| loop {
        let value = g.run(ctx)?;
        if pred(&value) {
            return Ok(value);
        }
        ctx.spend(1)?;
    })
}

pub fn for_all<A: 'static, B: 'static>(
    g: Generator<A>,
    prop: impl Fn(A) -> Generator<B> + Send + Sync + 'static,
) -> Generator<B> {
    g.and_then(prop)
}

/// Budgeted list: empty once the budget is gone, otherwise a length drawn
/// from `[1, remaining]` that is paid for up front.
pub fn gen_list<T: 'static>(elem: Generator<T>) -> Generator<Vec<T>> {
    let costly = Generator::from_fn(move |ctx| {
        let budget = ctx.remaining().units();
        let len = ctx.rng().gen_range(1..=budget.max(1));
        ctx.spend(Budget(len))?;
        let mut out = Vec::with_capacity(len as usize);
        for _ in 0..len {
            out.push(elem.run(ctx)?);
        }
        Ok(out)
    });
    budget_gate(Generator::from_fn(|_| Ok(Vec::new())), costly)
}
