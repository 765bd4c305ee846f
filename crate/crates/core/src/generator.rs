//! The [`Generator`] type and the budget-aware primitives built on it.

use std::fmt;
use std::sync::Arc;

use crate::cost::{Budget, GateArm, GenContext};
use crate::error::GenFailure;
use crate::shape::FieldClass;

type RunFn<T> = dyn Fn(&mut GenContext) -> Result<T, GenFailure> + Send + Sync;

/// A recipe that, run against a [`GenContext`], yields a `T` or a [`GenFailure`].
///
/// Generators are immutable and cheap to clone; all mutable state lives in
/// the context they are run against.
pub struct Generator<T>(Arc<RunFn<T>>);

impl<T> Clone for Generator<T> {
    fn clone(&self) -> Self {
        Generator(Arc::clone(&self.0))
    }
}

impl<T> fmt::Debug for Generator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Generator<")?;
        f.write_str(std::any::type_name::<T>())?;
        f.write_str(">")
    }
}

impl<T: 'static> Generator<T> {
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(&mut GenContext) -> Result<T, GenFailure> + Send + Sync + 'static,
    {
        Generator(Arc::new(f))
    }

    pub fn pure(value: T) -> Self
    where
        T: Clone + Send + Sync,
    {
        Generator::from_fn(move |_| Ok(value.clone()))
    }

    /// A generator that always fails with `failure`.
    pub fn fail(failure: GenFailure) -> Self {
        Generator::from_fn(move |_| Err(failure.clone()))
    }

    /// Defers construction of the real generator until first run.
    ///
    /// This is how recursive types refer to their own generator.
    pub fn lazy(thunk: fn() -> Generator<T>) -> Self {
        let cell = std::sync::OnceLock::new();
        Generator::from_fn(move |ctx| cell.get_or_init(thunk).run(ctx))
    }

    #[inline]
    pub fn run(&self, ctx: &mut GenContext) -> Result<T, GenFailure> {
        (self.0)(ctx)
    }

    pub fn map<U: 'static>(self, f: impl Fn(T) -> U + Send + Sync + 'static) -> Generator<U> {
        Generator::from_fn(move |ctx| self.run(ctx).map(&f))
    }

    /// Monadic bind: run `self`, then the generator `f` builds from its output.
    pub fn and_then<U: 'static>(
        self,
        f: impl Fn(T) -> Generator<U> + Send + Sync + 'static,
    ) -> Generator<U> {
        Generator::from_fn(move |ctx| {
            let value = self.run(ctx)?;
            f(value).run(ctx)
        })
    }

    /// Runs `self`, then `other`, and pairs the results.
    pub fn zip<U: 'static>(self, other: Generator<U>) -> Generator<(T, U)> {
        Generator::from_fn(move |ctx| {
            let left = self.run(ctx)?;
            let right = other.run(ctx)?;
            Ok((left, right))
        })
    }

    /// Runs `self` on a fresh context with the default floor.
    pub fn with_cost(&self, cost: i64, seed: u64) -> Result<T, GenFailure> {
        with_cost(cost, self, seed)
    }
}

/// Charges `amount` against the running context.
pub fn spend(amount: impl Into<Budget>) -> Generator<()> {
    let amount = amount.into();
    Generator::from_fn(move |ctx| ctx.spend(amount))
}

pub fn check_budget() -> Generator<()> {
    Generator::from_fn(|ctx| ctx.check_budget())
}

/// Yields the remaining budget without touching it.
pub fn current_budget() -> Generator<Budget> {
    Generator::from_fn(|ctx| Ok(ctx.remaining()))
}

/// Runs `costly` while budget remains and `cheap` once it is exhausted.
///
/// Exactly one arm runs. When the budget has reached the floor neither does,
/// and the run fails with [`LoopBreakerMissing`](crate::FailureKind::LoopBreakerMissing).
pub fn budget_gate<T: 'static>(cheap: Generator<T>, costly: Generator<T>) -> Generator<T> {
    Generator::from_fn(move |ctx| match ctx.gate()? {
        GateArm::Costly => costly.run(ctx),
        GateArm::Cheap => cheap.run(ctx),
    })
}

/// Spends one unit, then maps `f` over `g`. Use it in place of
/// [`Generator::map`] when `f` is a recursive constructor.
pub fn spend_marked_map<T: 'static, U: 'static>(
    f: impl Fn(T) -> U + Send + Sync + 'static,
    g: Generator<T>,
) -> Generator<U> {
    Generator::from_fn(move |ctx| {
        ctx.spend(1)?;
        g.run(ctx).map(&f)
    })
}

/// Runs `g` with a starting budget of `cost` under `seed`.
///
/// A zero or negative `cost` sends every gate to its cheap arm.
pub fn with_cost<T: 'static>(cost: i64, g: &Generator<T>, seed: u64) -> Result<T, GenFailure> {
    g.run(&mut GenContext::new(seed, cost))
}

/// A generator adapted to a sized property runner: the runner's size is the
/// starting budget.
#[derive(Debug, Clone)]
pub struct SizedRunner<T> {
    generator: Generator<T>,
}

impl<T: 'static> SizedRunner<T> {
    pub fn run(&self, size: i64, seed: u64) -> Result<T, GenFailure> {
        with_cost(size, &self.generator, seed)
    }

    pub fn generator(&self) -> &Generator<T> {
        &self.generator
    }
}

pub fn sized_cost<T: 'static>(g: Generator<T>) -> SizedRunner<T> {
    SizedRunner { generator: g }
}

/// Types with a canonical budgeted generator.
pub trait LessArbitrary: Sized + 'static {
    /// Static cost class of a field of this type.
    const FIELD_CLASS: FieldClass = FieldClass::Reference;

    fn less_arbitrary() -> Generator<Self>;

    /// The generator used once the budget is exhausted.
    ///
    /// Defaults to [`less_arbitrary`](Self::less_arbitrary), whose own gate
    /// already picks the cheap arm at that point.
    fn cheapest() -> Generator<Self> {
        Self::less_arbitrary()
    }
}

/// `T`'s canonical generator as a sized runner.
pub fn faster_arbitrary<T: LessArbitrary>() -> SizedRunner<T> {
    sized_cost(T::less_arbitrary())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::FailureKind;

    fn remaining_after<T: 'static>(g: &Generator<T>, budget: i64) -> (Result<T, GenFailure>, Budget) {
        let mut ctx = GenContext::new(7, budget);
        let out = g.run(&mut ctx);
        (out, ctx.remaining())
    }

    #[test]
    fn gate_picks_costly_with_budget() {
        let g = budget_gate(Generator::pure("cheap"), Generator::pure("costly"));
        assert_eq!(remaining_after(&g, 1).0, Ok("costly"));
        assert_eq!(remaining_after(&g, 0).0, Ok("cheap"));
        let err = remaining_after(&g, -10_000).0.unwrap_err();
        assert_eq!(err.kind(), FailureKind::LoopBreakerMissing);
        assert_eq!(err.detail(), "Recursive structure with no loop breaker.");
    }

    #[test]
    fn current_budget_reads_without_spending() {
        assert_eq!(remaining_after(&current_budget(), 7), (Ok(Budget(7)), Budget(7)));
        assert_eq!(remaining_after(&current_budget(), -5).0, Ok(Budget(-5)));
        let g = spend(3).and_then(|()| current_budget());
        assert_eq!(remaining_after(&g, 7).0, Ok(Budget(4)));
    }

    #[test]
    fn spend_marked_map_charges_one() {
        let g = spend_marked_map(|x: i32| x + 1, Generator::pure(41));
        assert_eq!(remaining_after(&g, 3), (Ok(42), Budget(2)));
        let err = remaining_after(&g, -10_000).0.unwrap_err();
        assert_eq!(err.kind(), FailureKind::LoopBreakerMissing);
    }

    #[test]
    fn pure_ignores_context() {
        for cost in [-3, 0, 1, 1_000] {
            assert_eq!(with_cost(cost, &Generator::pure(42), cost as u64), Ok(42));
        }
    }

    #[test]
    fn sized_runner_is_with_cost() {
        let g = current_budget();
        assert_eq!(sized_cost(g.clone()).run(10, 3), with_cost(10, &g, 3));
        assert_eq!(sized_cost(g).run(0, 3), Ok(Budget(0)));
    }

    #[test]
    fn lazy_resolves_once() {
        fn answer() -> Generator<u8> {
            Generator::pure(42)
        }
        let g = Generator::lazy(answer);
        assert_eq!(g.with_cost(0, 0), Ok(42));
        assert_eq!(g.with_cost(5, 1), Ok(42));
    }
}
