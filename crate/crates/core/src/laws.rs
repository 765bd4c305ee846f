//! A small property runner and the law suites every instance should pass.
//!
//! ```
//! use costgen::fixtures::Tree;
//! use costgen::laws::{arbitrary_laws, exit_status, less_arbitrary_laws, run_laws};
//!
//! let reports = run_laws(
//!     &[("Tree", vec![arbitrary_laws::<Tree>(), less_arbitrary_laws(Tree::is_leaf)])],
//!     7,
//!     Some(50),
//! );
//! assert_eq!(exit_status(&reports), 0);
//! ```

use std::fmt::{self, Debug};

use rand::{Rng, SeedableRng};

use crate::cost::GenRng;
use crate::generator::{with_cost, Generator, LessArbitrary};
use crate::instances::Shrink;

/// Largest size handed to a law; sample `i` runs at size `i % (MAX_SIZE + 1)`.
pub const MAX_SIZE: i64 = 100;
pub const SHRINK_LAW_SAMPLES: usize = 100;
pub const CHEAPEST_LAW_SAMPLES: usize = 1000;

type CheckFn = dyn Fn(u64, i64) -> Result<(), String> + Send + Sync;

/// A named property, checked one `(seed, size)` sample at a time.
pub struct Law {
    name: String,
    default_samples: usize,
    check: Box<CheckFn>,
}

impl Law {
    /// `check` returns the counterexample text on failure.
    pub fn new(
        name: impl Into<String>,
        default_samples: usize,
        check: impl Fn(u64, i64) -> Result<(), String> + Send + Sync + 'static,
    ) -> Self {
        Law {
            name: name.into(),
            default_samples,
            check: Box::new(check),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn default_samples(&self) -> usize {
        self.default_samples
    }

    pub fn check(&self, seed: u64, size: i64) -> Result<(), String> {
        (self.check)(seed, size)
    }
}

impl Debug for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Law")
            .field("name", &self.name)
            .field("default_samples", &self.default_samples)
            .finish()
    }
}

#[derive(Debug)]
pub struct LawSuite {
    pub name: String,
    pub laws: Vec<Law>,
}

/// `v` does not appear among its own shrink candidates.
pub fn shrink_check<T: Shrink + PartialEq>(v: &T) -> bool {
    shrink_check_with(v, T::shrink)
}

pub fn shrink_check_with<T: PartialEq>(v: &T, shrinker: impl Fn(&T) -> Vec<T>) -> bool {
    !shrinker(v).contains(v)
}

/// The "does not shrink to itself" law for `T`'s canonical generator.
pub fn arbitrary_laws<T>() -> LawSuite
where
    T: LessArbitrary + Shrink + PartialEq + Debug,
{
    arbitrary_laws_with(T::less_arbitrary(), T::shrink)
}

pub fn arbitrary_laws_with<T>(
    gen: Generator<T>,
    shrinker: impl Fn(&T) -> Vec<T> + Send + Sync + 'static,
) -> LawSuite
where
    T: PartialEq + Debug + 'static,
{
    let law = Law::new("does not shrink to itself", SHRINK_LAW_SAMPLES, move |seed, size| {
        let v = with_cost(size, &gen, seed).map_err(|e| format!("generation failed: {e}"))?;
        if shrink_check_with(&v, &shrinker) {
            Ok(())
        } else {
            Err(format!("{v:?}"))
        }
    });
    LawSuite {
        name: "arbitrary".into(),
        laws: vec![law],
    }
}

/// The "always selects cheapest" law: at zero budget, `T`'s generator
/// produces only values satisfying `cheapest_pred`.
pub fn less_arbitrary_laws<T>(cheapest_pred: fn(&T) -> bool) -> LawSuite
where
    T: LessArbitrary + Debug,
{
    less_arbitrary_laws_with(T::less_arbitrary(), cheapest_pred)
}

pub fn less_arbitrary_laws_with<T>(
    gen: Generator<T>,
    cheapest_pred: impl Fn(&T) -> bool + Send + Sync + 'static,
) -> LawSuite
where
    T: Debug + 'static,
{
    let law = Law::new("always selects cheapest", CHEAPEST_LAW_SAMPLES, move |seed, _size| {
        let v = with_cost(0, &gen, seed).map_err(|e| format!("generation failed: {e}"))?;
        if cheapest_pred(&v) {
            Ok(())
        } else {
            Err(format!("{v:?}"))
        }
    });
    LawSuite {
        name: "LessArbitrary".into(),
        laws: vec![law],
    }
}

/// Outcome of one law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub group: String,
    pub suite: String,
    pub law: String,
    pub samples_run: usize,
    pub counterexample: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAIL" };
        write!(
            f,
            "{status:>4}  {}/{}: {} ({} samples)",
            self.group, self.suite, self.law, self.samples_run
        )?;
        if let Some(cx) = &self.counterexample {
            write!(f, "\n      counterexample: {cx}")?;
        }
        Ok(())
    }
}

/// Checks `law` on `samples` seeds derived from `seed`, stopping at the first
/// counterexample.
pub fn run_law(law: &Law, seed: u64, samples: usize) -> (usize, Option<String>) {
    let mut seeds = GenRng::seed_from_u64(seed);
    for i in 0..samples {
        let sample_seed: u64 = seeds.gen();
        let size = i as i64 % (MAX_SIZE + 1);
        if let Err(cx) = law.check(sample_seed, size) {
            return (i + 1, Some(cx));
        }
    }
    (samples, None)
}

/// Runs every law of every suite. `samples` overrides each law's default.
pub fn run_laws(suites: &[(&str, Vec<LawSuite>)], seed: u64, samples: Option<usize>) -> Vec<LawReport> {
    let mut reports = Vec::new();
    for (group, group_suites) in suites {
        for suite in group_suites {
            for law in &suite.laws {
                let (samples_run, counterexample) =
                    run_law(law, seed, samples.unwrap_or(law.default_samples));
                reports.push(LawReport {
                    group: (*group).to_owned(),
                    suite: suite.name.clone(),
                    law: law.name.clone(),
                    samples_run,
                    counterexample,
                });
            }
        }
    }
    reports
}

/// Process exit status for a set of reports: 0 when all passed, 1 otherwise.
pub fn exit_status(reports: &[LawReport]) -> i32 {
    if reports.iter().all(LawReport::passed) {
        0
    } else {
        1
    }
}
