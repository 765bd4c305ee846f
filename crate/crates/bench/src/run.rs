use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::policy::{budgeted_tree, naive_tree, size_division_tree, Capped, Policy};
use crate::BenchError;

/// Runs per size that are executed and thrown away before measuring.
pub const WARM_UP_RUNS: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Completed,
    StepCapped,
    Failed,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Completed => "completed",
            Outcome::StepCapped => "step_capped",
            Outcome::Failed => "failed",
        })
    }
}

impl FromStr for Outcome {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "completed" => Ok(Outcome::Completed),
            "step_capped" => Ok(Outcome::StepCapped),
            "failed" => Ok(Outcome::Failed),
            _ => Err(BenchError::Parse(format!("unknown outcome {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRecord {
    pub policy: Policy,
    /// Size parameter, or budget for [`Policy::Budgeted`].
    pub size: u64,
    pub sample: u32,
    /// Constructors built, or steps taken before the cap.
    pub constructors: u64,
    pub nanos: u64,
    pub outcome: Outcome,
}

/// One generation run, timed with a monotonic clock. Only the generation
/// itself is timed; counting and dropping the tree are not.
pub fn run_one(policy: Policy, size: u64, seed: u64, step_cap: u64) -> (u64, u64, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let result = match policy {
        Policy::Naive => Ok(naive_tree(size, step_cap, &mut rng)),
        Policy::SizeDivision(d) => Ok(size_division_tree(size, d, step_cap, &mut rng)),
        Policy::Budgeted => budgeted_tree(size as i64, seed).map(Capped::Done),
    };
    let nanos = start.elapsed().as_nanos() as u64;
    match result {
        Ok(Capped::Done(tree)) => (tree.constructors(), nanos, Outcome::Completed),
        Ok(Capped::StepCapped { steps }) => (steps, nanos, Outcome::StepCapped),
        Err(_) => (0, nanos, Outcome::Failed),
    }
}

/// `samples_per_size` timed runs for each size, preceded by
/// [`WARM_UP_RUNS`] discarded ones. Per-run seeds are drawn from `seed`, so
/// the whole table is reproducible apart from the timings.
pub fn run_bench(
    policy: Policy,
    sizes: &[u64],
    samples_per_size: u32,
    seed: u64,
    step_cap: u64,
) -> Result<Vec<RunRecord>, BenchError> {
    if step_cap == 0 && policy != Policy::Budgeted {
        return Err(BenchError::Policy("step cap must be positive".into()));
    }
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(sizes.len() * samples_per_size as usize);
    for &size in sizes {
        for _ in 0..WARM_UP_RUNS {
            run_one(policy, size, seeds.gen(), step_cap);
        }
        for sample in 0..samples_per_size {
            let (constructors, nanos, outcome) = run_one(policy, size, seeds.gen(), step_cap);
            records.push(RunRecord {
                policy,
                size,
                sample,
                constructors,
                nanos,
                outcome,
            });
        }
    }
    Ok(records)
}

/// Median of `xs` (mean of the middle pair for even lengths); `None` when
/// empty.
pub fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[mid] } else { (v[mid - 1] + v[mid]) / 2.0 })
}

/// Ordinary least squares `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(points: &[(f64, f64)]) -> Option<LinearFit> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}
