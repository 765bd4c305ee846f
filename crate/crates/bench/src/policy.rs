//! The three ways of generating a [`Tree`] that the benchmark compares.

use std::fmt;
use std::str::FromStr;

use costgen::fixtures::Tree;
use costgen::{with_cost, GenFailure, LessArbitrary};
use rand::Rng;

use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    /// Pick `Leaf` or `Branch` with equal odds; branches get `1..=size`
    /// children, and the size never shrinks.
    Naive,
    /// Like `Naive`, but each level divides the size by the divisor, and a
    /// size of zero forces a leaf.
    SizeDivision(u32),
    /// The budgeted generator, with the size as the budget.
    Budgeted,
}

impl Policy {
    pub fn size_division(divisor: u32) -> Result<Self, BenchError> {
        if divisor < 2 {
            return Err(BenchError::Policy(format!("divisor must be at least 2, got {divisor}")));
        }
        Ok(Policy::SizeDivision(divisor))
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Naive => f.write_str("naive"),
            Policy::SizeDivision(d) => write!(f, "sizediv:{d}"),
            Policy::Budgeted => f.write_str("budgeted"),
        }
    }
}

impl FromStr for Policy {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Policy::Naive),
            "budgeted" => Ok(Policy::Budgeted),
            "sizediv" => Policy::size_division(2),
            _ => match s.strip_prefix("sizediv:") {
                Some(d) => {
                    let d = d.parse().map_err(|_| BenchError::Policy(format!("bad divisor in {s:?}")))?;
                    Policy::size_division(d)
                }
                None => Err(BenchError::Policy(format!("unknown policy {s:?}"))),
            },
        }
    }
}

/// Result of a generation run that may be cut short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Capped<T> {
    Done(T),
    /// Aborted after `steps` constructor events.
    StepCapped { steps: u64 },
}

/// Naive tree generation, without recursion so that deep or wide trees
/// cannot overflow the stack. Every constructor is one step.
pub fn naive_tree(size: u64, step_cap: u64, rng: &mut impl Rng) -> Capped<Tree> {
    let bound = size as i64;
    let mut open: Vec<(Vec<Tree>, usize)> = Vec::new();
    let mut steps = 0u64;
    loop {
        if steps == step_cap {
            return Capped::StepCapped { steps };
        }
        steps += 1;
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(1..=size.max(1)) as usize;
            open.push((Vec::with_capacity(k), k));
            continue;
        }
        let mut done = Tree::Leaf(rng.gen_range(-bound..=bound));
        loop {
            match open.last_mut() {
                None => return Capped::Done(done),
                Some((children, want)) => {
                    children.push(done);
                    if children.len() < *want {
                        break;
                    }
                    let (children, _) = open.pop().expect("non-empty");
                    done = Tree::Branch(children);
                }
            }
        }
    }
}

/// Size-divided generation: children of a node at size `n` are generated at
/// size `n / divisor`.
pub fn size_division_tree(size: u64, divisor: u32, step_cap: u64, rng: &mut impl Rng) -> Capped<Tree> {
    fn go(n: u64, divisor: u64, steps: &mut u64, cap: u64, rng: &mut impl Rng) -> Option<Tree> {
        if *steps == cap {
            return None;
        }
        *steps += 1;
        if n == 0 || rng.gen_bool(0.5) {
            let bound = n as i64;
            return Some(Tree::Leaf(rng.gen_range(-bound..=bound)));
        }
        let k = rng.gen_range(1..=n);
        let mut children = Vec::with_capacity(k as usize);
        for _ in 0..k {
            children.push(go(n / divisor, divisor, steps, cap, rng)?);
        }
        Some(Tree::Branch(children))
    }
    let mut steps = 0;
    match go(size, u64::from(divisor), &mut steps, step_cap, rng) {
        Some(t) => Capped::Done(t),
        None => Capped::StepCapped { steps },
    }
}

pub fn budgeted_tree(budget: i64, seed: u64) -> Result<Tree, GenFailure> {
    with_cost(budget, &Tree::less_arbitrary(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn policy_strings_round_trip() {
        for p in [Policy::Naive, Policy::SizeDivision(3), Policy::Budgeted] {
            assert_eq!(p.to_string().parse::<Policy>().unwrap(), p);
        }
        assert_eq!("sizediv".parse::<Policy>().unwrap(), Policy::SizeDivision(2));
        assert!("sizediv:1".parse::<Policy>().is_err());
        assert!("greedy".parse::<Policy>().is_err());
    }

    #[test]
    fn naive_counts_every_constructor() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            match naive_tree(3, 10_000, &mut rng) {
                Capped::Done(t) => assert!(t.constructors() <= 10_000),
                Capped::StepCapped { steps } => assert_eq!(steps, 10_000),
            }
        }
    }

    #[test]
    fn naive_cap_is_exact() {
        // Replaying the same seed with a larger cap shows the capped run was
        // genuinely longer.
        for seed in 0..200 {
            let small = naive_tree(25, 100, &mut ChaCha8Rng::seed_from_u64(seed));
            let big = naive_tree(25, 20_000, &mut ChaCha8Rng::seed_from_u64(seed));
            match (small, big) {
                (Capped::Done(a), Capped::Done(b)) => assert_eq!(a, b),
                (Capped::StepCapped { .. }, Capped::Done(b)) => assert!(b.constructors() > 100),
                (Capped::StepCapped { .. }, Capped::StepCapped { .. }) => {}
                (Capped::Done(_), Capped::StepCapped { .. }) => panic!("seed {seed}"),
            }
        }
    }

    #[test]
    fn size_division_depth_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let bound = (20f64).log2() + 1.0;
        for _ in 0..1_000 {
            let Capped::Done(t) = size_division_tree(20, 2, 1_000_000, &mut rng) else {
                panic!("size division must complete at size 20");
            };
            assert!(t.depth() as f64 <= bound, "depth {}", t.depth());
        }
    }

    #[test]
    fn budgeted_never_fails() {
        for seed in 0..50 {
            assert!(budgeted_tree(10_000, seed).unwrap().constructors() <= 10_000);
        }
    }
}
