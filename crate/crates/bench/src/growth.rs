//! Branching-process model of naive recursive generation.
//!
//! A generator that picks each constructor uniformly and never shrinks its
//! size parameter is a Galton-Watson process: every node independently has
//! `K` children, where `K` is the recursive-reference count of the chosen
//! constructor. With mean offspring `r`, the expected number of nodes down to
//! depth `d` is `1 + r + r^2 + ... + r^d`, which is unbounded in `d` once
//! `r >= 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::BenchError;

/// Recursive references made by one constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefCount {
    Fixed(u64),
    /// Uniform over `lo..=hi`, as produced by a list whose length is drawn
    /// from a range.
    Uniform { lo: u64, hi: u64 },
}

impl RefCount {
    pub fn mean(self) -> f64 {
        match self {
            RefCount::Fixed(k) => k as f64,
            RefCount::Uniform { lo, hi } => (lo + hi) as f64 / 2.0,
        }
    }

    fn draw(self, rng: &mut impl Rng) -> u64 {
        match self {
            RefCount::Fixed(k) => k,
            RefCount::Uniform { lo, hi } => rng.gen_range(lo..=hi),
        }
    }

    /// Probability generating function `E[s^K]`.
    fn pgf(self, s: f64) -> f64 {
        match self {
            RefCount::Fixed(k) => s.powi(k as i32),
            RefCount::Uniform { lo, hi } => {
                let n = (hi - lo + 1) as f64;
                (lo..=hi).map(|k| s.powi(k as i32)).sum::<f64>() / n
            }
        }
    }
}

/// Constructors of a datatype, each chosen with equal probability.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthModel {
    constructors: Vec<RefCount>,
}

impl GrowthModel {
    pub fn new(constructors: Vec<RefCount>) -> Result<Self, BenchError> {
        if constructors.is_empty() {
            return Err(BenchError::Model("a growth model needs at least one constructor".into()));
        }
        if let Some(RefCount::Uniform { lo, hi }) =
            constructors.iter().find(|c| matches!(c, RefCount::Uniform { lo, hi } if lo > hi))
        {
            return Err(BenchError::Model(format!("empty reference range {lo}..={hi}")));
        }
        Ok(GrowthModel { constructors })
    }

    /// The list-children tree under a naive generator at `size`: a leaf, or
    /// a branch with `1..=size` children.
    pub fn naive_tree(size: u64) -> Self {
        GrowthModel {
            constructors: vec![RefCount::Fixed(0), RefCount::Uniform { lo: 1, hi: size.max(1) }],
        }
    }

    pub fn constructors(&self) -> &[RefCount] {
        &self.constructors
    }

    /// Average number of recursive references over all constructors.
    pub fn mean_branching(&self) -> f64 {
        self.constructors.iter().map(|c| c.mean()).sum::<f64>() / self.constructors.len() as f64
    }

    fn draw_children(&self, rng: &mut impl Rng) -> u64 {
        let c = self.constructors[rng.gen_range(0..self.constructors.len())];
        c.draw(rng)
    }

    /// Probability that the untruncated process dies out: the smallest fixed
    /// point of the offspring generating function, found by iterating from 0.
    pub fn extinction_probability(&self) -> f64 {
        let n = self.constructors.len() as f64;
        let mut q = 0.0;
        for _ in 0..10_000 {
            let next = self.constructors.iter().map(|c| c.pgf(q)).sum::<f64>() / n;
            if (next - q).abs() < 1e-15 {
                return next;
            }
            q = next;
        }
        q
    }
}

/// `sum_{d=0}^{depth_cap} r^d`.
pub fn expected_size(model: &GrowthModel, depth_cap: u32) -> f64 {
    let r = model.mean_branching();
    let mut total = 0.0;
    let mut term = 1.0;
    for _ in 0..=depth_cap {
        total += term;
        term *= r;
    }
    total
}

/// One simulated process, expanded generation by generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simulation {
    /// Nodes created, capped at `node_cap`.
    pub nodes: u64,
    /// The process would have created at least `node_cap` nodes.
    pub capped: bool,
}

/// Simulates one process truncated at `depth_cap` (`None` for no depth
/// limit). Stops early once the created plus still-pending nodes reach
/// `node_cap`, since every pending node would be created eventually.
pub fn simulate(model: &GrowthModel, depth_cap: Option<u32>, node_cap: u64, rng: &mut impl Rng) -> Simulation {
    let mut nodes = 1u64;
    let mut frontier = 1u64;
    let mut depth = 0u32;
    while frontier > 0 {
        if nodes >= node_cap {
            return Simulation { nodes: node_cap, capped: true };
        }
        if depth_cap.is_some_and(|cap| depth >= cap) {
            break;
        }
        let mut next = 0u64;
        for _ in 0..frontier {
            next += model.draw_children(rng);
            if nodes + next >= node_cap {
                return Simulation { nodes: node_cap, capped: true };
            }
        }
        nodes += next;
        frontier = next;
        depth += 1;
    }
    Simulation { nodes, capped: false }
}

/// Mean simulated size at `depth_cap` over `runs` processes.
pub fn monte_carlo_size(model: &GrowthModel, depth_cap: u32, runs: u32, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total: f64 = (0..runs)
        .map(|_| simulate(model, Some(depth_cap), u64::MAX, &mut rng).nodes as f64)
        .sum();
    total / f64::from(runs)
}

/// Fraction of `runs` untruncated processes that reach `node_cap` nodes.
pub fn survival_fraction(model: &GrowthModel, node_cap: u64, runs: u32, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let survived = (0..runs).filter(|_| simulate(model, None, node_cap, &mut rng).capped).count();
    survived as f64 / f64::from(runs)
}
