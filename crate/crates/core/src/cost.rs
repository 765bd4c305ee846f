//! Budget bookkeeping.
//!
//! A [`GenContext`] owns the random source and the remaining [`Budget`] of a
//! single generation run. Every constructor a generator builds is paid for by
//! [`GenContext::spend`]; once the budget is gone, [gates](crate::budget_gate)
//! route generation to the cheapest completion. The budget may go negative
//! while those cheap completions are being paid for, but never below the
//! context's floor: crossing it means the recursion has no loop breaker.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GenFailure;

/// Pseudorandom source driving every generator.
pub type GenRng = ChaCha8Rng;

/// Remaining constructor-spend units.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(pub i64);

impl Budget {
    pub const ZERO: Budget = Budget(0);

    pub fn units(self) -> i64 {
        self.0
    }
}

/// Floor used by [`GenContext::new`].
pub const DEFAULT_FLOOR: Budget = Budget(-10_000);

impl From<i64> for Budget {
    fn from(units: i64) -> Self {
        Budget(units)
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Add for Budget {
    type Output = Budget;
    fn add(self, rhs: Budget) -> Budget {
        Budget(self.0.saturating_add(rhs.0))
    }
}

impl Sub for Budget {
    type Output = Budget;
    fn sub(self, rhs: Budget) -> Budget {
        Budget(self.0.saturating_sub(rhs.0))
    }
}

impl Neg for Budget {
    type Output = Budget;
    fn neg(self) -> Budget {
        Budget(self.0.saturating_neg())
    }
}

impl AddAssign for Budget {
    fn add_assign(&mut self, rhs: Budget) {
        *self = *self + rhs;
    }
}

impl SubAssign for Budget {
    fn sub_assign(&mut self, rhs: Budget) {
        *self = *self - rhs;
    }
}

/// Which arm a budget gate selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateArm {
    Costly,
    Cheap,
}

/// A single-use generation session.
#[derive(Debug, Clone)]
pub struct GenContext {
    rng: GenRng,
    remaining: Budget,
    floor: Budget,
    spend_events: u64,
    // Datatype boundaries entered on the direct cheapest path, which are not
    // charged to `remaining` but still count against the floor.
    cheap_depth: i64,
}

impl GenContext {
    pub fn new(seed: u64, budget: impl Into<Budget>) -> Self {
        GenContext {
            rng: GenRng::seed_from_u64(seed),
            remaining: budget.into(),
            floor: DEFAULT_FLOOR,
            spend_events: 0,
            cheap_depth: 0,
        }
    }

    /// Replaces the floor.
    ///
    /// # Panics
    ///
    /// If `floor` is not negative.
    pub fn with_floor(mut self, floor: impl Into<Budget>) -> Self {
        let floor = floor.into();
        assert!(floor < Budget::ZERO, "budget floor must be negative, got {floor}");
        self.floor = floor;
        self
    }

    pub fn remaining(&self) -> Budget {
        self.remaining
    }

    pub fn floor(&self) -> Budget {
        self.floor
    }

    /// Number of [`spend`](Self::spend) calls made so far.
    pub fn spend_events(&self) -> u64 {
        self.spend_events
    }

    pub fn rng(&mut self) -> &mut GenRng {
        &mut self.rng
    }

    /// Charges `amount` units, then runs the floor check.
    pub fn spend(&mut self, amount: impl Into<Budget>) -> Result<(), GenFailure> {
        let amount = amount.into();
        debug_assert!(amount >= Budget::ZERO, "negative spend {amount}");
        self.remaining -= amount;
        self.spend_events += 1;
        self.check_budget()
    }

    /// Fails once the remaining budget is strictly below the floor.
    pub fn check_budget(&self) -> Result<(), GenFailure> {
        if self.remaining < self.floor {
            Err(GenFailure::loop_breaker_missing())
        } else {
            Ok(())
        }
    }

    /// Costly while budget is positive, cheap while it is above the floor.
    ///
    /// At exactly the floor this fails although [`check_budget`](Self::check_budget)
    /// would still pass.
    pub fn gate(&self) -> Result<GateArm, GenFailure> {
        if self.remaining > Budget::ZERO {
            Ok(GateArm::Costly)
        } else if self.remaining > self.floor {
            Ok(GateArm::Cheap)
        } else {
            Err(GenFailure::loop_breaker_missing())
        }
    }

    pub(crate) fn enter_cheap(&mut self) -> Result<(), GenFailure> {
        self.cheap_depth += 1;
        if self.remaining - Budget(self.cheap_depth) < self.floor {
            self.cheap_depth -= 1;
            return Err(GenFailure::loop_breaker_missing());
        }
        Ok(())
    }

    pub(crate) fn leave_cheap(&mut self) {
        self.cheap_depth -= 1;
    }
}
