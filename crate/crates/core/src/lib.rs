//! Random test-data generation that pays for every constructor it builds.
//!
//! Each run carries an integer budget. Recursive datatypes spend one unit per
//! constructor, collections spend their length, and once the budget reaches
//! zero every generator falls back to the statically cheapest way of
//! finishing the value. Generation therefore stops after a number of steps
//! linear in the budget, whatever the branching factor of the type.
//!
//! ```
//! use costgen::fixtures::Tree;
//! use costgen::{with_cost, LessArbitrary};
//!
//! let tree = with_cost(500, &Tree::less_arbitrary(), 42).unwrap();
//! assert!(tree.constructors() <= 2 * 500 + 1);
//!
//! // Out of budget: the cheapest constructor is chosen.
//! assert!(with_cost(0, &Tree::less_arbitrary(), 42).unwrap().is_leaf());
//! ```

pub mod combinators;
pub mod cost;
pub mod error;
pub mod fixtures;
pub mod generator;
pub mod generic;
pub mod instances;
pub mod laws;
pub mod shape;

pub use combinators::{
    budget_choose, choose, elements, for_all, frequency, gen_list, oneof, such_that, WeightedChoice,
};
pub use cost::{Budget, GateArm, GenContext, GenRng, DEFAULT_FLOOR};
pub use error::{FailureKind, GenFailure, LOOP_BREAKER_MESSAGE};
pub use generator::{
    budget_gate, check_budget, current_budget, faster_arbitrary, sized_cost, spend, spend_marked_map,
    with_cost, Generator, LessArbitrary, SizedRunner,
};
pub use generic::{cheapest_from_shape, gen_from_shape, gen_monoid_shortcut, DataShape, Fields};
pub use instances::{gen_container, gen_pair, Scientific, Shrink};
pub use shape::{cheapness, sum_len, ConCount, CostEstimate, Field, FieldClass, Shape, ShapeKind, ShapeRegistry};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/budgets.md")]
    mod budgets {}
    #[doc = include_str!("../../../book/src/combinators.md")]
    mod combinators {}
    #[doc = include_str!("../../../book/src/shapes.md")]
    mod shapes {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/laws.md")]
    mod laws {}
}
