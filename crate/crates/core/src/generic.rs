//! Generation driven by a [`Shape`].
//!
//! [`gen_from_shape`] charges one unit per datatype boundary and then either
//! walks the shape at random (constructors weighted by how many they stand
//! for) or, when the budget is gone, follows the statically cheapest path.
//! The walk collects field values in declaration order; a per-type assembly
//! callback turns the chosen constructor index and those values into the
//! concrete datatype.

use std::fmt;
use std::sync::Arc;

use crate::combinators::pick_weighted;
use crate::cost::{Budget, GateArm, GenContext};
use crate::error::GenFailure;
use crate::generator::{budget_gate, Generator};
use crate::shape::{FieldValue, Shape, ShapeError, ShapeKind};

// Headroom kept free before the walk grows the stack onto the heap. Types
// without a loop breaker recurse once per budget unit down to the floor.
const STACK_RED_ZONE: usize = 128 * 1024;
const STACK_SEGMENT: usize = 4 * 1024 * 1024;

/// Field values of one constructor, consumed in declaration order.
pub struct Fields {
    values: std::vec::IntoIter<FieldValue>,
}

impl Fields {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.len() == 0
    }

    /// Takes the next field value.
    ///
    /// # Panics
    ///
    /// If the fields are exhausted or the next value is not a `U`; both mean
    /// the assembly callback disagrees with its shape.
    pub fn take<U: 'static>(&mut self) -> U {
        let value = self.values.next().expect("assembly took more fields than the constructor has");
        match value.downcast::<U>() {
            Ok(v) => *v,
            Err(_) => panic!("field is not a {}", std::any::type_name::<U>()),
        }
    }
}

type Assemble<T> = dyn Fn(usize, Fields) -> T + Send + Sync;

/// A validated [`Shape`] together with the callback that builds `T` from a
/// constructor index and its fields.
pub struct DataShape<T> {
    shape: Shape,
    assemble: Arc<Assemble<T>>,
}

impl<T> Clone for DataShape<T> {
    fn clone(&self) -> Self {
        DataShape {
            shape: self.shape.clone(),
            assemble: Arc::clone(&self.assemble),
        }
    }
}

impl<T> fmt::Debug for DataShape<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DataShape").field("shape", &self.shape).finish()
    }
}

impl<T: 'static> DataShape<T> {
    /// `assemble` receives the index of the chosen constructor (in
    /// [`Shape::constructor_names`] order) and its field values.
    pub fn new(
        shape: Shape,
        assemble: impl Fn(usize, Fields) -> T + Send + Sync + 'static,
    ) -> Result<Self, ShapeError> {
        shape.validate()?;
        Ok(DataShape {
            shape,
            assemble: Arc::new(assemble),
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    fn finish(&self, con: usize, values: Vec<FieldValue>) -> T {
        (self.assemble)(
            con,
            Fields {
                values: values.into_iter(),
            },
        )
    }
}

fn data_body(shape: &Shape) -> &Shape {
    match shape.kind() {
        ShapeKind::Data(_, body) => body,
        _ => unreachable!("DataShape roots are validated"),
    }
}

/// Budgeted random generation: spend one unit, then take the costly walk if
/// budget remains, or the cheapest path if it does not.
///
/// The unit is only charged while the budget is positive. Values completed
/// after exhaustion are paid for by the nesting-depth bound of the cheapest
/// path instead, so a long list drawn just before the budget ran out does
/// not push the balance past the floor one element at a time.
pub fn gen_from_shape<T: 'static>(ds: &DataShape<T>) -> Generator<T> {
    let ds = ds.clone();
    Generator::from_fn(move |ctx| {
        stacker::maybe_grow(STACK_RED_ZONE, STACK_SEGMENT, || {
            if ctx.remaining() > Budget::ZERO {
                ctx.spend(1)?;
            } else {
                ctx.check_budget()?;
            }
            match ctx.gate()? {
                GateArm::Costly => costly(&ds, ctx),
                GateArm::Cheap => cheapest(&ds, ctx),
            }
        })
    })
}

/// Deterministic construction along the statically cheapest constructors.
///
/// Scalar fields are still drawn at random; nothing is spent, but each
/// datatype boundary crossed counts against the floor, so a type with no
/// loop breaker fails instead of recursing forever.
pub fn cheapest_from_shape<T: 'static>(ds: &DataShape<T>) -> Generator<T> {
    let ds = ds.clone();
    Generator::from_fn(move |ctx| stacker::maybe_grow(STACK_RED_ZONE, STACK_SEGMENT, || cheapest(&ds, ctx)))
}

/// Gate between `empty` and full generation, for types with a cheap neutral
/// value.
pub fn gen_monoid_shortcut<T: Clone + Send + Sync + 'static>(empty: T, ds: &DataShape<T>) -> Generator<T> {
    budget_gate(Generator::pure(empty), gen_from_shape(ds))
}

fn costly<T: 'static>(ds: &DataShape<T>, ctx: &mut GenContext) -> Result<T, GenFailure> {
    let mut values = Vec::new();
    let con = walk_costly(data_body(&ds.shape), ctx, &mut values)?;
    Ok(ds.finish(con, values))
}

fn cheapest<T: 'static>(ds: &DataShape<T>, ctx: &mut GenContext) -> Result<T, GenFailure> {
    ctx.enter_cheap()?;
    let mut values = Vec::new();
    let result = walk_cheapest(data_body(&ds.shape), ctx, &mut values);
    ctx.leave_cheap();
    Ok(ds.finish(result?, values))
}

fn walk_costly(s: &Shape, ctx: &mut GenContext, out: &mut Vec<FieldValue>) -> Result<usize, GenFailure> {
    match s.kind() {
        ShapeKind::Sum(l, r) => {
            let lw = l.constructor_count().0;
            let rw = r.constructor_count().0;
            if pick_weighted(ctx, &[lw, rw])? == 0 {
                walk_costly(l, ctx, out)
            } else {
                Ok(lw as usize + walk_costly(r, ctx, out)?)
            }
        }
        ShapeKind::Product(l, r) => {
            walk_costly(l, ctx, out)?;
            walk_costly(r, ctx, out)?;
            Ok(0)
        }
        ShapeKind::Unit => Ok(0),
        ShapeKind::Field(f) => {
            out.push(f.generator().run(ctx)?);
            Ok(0)
        }
        ShapeKind::Con(_, body) | ShapeKind::Data(_, body) => walk_costly(body, ctx, out),
    }
}

fn walk_cheapest(s: &Shape, ctx: &mut GenContext, out: &mut Vec<FieldValue>) -> Result<usize, GenFailure> {
    match s.kind() {
        ShapeKind::Sum(l, r) => {
            if l.cost() <= r.cost() {
                walk_cheapest(l, ctx, out)
            } else {
                Ok(l.constructor_count().0 as usize + walk_cheapest(r, ctx, out)?)
            }
        }
        ShapeKind::Product(l, r) => {
            walk_cheapest(l, ctx, out)?;
            walk_cheapest(r, ctx, out)?;
            Ok(0)
        }
        ShapeKind::Unit => Ok(0),
        ShapeKind::Field(f) => {
            out.push(f.cheap_generator().run(ctx)?);
            Ok(0)
        }
        ShapeKind::Con(_, body) | ShapeKind::Data(_, body) => walk_cheapest(body, ctx, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{Field, FieldClass};
    use crate::FailureKind;

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    enum Colour {
        Red,
        Green,
        Blue,
    }

    fn colour_shape() -> DataShape<Colour> {
        let shape = Shape::data(
            "Colour",
            Shape::sums(["Red", "Green", "Blue"].map(|n| Shape::con(n, Shape::unit()))),
        );
        DataShape::new(shape, |con, _| [Colour::Red, Colour::Green, Colour::Blue][con]).unwrap()
    }

    #[test]
    fn unit_only_cheapest_is_first_constructor_without_spend() {
        let ds = colour_shape();
        let mut ctx = GenContext::new(3, 5);
        assert_eq!(cheapest_from_shape(&ds).run(&mut ctx), Ok(Colour::Red));
        assert_eq!(ctx.remaining(), Budget(5));
    }

    #[test]
    fn data_boundary_spends_one() {
        let ds = colour_shape();
        let mut ctx = GenContext::new(3, 5);
        gen_from_shape(&ds).run(&mut ctx).unwrap();
        assert_eq!(ctx.remaining(), Budget(4));
    }

    #[test]
    fn nothing_is_charged_after_exhaustion() {
        let ds = colour_shape();
        let mut ctx = GenContext::new(3, 0);
        gen_from_shape(&ds).run(&mut ctx).unwrap();
        assert_eq!(ctx.remaining(), Budget(0));
        assert_eq!(ctx.spend_events(), 0);
    }

    #[test]
    fn all_constructors_reachable() {
        let g = gen_from_shape(&colour_shape());
        let mut seen = [false; 3];
        for seed in 0..200 {
            seen[g.with_cost(10, seed).unwrap() as usize] = true;
        }
        assert_eq!(seen, [true; 3]);
    }

    #[test]
    fn monoid_shortcut_gates_on_budget() {
        let ds = colour_shape();
        let g = gen_monoid_shortcut(Colour::Blue, &ds);
        assert_eq!(g.with_cost(0, 1), Ok(Colour::Blue));
        let plain = gen_from_shape(&ds);
        for seed in 0..100 {
            assert_eq!(g.with_cost(7, seed), plain.with_cost(7, seed));
        }
    }

    #[test]
    fn fields_are_delivered_in_order() {
        let shape = Shape::data(
            "Pair",
            Shape::constructor(
                "Pair",
                [
                    Field::custom(FieldClass::FlatZero, Generator::pure(1u8), Generator::pure(10u8)),
                    Field::custom(FieldClass::FlatOne, Generator::pure("two"), Generator::pure("twenty")),
                ],
            ),
        );
        let ds = DataShape::new(shape, |_, mut f| (f.take::<u8>(), f.take::<&str>())).unwrap();
        assert_eq!(gen_from_shape(&ds).with_cost(5, 0), Ok((1, "two")));
        assert_eq!(gen_from_shape(&ds).with_cost(0, 0), Ok((10, "twenty")));
    }

    #[test]
    fn invalid_shapes_are_rejected() {
        let err = DataShape::new(Shape::unit(), |_, _| ()).unwrap_err();
        assert_eq!(err, ShapeError::MissingDataRoot);
    }

    #[test]
    fn failing_field_propagates() {
        let boom = Generator::<u8>::fail(GenFailure::empty_choice("boom"));
        let shape = Shape::data(
            "Boom",
            Shape::constructor("Boom", [Field::custom(FieldClass::FlatZero, boom.clone(), boom)]),
        );
        let ds = DataShape::new(shape, |_, mut f| f.take::<u8>()).unwrap();
        let err = gen_from_shape(&ds).with_cost(3, 0).unwrap_err();
        assert_eq!(err.kind(), FailureKind::EmptyChoice);
    }
}
