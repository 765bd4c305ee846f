//! Sum-of-products descriptions of datatypes and the static analyses over them.
//!
//! A [`Shape`] is built once per datatype and never changes afterwards. Its
//! constructor count ([`sum_len`]) and minimum completion cost ([`cheapness`])
//! are computed on construction and cached on every node, so generation only
//! ever reads them.
//!
//! Fields that refer to other datatypes (including the one being described)
//! are costed at a flat `1` and never entered, which is what keeps the
//! analysis finite for recursive and mutually recursive types.

use std::any::Any;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::generator::{Generator, LessArbitrary};

/// Static cost class of a constructor field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldClass {
    /// Machine integers, floats, booleans, decimal scalars.
    FlatZero,
    /// Text and other scalars outside the zero-cost set.
    FlatOne,
    /// Any other datatype.
    Reference,
}

impl FieldClass {
    pub fn cost(self) -> CostEstimate {
        match self {
            FieldClass::FlatZero => CostEstimate(0),
            FieldClass::FlatOne | FieldClass::Reference => CostEstimate(1),
        }
    }
}

/// Static minimum cost of completing a shape branch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CostEstimate(pub u64);

/// Number of constructors under a sum spine. Always at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConCount(pub u64);

/// A type-erased field value.
pub type FieldValue = Box<dyn Any>;

/// A constructor argument: its cost class plus the generators that fill it.
#[derive(Clone)]
pub struct Field {
    class: FieldClass,
    type_name: &'static str,
    gen: Generator<FieldValue>,
    cheap: Generator<FieldValue>,
}

impl Field {
    /// A field of type `T`, generated by `T`'s canonical generators.
    pub fn of<T: LessArbitrary>() -> Field {
        Field {
            class: T::FIELD_CLASS,
            type_name: std::any::type_name::<T>(),
            gen: Generator::lazy(|| T::less_arbitrary().map(|v| Box::new(v) as FieldValue)),
            cheap: Generator::lazy(|| T::cheapest().map(|v| Box::new(v) as FieldValue)),
        }
    }

    /// A field with explicit generators. `cheap` is used once the budget is
    /// exhausted and should not spend.
    pub fn custom<T: 'static>(class: FieldClass, gen: Generator<T>, cheap: Generator<T>) -> Field {
        Field {
            class,
            type_name: std::any::type_name::<T>(),
            gen: gen.map(|v| Box::new(v) as FieldValue),
            cheap: cheap.map(|v| Box::new(v) as FieldValue),
        }
    }

    pub fn class(&self) -> FieldClass {
        self.class
    }

    pub fn type_name(&self) -> &'static str {
        self.type_name
    }

    pub(crate) fn generator(&self) -> &Generator<FieldValue> {
        &self.gen
    }

    pub(crate) fn cheap_generator(&self) -> &Generator<FieldValue> {
        &self.cheap
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("class", &self.class)
            .field("type", &self.type_name)
            .finish()
    }
}

#[derive(Debug)]
pub enum ShapeKind {
    /// Choice between constructor groups.
    Sum(Shape, Shape),
    /// Sequence of fields.
    Product(Shape, Shape),
    /// Body of a nullary constructor.
    Unit,
    Field(Field),
    Con(String, Shape),
    Data(String, Shape),
}

#[derive(Debug)]
struct Node {
    kind: ShapeKind,
    cheapness: CostEstimate,
    sum_len: ConCount,
}

/// Immutable structural descriptor of a datatype.
#[derive(Debug, Clone)]
pub struct Shape(Arc<Node>);

impl Shape {
    fn build(kind: ShapeKind) -> Shape {
        let cheapness = cheapness_of(&kind);
        let sum_len = sum_len_of(&kind);
        Shape(Arc::new(Node {
            kind,
            cheapness,
            sum_len,
        }))
    }

    pub fn sum(left: Shape, right: Shape) -> Shape {
        Shape::build(ShapeKind::Sum(left, right))
    }

    pub fn product(left: Shape, right: Shape) -> Shape {
        Shape::build(ShapeKind::Product(left, right))
    }

    pub fn unit() -> Shape {
        Shape::build(ShapeKind::Unit)
    }

    pub fn field(field: Field) -> Shape {
        Shape::build(ShapeKind::Field(field))
    }

    pub fn con(name: impl Into<String>, body: Shape) -> Shape {
        Shape::build(ShapeKind::Con(name.into(), body))
    }

    pub fn data(name: impl Into<String>, body: Shape) -> Shape {
        Shape::build(ShapeKind::Data(name.into(), body))
    }

    /// Balanced sum of constructors, split the way derived representations
    /// split them (left half gets `n / 2`).
    ///
    /// # Panics
    ///
    /// If `alternatives` is empty.
    pub fn sums(alternatives: impl IntoIterator<Item = Shape>) -> Shape {
        let items: Vec<Shape> = alternatives.into_iter().collect();
        assert!(!items.is_empty(), "a sum needs at least one alternative");
        balanced(&items, Shape::sum)
    }

    /// Balanced product of fields; no fields gives [`Shape::unit`].
    pub fn products(fields: impl IntoIterator<Item = Shape>) -> Shape {
        let items: Vec<Shape> = fields.into_iter().collect();
        if items.is_empty() {
            return Shape::unit();
        }
        balanced(&items, Shape::product)
    }

    /// Constructor `name` whose fields are `fields`, in order.
    pub fn constructor(name: impl Into<String>, fields: impl IntoIterator<Item = Field>) -> Shape {
        Shape::con(name, Shape::products(fields.into_iter().map(Shape::field)))
    }

    pub fn kind(&self) -> &ShapeKind {
        &self.0.kind
    }

    /// Cached [`cheapness`].
    pub fn cost(&self) -> CostEstimate {
        self.0.cheapness
    }

    /// Cached [`sum_len`].
    pub fn constructor_count(&self) -> ConCount {
        self.0.sum_len
    }

    /// Constructor names in declaration (left-to-right) order.
    pub fn constructor_names(&self) -> Vec<&str> {
        let mut names = Vec::new();
        collect_con_names(self, &mut names);
        names
    }

    /// Datatype name, if this is a `Data` node.
    pub fn data_name(&self) -> Option<&str> {
        match self.kind() {
            ShapeKind::Data(name, _) => Some(name),
            _ => None,
        }
    }

    /// Name of the constructor the cheapest walk ends at, following the
    /// left branch on ties.
    pub fn cheapest_constructor(&self) -> Option<&str> {
        match self.kind() {
            ShapeKind::Sum(l, r) => match cheapest_side(l, r) {
                Side::Left => l.cheapest_constructor(),
                Side::Right => r.cheapest_constructor(),
            },
            ShapeKind::Con(name, _) => Some(name),
            ShapeKind::Data(_, body) => body.cheapest_constructor(),
            ShapeKind::Product(..) | ShapeKind::Unit | ShapeKind::Field(_) => None,
        }
    }

    /// Checks the invariants generation relies on: a single `Data` root,
    /// sums only above constructors, and no sums or wrappers inside a
    /// constructor body.
    pub fn validate(&self) -> Result<(), ShapeError> {
        let ShapeKind::Data(_, body) = self.kind() else {
            return Err(ShapeError::MissingDataRoot);
        };
        validate_spine(body)
    }
}

fn balanced(items: &[Shape], join: fn(Shape, Shape) -> Shape) -> Shape {
    match items {
        [one] => one.clone(),
        _ => {
            let (l, r) = items.split_at(items.len() / 2);
            join(balanced(l, join), balanced(r, join))
        }
    }
}

fn collect_con_names<'a>(s: &'a Shape, out: &mut Vec<&'a str>) {
    match s.kind() {
        ShapeKind::Sum(l, r) => {
            collect_con_names(l, out);
            collect_con_names(r, out);
        }
        ShapeKind::Con(name, _) => out.push(name),
        ShapeKind::Data(_, body) => collect_con_names(body, out),
        ShapeKind::Product(..) | ShapeKind::Unit | ShapeKind::Field(_) => {}
    }
}

fn validate_spine(s: &Shape) -> Result<(), ShapeError> {
    match s.kind() {
        ShapeKind::Sum(l, r) => {
            validate_spine(l)?;
            validate_spine(r)
        }
        ShapeKind::Con(name, body) => validate_body(name, body),
        ShapeKind::Data(name, _) => Err(ShapeError::NestedData(name.clone())),
        ShapeKind::Product(..) | ShapeKind::Unit | ShapeKind::Field(_) => Err(ShapeError::MissingConstructor),
    }
}

fn validate_body(con: &str, s: &Shape) -> Result<(), ShapeError> {
    match s.kind() {
        ShapeKind::Product(l, r) => {
            validate_body(con, l)?;
            validate_body(con, r)
        }
        ShapeKind::Unit | ShapeKind::Field(_) => Ok(()),
        ShapeKind::Sum(..) | ShapeKind::Con(..) | ShapeKind::Data(..) => {
            Err(ShapeError::NestedChoice(con.to_owned()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("shape root must be a Data node")]
    MissingDataRoot,
    #[error("Data node `{0}` nested inside another shape")]
    NestedData(String),
    #[error("sum alternative is not wrapped in a constructor")]
    MissingConstructor,
    #[error("constructor `{0}` contains a sum or wrapper in its body")]
    NestedChoice(String),
}

fn sum_len_of(kind: &ShapeKind) -> ConCount {
    match kind {
        ShapeKind::Sum(l, r) => ConCount(l.0.sum_len.0 + r.0.sum_len.0),
        ShapeKind::Data(_, body) => body.0.sum_len,
        _ => ConCount(1),
    }
}

fn cheapness_of(kind: &ShapeKind) -> CostEstimate {
    match kind {
        ShapeKind::Product(l, r) => CostEstimate(l.0.cheapness.0 + r.0.cheapness.0),
        ShapeKind::Sum(l, r) => min_nat(l.0.cheapness, r.0.cheapness),
        ShapeKind::Unit => CostEstimate(0),
        ShapeKind::Field(f) => f.class.cost(),
        ShapeKind::Con(_, body) | ShapeKind::Data(_, body) => body.0.cheapness,
    }
}

/// Number of constructors: sums add up, every other node counts as one.
/// The `Data` wrapper is transparent.
pub fn sum_len(s: &Shape) -> ConCount {
    match s.kind() {
        ShapeKind::Sum(l, r) => ConCount(sum_len(l).0 + sum_len(r).0),
        ShapeKind::Data(_, body) => sum_len(body),
        _ => ConCount(1),
    }
}

/// The smaller estimate; the first one on ties.
pub fn min_nat(m: CostEstimate, n: CostEstimate) -> CostEstimate {
    if n < m {
        n
    } else {
        m
    }
}

/// Minimum completion cost: products add, sums take the minimum, fields cost
/// their class, wrappers are transparent.
pub fn cheapness(s: &Shape) -> CostEstimate {
    match s.kind() {
        ShapeKind::Product(l, r) => CostEstimate(cheapness(l).0 + cheapness(r).0),
        ShapeKind::Sum(l, r) => min_nat(cheapness(l), cheapness(r)),
        ShapeKind::Unit => CostEstimate(0),
        ShapeKind::Field(f) => f.class.cost(),
        ShapeKind::Con(_, body) | ShapeKind::Data(_, body) => cheapness(body),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Left unless the right branch is strictly cheaper.
pub fn cheapest_side(left: &Shape, right: &Shape) -> Side {
    if left.cost() <= right.cost() {
        Side::Left
    } else {
        Side::Right
    }
}

/// Type-erased test for "this value was built along the cheapest path".
pub type CheapestPred = fn(&dyn Any) -> bool;

#[derive(Debug, Clone)]
pub struct RegistryEntry {
    pub shape: Shape,
    pub cheapest_pred: Option<CheapestPred>,
}

/// Validated shapes keyed by datatype name. Built once, read-only afterwards.
#[derive(Debug, Clone, Default)]
pub struct ShapeRegistry {
    entries: BTreeMap<String, RegistryEntry>,
}

impl ShapeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `shape` under its `Data` name, replacing any previous entry.
    pub fn register(&mut self, shape: Shape, cheapest_pred: Option<CheapestPred>) -> Result<(), ShapeError> {
        shape.validate()?;
        let name = shape.data_name().ok_or(ShapeError::MissingDataRoot)?.to_owned();
        self.entries.insert(name, RegistryEntry { shape, cheapest_pred });
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.get(name)
    }

    pub fn shape(&self, name: &str) -> Option<&Shape> {
        self.get(name).map(|e| &e.shape)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `None` when `name` is unknown or has no predicate.
    pub fn is_cheapest(&self, name: &str, value: &dyn Any) -> Option<bool> {
        self.get(name)?.cheapest_pred.map(|p| p(value))
    }
}
