//! Datatypes used by the tests, the law runner and the benchmarks.
//!
//! * [`Tree`]: a rose tree whose branches hold a list of children.
//! * [`Expr`] / [`Stmt`]: a small mutually recursive syntax tree, seven
//!   constructors in total. Real compiler ASTs are much wider; this one is a
//!   scale model.
//! * [`NoBreaker`]: a type with no finite values. Generating it must fail.

use std::any::Any;
use std::sync::OnceLock;

use crate::generator::{Generator, LessArbitrary};
use crate::generic::{cheapest_from_shape, gen_from_shape, DataShape};
use crate::instances::{shrink_slice, Shrink};
use crate::shape::{Field, Shape, ShapeRegistry};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(i64),
    Branch(Vec<Tree>),
}

impl Tree {
    pub fn data_shape() -> &'static DataShape<Tree> {
        static DS: OnceLock<DataShape<Tree>> = OnceLock::new();
        DS.get_or_init(|| {
            let shape = Shape::data(
                "Tree",
                Shape::sums([
                    Shape::constructor("Leaf", [Field::of::<i64>()]),
                    Shape::constructor("Branch", [Field::of::<Vec<Tree>>()]),
                ]),
            );
            DataShape::new(shape, |con, mut f| match con {
                0 => Tree::Leaf(f.take()),
                _ => Tree::Branch(f.take()),
            })
            .expect("Tree shape is well formed")
        })
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    /// Number of `Leaf` and `Branch` nodes.
    pub fn constructors(&self) -> u64 {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            count += 1;
            if let Tree::Branch(ts) = t {
                stack.extend(ts);
            }
        }
        count
    }

    /// Edges on the longest root-to-leaf path.
    pub fn depth(&self) -> u64 {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Branch(ts) => ts.iter().map(|t| t.depth() + 1).max().unwrap_or(0),
        }
    }
}

impl LessArbitrary for Tree {
    fn less_arbitrary() -> Generator<Self> {
        gen_from_shape(Self::data_shape())
    }

    fn cheapest() -> Generator<Self> {
        cheapest_from_shape(Self::data_shape())
    }
}

impl Shrink for Tree {
    fn shrink(&self) -> Vec<Self> {
        match self {
            Tree::Leaf(x) => x.shrink().into_iter().map(Tree::Leaf).collect(),
            Tree::Branch(ts) => {
                let mut out = vec![Tree::Leaf(0)];
                out.extend(ts.iter().cloned());
                out.extend(shrink_slice(ts).into_iter().map(Tree::Branch));
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Lit(i64),
    Var(String),
    Call(String, Vec<Expr>),
    Block(Vec<Stmt>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Stmt {
    ExprStmt(Expr),
    If(Expr, Vec<Stmt>, Vec<Stmt>),
    While(Expr, Vec<Stmt>),
}

impl Expr {
    pub fn data_shape() -> &'static DataShape<Expr> {
        static DS: OnceLock<DataShape<Expr>> = OnceLock::new();
        DS.get_or_init(|| {
            let shape = Shape::data(
                "Expr",
                Shape::sums([
                    Shape::constructor("Lit", [Field::of::<i64>()]),
                    Shape::constructor("Var", [Field::of::<String>()]),
                    Shape::constructor("Call", [Field::of::<String>(), Field::of::<Vec<Expr>>()]),
                    Shape::constructor("Block", [Field::of::<Vec<Stmt>>()]),
                ]),
            );
            DataShape::new(shape, |con, mut f| match con {
                0 => Expr::Lit(f.take()),
                1 => Expr::Var(f.take()),
                2 => Expr::Call(f.take(), f.take()),
                _ => Expr::Block(f.take()),
            })
            .expect("Expr shape is well formed")
        })
    }

    pub fn is_lit(&self) -> bool {
        matches!(self, Expr::Lit(_))
    }

    pub fn constructors(&self) -> u64 {
        1 + match self {
            Expr::Lit(_) | Expr::Var(_) => 0,
            Expr::Call(_, args) => args.iter().map(Expr::constructors).sum(),
            Expr::Block(body) => body.iter().map(Stmt::constructors).sum(),
        }
    }

    /// Names of the constructors used anywhere in this expression.
    pub fn visit_constructors(&self, seen: &mut impl FnMut(&'static str)) {
        match self {
            Expr::Lit(_) => seen("Lit"),
            Expr::Var(_) => seen("Var"),
            Expr::Call(_, args) => {
                seen("Call");
                args.iter().for_each(|a| a.visit_constructors(seen));
            }
            Expr::Block(body) => {
                seen("Block");
                body.iter().for_each(|s| s.visit_constructors(seen));
            }
        }
    }
}

impl Stmt {
    pub fn data_shape() -> &'static DataShape<Stmt> {
        static DS: OnceLock<DataShape<Stmt>> = OnceLock::new();
        DS.get_or_init(|| {
            let shape = Shape::data(
                "Stmt",
                Shape::sums([
                    Shape::constructor("ExprStmt", [Field::of::<Expr>()]),
                    Shape::constructor(
                        "If",
                        [Field::of::<Expr>(), Field::of::<Vec<Stmt>>(), Field::of::<Vec<Stmt>>()],
                    ),
                    Shape::constructor("While", [Field::of::<Expr>(), Field::of::<Vec<Stmt>>()]),
                ]),
            );
            DataShape::new(shape, |con, mut f| match con {
                0 => Stmt::ExprStmt(f.take()),
                1 => Stmt::If(f.take(), f.take(), f.take()),
                _ => Stmt::While(f.take(), f.take()),
            })
            .expect("Stmt shape is well formed")
        })
    }

    /// `ExprStmt(Lit(_))`, the value the cheapest path builds.
    pub fn is_cheapest(&self) -> bool {
        matches!(self, Stmt::ExprStmt(Expr::Lit(_)))
    }

    pub fn constructors(&self) -> u64 {
        1 + match self {
            Stmt::ExprStmt(e) => e.constructors(),
            Stmt::If(c, t, e) => {
                c.constructors() + t.iter().chain(e).map(Stmt::constructors).sum::<u64>()
            }
            Stmt::While(c, b) => c.constructors() + b.iter().map(Stmt::constructors).sum::<u64>(),
        }
    }

    pub fn visit_constructors(&self, seen: &mut impl FnMut(&'static str)) {
        match self {
            Stmt::ExprStmt(e) => {
                seen("ExprStmt");
                e.visit_constructors(seen);
            }
            Stmt::If(c, t, e) => {
                seen("If");
                c.visit_constructors(seen);
                t.iter().chain(e).for_each(|s| s.visit_constructors(seen));
            }
            Stmt::While(c, b) => {
                seen("While");
                c.visit_constructors(seen);
                b.iter().for_each(|s| s.visit_constructors(seen));
            }
        }
    }
}

impl LessArbitrary for Expr {
    fn less_arbitrary() -> Generator<Self> {
        gen_from_shape(Self::data_shape())
    }

    fn cheapest() -> Generator<Self> {
        cheapest_from_shape(Self::data_shape())
    }
}

impl LessArbitrary for Stmt {
    fn less_arbitrary() -> Generator<Self> {
        gen_from_shape(Self::data_shape())
    }

    fn cheapest() -> Generator<Self> {
        cheapest_from_shape(Self::data_shape())
    }
}

impl Shrink for Expr {
    fn shrink(&self) -> Vec<Self> {
        match self {
            Expr::Lit(x) => x.shrink().into_iter().map(Expr::Lit).collect(),
            Expr::Var(name) => {
                let mut out = vec![Expr::Lit(0)];
                out.extend(name.shrink().into_iter().map(Expr::Var));
                out
            }
            Expr::Call(name, args) => {
                let mut out = vec![Expr::Lit(0)];
                out.extend(args.iter().cloned());
                out.extend(shrink_slice(args).into_iter().map(|a| Expr::Call(name.clone(), a)));
                out.extend(name.shrink().into_iter().map(|n| Expr::Call(n, args.clone())));
                out
            }
            Expr::Block(body) => {
                let mut out = vec![Expr::Lit(0)];
                out.extend(shrink_slice(body).into_iter().map(Expr::Block));
                out
            }
        }
    }
}

impl Shrink for Stmt {
    fn shrink(&self) -> Vec<Self> {
        match self {
            Stmt::ExprStmt(e) => e.shrink().into_iter().map(Stmt::ExprStmt).collect(),
            Stmt::If(c, t, e) => {
                let mut out = vec![Stmt::ExprStmt(c.clone())];
                out.extend(t.iter().chain(e).cloned());
                out.extend(c.shrink().into_iter().map(|c| Stmt::If(c, t.clone(), e.clone())));
                out.extend(shrink_slice(t).into_iter().map(|t| Stmt::If(c.clone(), t, e.clone())));
                out.extend(shrink_slice(e).into_iter().map(|e| Stmt::If(c.clone(), t.clone(), e)));
                out
            }
            Stmt::While(c, b) => {
                let mut out = vec![Stmt::ExprStmt(c.clone())];
                out.extend(b.iter().cloned());
                out.extend(c.shrink().into_iter().map(|c| Stmt::While(c, b.clone())));
                out.extend(shrink_slice(b).into_iter().map(|b| Stmt::While(c.clone(), b)));
                out
            }
        }
    }
}

/// `X(NoBreaker)` and nothing else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoBreaker(pub Box<NoBreaker>);

impl NoBreaker {
    pub fn data_shape() -> &'static DataShape<NoBreaker> {
        static DS: OnceLock<DataShape<NoBreaker>> = OnceLock::new();
        DS.get_or_init(|| {
            let shape = Shape::data("NoBreaker", Shape::constructor("X", [Field::of::<Box<NoBreaker>>()]));
            DataShape::new(shape, |_, mut f| NoBreaker(f.take())).expect("NoBreaker shape is well formed")
        })
    }
}

impl LessArbitrary for NoBreaker {
    fn less_arbitrary() -> Generator<Self> {
        gen_from_shape(Self::data_shape())
    }

    fn cheapest() -> Generator<Self> {
        cheapest_from_shape(Self::data_shape())
    }
}

fn tree_is_cheapest(v: &dyn Any) -> bool {
    v.downcast_ref::<Tree>().is_some_and(Tree::is_leaf)
}

fn expr_is_cheapest(v: &dyn Any) -> bool {
    v.downcast_ref::<Expr>().is_some_and(Expr::is_lit)
}

fn stmt_is_cheapest(v: &dyn Any) -> bool {
    v.downcast_ref::<Stmt>().is_some_and(Stmt::is_cheapest)
}

/// Every fixture shape, with cheapest predicates where a finite cheapest
/// value exists.
pub fn register_fixtures() -> ShapeRegistry {
    let mut reg = ShapeRegistry::new();
    let entries = [
        (Tree::data_shape().shape(), Some(tree_is_cheapest as fn(&dyn Any) -> bool)),
        (Expr::data_shape().shape(), Some(expr_is_cheapest as fn(&dyn Any) -> bool)),
        (Stmt::data_shape().shape(), Some(stmt_is_cheapest as fn(&dyn Any) -> bool)),
        (NoBreaker::data_shape().shape(), None),
    ];
    for (shape, pred) in entries {
        reg.register(shape.clone(), pred).expect("fixture shapes validate");
    }
    reg
}
