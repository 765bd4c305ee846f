//! The law suites every shipped generator is checked against.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use costgen::fixtures::{Expr, Stmt, Tree};
use costgen::laws::{arbitrary_laws, less_arbitrary_laws, LawSuite};
use costgen::Scientific;
use num_bigint::BigInt;

/// Fixture types get both suites; scalar and container instances only have
/// the shrink law, since their cheapest value is not a constructor choice.
pub fn shipped_suites() -> Vec<(&'static str, Vec<LawSuite>)> {
    vec![
        ("Tree", vec![arbitrary_laws::<Tree>(), less_arbitrary_laws(Tree::is_leaf)]),
        ("Expr", vec![arbitrary_laws::<Expr>(), less_arbitrary_laws(Expr::is_lit)]),
        ("Stmt", vec![arbitrary_laws::<Stmt>(), less_arbitrary_laws(Stmt::is_cheapest)]),
        ("i64", vec![arbitrary_laws::<i64>()]),
        ("u8", vec![arbitrary_laws::<u8>()]),
        ("f64", vec![arbitrary_laws::<f64>()]),
        ("bool", vec![arbitrary_laws::<bool>()]),
        ("char", vec![arbitrary_laws::<char>()]),
        ("BigInt", vec![arbitrary_laws::<BigInt>()]),
        ("Scientific", vec![arbitrary_laws::<Scientific>()]),
        ("String", vec![arbitrary_laws::<String>()]),
        ("Vec<i64>", vec![arbitrary_laws::<Vec<i64>>()]),
        ("VecDeque<u8>", vec![arbitrary_laws::<VecDeque<u8>>()]),
        ("BTreeSet<i32>", vec![arbitrary_laws::<BTreeSet<i32>>()]),
        ("HashSet<i32>", vec![arbitrary_laws::<HashSet<i32>>()]),
        ("BTreeMap<u8, bool>", vec![arbitrary_laws::<BTreeMap<u8, bool>>()]),
        ("HashMap<i16, String>", vec![arbitrary_laws::<HashMap<i16, String>>()]),
        ("(i64, bool)", vec![arbitrary_laws::<(i64, bool)>()]),
    ]
}

