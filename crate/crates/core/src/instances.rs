//! Ready-made generators and shrinkers for scalars and standard containers.
//!
//! Scalars are drawn straight from the random source and never spend.
//! Containers are built from a budgeted list ([`gen_list`]) and converted, so
//! their size is paid for like any other constructor. Text is a budgeted list
//! of characters.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint, Sign};
use rand::Rng;

use crate::combinators::gen_list;
use crate::cost::GenRng;
use crate::generator::{Generator, LessArbitrary};
use crate::shape::FieldClass;

/// Scalars drawn directly from the random source.
pub trait Flat: Sized + 'static {
    const CLASS: FieldClass;

    fn draw(rng: &mut GenRng) -> Self;
}

/// A scalar draw that spends nothing.
pub fn flat_gen<T: Flat>() -> Generator<T> {
    Generator::from_fn(|ctx| Ok(T::draw(ctx.rng())))
}

macro_rules! flat_native {
    ($class:ident: $($t:ty),*) => {$(
        impl Flat for $t {
            const CLASS: FieldClass = FieldClass::$class;

            fn draw(rng: &mut GenRng) -> Self {
                rng.gen()
            }
        }

        impl LessArbitrary for $t {
            const FIELD_CLASS: FieldClass = FieldClass::$class;

            fn less_arbitrary() -> Generator<Self> {
                flat_gen()
            }
        }
    )*};
}

flat_native!(FlatZero: bool, i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize, f32, f64);
flat_native!(FlatOne: char);

impl Flat for BigInt {
    const CLASS: FieldClass = FieldClass::FlatOne;

    fn draw(rng: &mut GenRng) -> Self {
        let digits: Vec<u32> = (0..rng.gen_range(0..=4)).map(|_| rng.gen()).collect();
        let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
        BigInt::from_biguint(sign, BigUint::new(digits))
    }
}

impl LessArbitrary for BigInt {
    const FIELD_CLASS: FieldClass = FieldClass::FlatOne;

    fn less_arbitrary() -> Generator<Self> {
        flat_gen()
    }
}

/// Decimal number `coefficient * 10^exponent`, kept unnormalised.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scientific {
    pub coefficient: BigInt,
    pub exponent: i64,
}

impl Scientific {
    pub fn new(coefficient: BigInt, exponent: i64) -> Self {
        Scientific { coefficient, exponent }
    }
}

impl Flat for Scientific {
    const CLASS: FieldClass = FieldClass::FlatZero;

    fn draw(rng: &mut GenRng) -> Self {
        let coefficient = BigInt::draw(rng);
        let exponent = i64::draw(rng);
        Scientific::new(coefficient, exponent)
    }
}

impl LessArbitrary for Scientific {
    const FIELD_CLASS: FieldClass = FieldClass::FlatZero;

    fn less_arbitrary() -> Generator<Self> {
        flat_gen()
    }
}

/// Budgeted list of `elem`, collected into any container.
pub fn gen_container<C, T>(elem: Generator<T>) -> Generator<C>
where
    T: 'static,
    C: FromIterator<T> + 'static,
{
    gen_list(elem).map(|xs| xs.into_iter().collect())
}

pub fn gen_pair<A: 'static, B: 'static>(ga: Generator<A>, gb: Generator<B>) -> Generator<(A, B)> {
    ga.zip(gb)
}

fn empty<C: Default + 'static>() -> Generator<C> {
    Generator::from_fn(|_| Ok(C::default()))
}

impl LessArbitrary for String {
    const FIELD_CLASS: FieldClass = FieldClass::FlatOne;

    fn less_arbitrary() -> Generator<Self> {
        gen_container(char::less_arbitrary())
    }

    fn cheapest() -> Generator<Self> {
        empty()
    }
}

impl<T: LessArbitrary> LessArbitrary for Vec<T> {
    fn less_arbitrary() -> Generator<Self> {
        gen_list(T::less_arbitrary())
    }

    fn cheapest() -> Generator<Self> {
        empty()
    }
}

impl<T: LessArbitrary> LessArbitrary for VecDeque<T> {
    fn less_arbitrary() -> Generator<Self> {
        gen_container(T::less_arbitrary())
    }

    fn cheapest() -> Generator<Self> {
        empty()
    }
}

impl<T: LessArbitrary> LessArbitrary for Box<[T]> {
    fn less_arbitrary() -> Generator<Self> {
        gen_container(T::less_arbitrary())
    }

    fn cheapest() -> Generator<Self> {
        Generator::from_fn(|_| Ok(Vec::new().into_boxed_slice()))
    }
}

impl<T: LessArbitrary + Ord> LessArbitrary for BTreeSet<T> {
    fn less_arbitrary() -> Generator<Self> {
        gen_container(T::less_arbitrary())
    }

    fn cheapest() -> Generator<Self> {
        empty()
    }
}

impl<T: LessArbitrary + Eq + Hash> LessArbitrary for HashSet<T> {
    fn less_arbitrary() -> Generator<Self> {
        gen_container(T::less_arbitrary())
    }

    fn cheapest() -> Generator<Self> {
        empty()
    }
}

impl<K: LessArbitrary + Ord, V: LessArbitrary> LessArbitrary for BTreeMap<K, V> {
    fn less_arbitrary() -> Generator<Self> {
        gen_container(<(K, V)>::less_arbitrary())
    }

    fn cheapest() -> Generator<Self> {
        empty()
    }
}

impl<K: LessArbitrary + Eq + Hash, V: LessArbitrary> LessArbitrary for HashMap<K, V> {
    fn less_arbitrary() -> Generator<Self> {
        gen_container(<(K, V)>::less_arbitrary())
    }

    fn cheapest() -> Generator<Self> {
        empty()
    }
}

impl<T: LessArbitrary> LessArbitrary for Box<T> {
    const FIELD_CLASS: FieldClass = T::FIELD_CLASS;

    fn less_arbitrary() -> Generator<Self> {
        T::less_arbitrary().map(Box::new)
    }

    fn cheapest() -> Generator<Self> {
        T::cheapest().map(Box::new)
    }
}

impl<A: LessArbitrary, B: LessArbitrary> LessArbitrary for (A, B) {
    fn less_arbitrary() -> Generator<Self> {
        gen_pair(A::less_arbitrary(), B::less_arbitrary())
    }

    fn cheapest() -> Generator<Self> {
        gen_pair(A::cheapest(), B::cheapest())
    }
}

impl<A: LessArbitrary, B: LessArbitrary, C: LessArbitrary> LessArbitrary for (A, B, C) {
    fn less_arbitrary() -> Generator<Self> {
        gen_pair(A::less_arbitrary(), gen_pair(B::less_arbitrary(), C::less_arbitrary()))
            .map(|(a, (b, c))| (a, b, c))
    }

    fn cheapest() -> Generator<Self> {
        gen_pair(A::cheapest(), gen_pair(B::cheapest(), C::cheapest())).map(|(a, (b, c))| (a, b, c))
    }
}

/// Candidate smaller values for counterexample minimisation.
///
/// A value never appears in its own shrink list, and repeatedly taking the
/// first candidate reaches a value with no candidates.
pub trait Shrink: Sized {
    fn shrink(&self) -> Vec<Self>;
}

fn push_new<T: PartialEq>(out: &mut Vec<T>, original: &T, candidate: T) {
    if candidate != *original && !out.contains(&candidate) {
        out.push(candidate);
    }
}

macro_rules! shrink_signed {
    ($($t:ty),*) => {$(
        impl Shrink for $t {
            fn shrink(&self) -> Vec<Self> {
                let v = *self;
                let mut out = Vec::new();
                if v == 0 {
                    return out;
                }
                push_new(&mut out, &v, 0);
                push_new(&mut out, &v, v / 2);
                push_new(&mut out, &v, v - v.signum());
                out
            }
        }
    )*};
}

macro_rules! shrink_unsigned {
    ($($t:ty),*) => {$(
        impl Shrink for $t {
            fn shrink(&self) -> Vec<Self> {
                let v = *self;
                let mut out = Vec::new();
                if v == 0 {
                    return out;
                }
                push_new(&mut out, &v, 0);
                push_new(&mut out, &v, v / 2);
                push_new(&mut out, &v, v - 1);
                out
            }
        }
    )*};
}

shrink_signed!(i8, i16, i32, i64, i128, isize);
shrink_unsigned!(u8, u16, u32, u64, u128, usize);

macro_rules! shrink_float {
    ($($t:ty),*) => {$(
        impl Shrink for $t {
            fn shrink(&self) -> Vec<Self> {
                let v = *self;
                if v == 0.0 {
                    return Vec::new();
                }
                let mut out = vec![0.0];
                for candidate in [v.trunc(), v / 2.0] {
                    if candidate.is_finite() && candidate != v && !out.contains(&candidate) {
                        out.push(candidate);
                    }
                }
                out
            }
        }
    )*};
}

shrink_float!(f32, f64);

impl Shrink for bool {
    fn shrink(&self) -> Vec<Self> {
        if *self {
            vec![false]
        } else {
            Vec::new()
        }
    }
}

impl Shrink for char {
    fn shrink(&self) -> Vec<Self> {
        let c = *self;
        let mut out = Vec::new();
        if c == 'a' {
            return out;
        }
        push_new(&mut out, &c, 'a');
        if let Some(half) = char::from_u32(c as u32 / 2) {
            push_new(&mut out, &c, half);
        }
        out
    }
}

impl Shrink for BigInt {
    fn shrink(&self) -> Vec<Self> {
        let zero = BigInt::from(0);
        let mut out = Vec::new();
        if *self == zero {
            return out;
        }
        push_new(&mut out, self, zero);
        push_new(&mut out, self, self / 2);
        out
    }
}

impl Shrink for Scientific {
    fn shrink(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for c in self.coefficient.shrink() {
            out.push(Scientific::new(c, self.exponent));
        }
        for e in self.exponent.shrink() {
            out.push(Scientific::new(self.coefficient.clone(), e));
        }
        out
    }
}

/// Shrinks a sequence: the empty sequence, then chunk removals of halving
/// size, then one-element shrinks.
pub fn shrink_slice<T: Shrink + Clone>(xs: &[T]) -> Vec<Vec<T>> {
    let n = xs.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    out.push(Vec::new());
    let mut k = n / 2;
    while k > 0 {
        let mut start = 0;
        while start < n {
            let end = (start + k).min(n);
            let mut shorter = Vec::with_capacity(n - (end - start));
            shorter.extend_from_slice(&xs[..start]);
            shorter.extend_from_slice(&xs[end..]);
            out.push(shorter);
            start += k;
        }
        k /= 2;
    }
    for (i, x) in xs.iter().enumerate() {
        for smaller in x.shrink() {
            let mut ys = xs.to_vec();
            ys[i] = smaller;
            out.push(ys);
        }
    }
    out
}

impl<T: Shrink + Clone> Shrink for Vec<T> {
    fn shrink(&self) -> Vec<Self> {
        shrink_slice(self)
    }
}

impl<T: Shrink + Clone> Shrink for VecDeque<T> {
    fn shrink(&self) -> Vec<Self> {
        let xs: Vec<T> = self.iter().cloned().collect();
        shrink_slice(&xs).into_iter().map(VecDeque::from).collect()
    }
}

impl<T: Shrink + Clone> Shrink for Box<[T]> {
    fn shrink(&self) -> Vec<Self> {
        shrink_slice(self).into_iter().map(Vec::into_boxed_slice).collect()
    }
}

impl Shrink for String {
    fn shrink(&self) -> Vec<Self> {
        let chars: Vec<char> = self.chars().collect();
        shrink_slice(&chars).into_iter().map(String::from_iter).collect()
    }
}

impl<T: Shrink + Clone + Ord> Shrink for BTreeSet<T> {
    fn shrink(&self) -> Vec<Self> {
        let xs: Vec<T> = self.iter().cloned().collect();
        let mut out: Vec<Self> = Vec::new();
        for ys in shrink_slice(&xs) {
            push_new(&mut out, self, ys.into_iter().collect());
        }
        out
    }
}

impl<T: Shrink + Clone + Eq + Hash> Shrink for HashSet<T> {
    fn shrink(&self) -> Vec<Self> {
        let xs: Vec<T> = self.iter().cloned().collect();
        let mut out: Vec<Self> = Vec::new();
        for ys in shrink_slice(&xs) {
            push_new(&mut out, self, ys.into_iter().collect());
        }
        out
    }
}

impl<K: Shrink + Clone + Ord, V: Shrink + Clone + PartialEq> Shrink for BTreeMap<K, V> {
    fn shrink(&self) -> Vec<Self> {
        let xs: Vec<(K, V)> = self.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let mut out: Vec<Self> = Vec::new();
        for ys in shrink_slice(&xs) {
            let candidate: Self = ys.into_iter().collect();
            if candidate != *self {
                out.push(candidate);
            }
        }
        out
    }
}

impl<K: Shrink + Clone + Eq + Hash, V: Shrink + Clone + PartialEq> Shrink for HashMap<K, V> {
    fn shrink(&self) -> Vec<Self> {
        let xs: Vec<(K, V)> = self.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let mut out: Vec<Self> = Vec::new();
        for ys in shrink_slice(&xs) {
            let candidate: Self = ys.into_iter().collect();
            if candidate != *self {
                out.push(candidate);
            }
        }
        out
    }
}

impl<T: Shrink> Shrink for Box<T> {
    fn shrink(&self) -> Vec<Self> {
        (**self).shrink().into_iter().map(Box::new).collect()
    }
}

impl<A: Shrink + Clone, B: Shrink + Clone> Shrink for (A, B) {
    fn shrink(&self) -> Vec<Self> {
        let (a, b) = self;
        let mut out: Vec<Self> = a.shrink().into_iter().map(|a2| (a2, b.clone())).collect();
        out.extend(b.shrink().into_iter().map(|b2| (a.clone(), b2)));
        out
    }
}

impl<A: Shrink + Clone, B: Shrink + Clone, C: Shrink + Clone> Shrink for (A, B, C) {
    fn shrink(&self) -> Vec<Self> {
        let (a, b, c) = self;
        let mut out: Vec<Self> = a.shrink().into_iter().map(|a2| (a2, b.clone(), c.clone())).collect();
        out.extend(b.shrink().into_iter().map(|b2| (a.clone(), b2, c.clone())));
        out.extend(c.shrink().into_iter().map(|c2| (a.clone(), b.clone(), c2)));
        out
    }
}
