//! The base symbols of `L₂⁻`, each a strategy object registered by name.
//!
//! A symbol knows its arity and meaning, how to dominate itself by a monotone term, how to
//! bound the length of its output, and how to build a prefix series for its value from its
//! own arguments (the base cases of certificate synthesis).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use super::growth::Poly;
use crate::nat::{self, len, Nat};
use crate::series::{self, OpLog, PrefixSeries, SumOp, Summand};

/// How `bound_term` replaces a symbol by a monotone one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRule {
    /// The symbol is already monotone and free of `∸` and `MSP`.
    Monotone,
    /// The symbol is dominated by its argument at this position.
    Argument(usize),
}

pub trait BaseSymbol: Send + Sync {
    fn name(&self) -> &'static str;
    fn arity(&self) -> usize;
    fn eval(&self, args: &[Nat]) -> Nat;

    /// Upper bound on the bit length of `eval(args)`, checked before evaluating.
    fn output_bits(&self, args: &[Nat]) -> u64 {
        args.iter().map(len).max().unwrap_or(0) + 1
    }

    fn bound_rule(&self) -> BoundRule {
        BoundRule::Monotone
    }

    /// Upper bound on the output length as a polynomial, given polynomial bounds on the
    /// argument lengths.
    fn length_bound(&self, args: &[Poly]) -> Poly;

    /// A prefix series for `eval(args)` from `args`.
    fn certify(&self, args: &[Nat], log: &mut OpLog) -> PrefixSeries;
}

impl fmt::Debug for dyn BaseSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone)]
pub struct SymbolRegistry {
    symbols: BTreeMap<&'static str, Arc<dyn BaseSymbol>>,
}

impl SymbolRegistry {
    pub fn empty() -> Self {
        SymbolRegistry { symbols: BTreeMap::new() }
    }

    /// The nine symbols of `L₂⁻`.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register(Arc::new(Zero));
        reg.register(Arc::new(Succ));
        reg.register(Arc::new(Add));
        reg.register(Arc::new(Monus));
        reg.register(Arc::new(Half));
        reg.register(Arc::new(Len));
        reg.register(Arc::new(Msp));
        reg.register(Arc::new(Pad));
        reg.register(Arc::new(Smash));
        reg
    }

    pub fn register(&mut self, symbol: Arc<dyn BaseSymbol>) -> Option<Arc<dyn BaseSymbol>> {
        self.symbols.insert(symbol.name(), symbol)
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn BaseSymbol>> {
        self.symbols.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.symbols.keys().copied()
    }
}

impl Default for SymbolRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

fn input(args: &[Nat], j: usize) -> PrefixSeries {
    PrefixSeries::input(j, &args[j])
}

fn shift_of(y: &Nat) -> u64 {
    y.to_u64().unwrap_or(u64::MAX)
}

/// The constant zero, taken unary so that it composes like any other symbol.
struct Zero;

impl BaseSymbol for Zero {
    fn name(&self) -> &'static str {
        "zero"
    }
    fn arity(&self) -> usize {
        1
    }
    fn eval(&self, _: &[Nat]) -> Nat {
        Nat::default()
    }
    fn output_bits(&self, _: &[Nat]) -> u64 {
        0
    }
    fn length_bound(&self, _: &[Poly]) -> Poly {
        Poly::zero()
    }
    fn certify(&self, _: &[Nat], _: &mut OpLog) -> PrefixSeries {
        PrefixSeries::default()
    }
}

struct Succ;

impl BaseSymbol for Succ {
    fn name(&self) -> &'static str {
        "succ"
    }
    fn arity(&self) -> usize {
        1
    }
    fn eval(&self, args: &[Nat]) -> Nat {
        &args[0] + 1u32
    }
    fn length_bound(&self, args: &[Poly]) -> Poly {
        args[0].add_constant(1)
    }
    fn certify(&self, args: &[Nat], log: &mut OpLog) -> PrefixSeries {
        let one = series::natural_bit_series(&Nat::from(1u32)).into_series();
        series::combine_sum(&input(args, 0), &one, SumOp::Plus, log)
    }
}

struct Add;

impl BaseSymbol for Add {
    fn name(&self) -> &'static str {
        "add"
    }
    fn arity(&self) -> usize {
        2
    }
    fn eval(&self, args: &[Nat]) -> Nat {
        &args[0] + &args[1]
    }
    fn length_bound(&self, args: &[Poly]) -> Poly {
        args[0].max(&args[1]).add_constant(1)
    }
    fn certify(&self, args: &[Nat], log: &mut OpLog) -> PrefixSeries {
        series::combine_sum(&input(args, 0), &input(args, 1), SumOp::Plus, log)
    }
}

struct Monus;

impl BaseSymbol for Monus {
    fn name(&self) -> &'static str {
        "monus"
    }
    fn arity(&self) -> usize {
        2
    }
    fn eval(&self, args: &[Nat]) -> Nat {
        nat::monus(&args[0], &args[1])
    }
    fn output_bits(&self, args: &[Nat]) -> u64 {
        len(&args[0])
    }
    fn bound_rule(&self) -> BoundRule {
        BoundRule::Argument(0)
    }
    fn length_bound(&self, args: &[Poly]) -> Poly {
        args[0].clone()
    }
    fn certify(&self, args: &[Nat], log: &mut OpLog) -> PrefixSeries {
        series::combine_sum(&input(args, 0), &input(args, 1), SumOp::Monus, log)
    }
}

struct Half;

impl BaseSymbol for Half {
    fn name(&self) -> &'static str {
        "half"
    }
    fn arity(&self) -> usize {
        1
    }
    fn eval(&self, args: &[Nat]) -> Nat {
        nat::half(&args[0])
    }
    fn output_bits(&self, args: &[Nat]) -> u64 {
        len(&args[0])
    }
    fn length_bound(&self, args: &[Poly]) -> Poly {
        args[0].clone()
    }
    fn certify(&self, args: &[Nat], log: &mut OpLog) -> PrefixSeries {
        series::apply_msp(&input(args, 0), 1, log)
    }
}

struct Len;

impl BaseSymbol for Len {
    fn name(&self) -> &'static str {
        "len"
    }
    fn arity(&self) -> usize {
        1
    }
    fn eval(&self, args: &[Nat]) -> Nat {
        nat::len_nat(&args[0])
    }
    fn output_bits(&self, args: &[Nat]) -> u64 {
        len(&args[0])
    }
    fn length_bound(&self, args: &[Poly]) -> Poly {
        args[0].clone()
    }
    fn certify(&self, args: &[Nat], _: &mut OpLog) -> PrefixSeries {
        series::natural_bit_series(&nat::len_nat(&args[0])).into_series()
    }
}

struct Msp;

impl BaseSymbol for Msp {
    fn name(&self) -> &'static str {
        "msp"
    }
    fn arity(&self) -> usize {
        2
    }
    fn eval(&self, args: &[Nat]) -> Nat {
        nat::msp(&args[0], &args[1])
    }
    fn output_bits(&self, args: &[Nat]) -> u64 {
        len(&args[0])
    }
    fn bound_rule(&self) -> BoundRule {
        BoundRule::Argument(0)
    }
    fn length_bound(&self, args: &[Poly]) -> Poly {
        args[0].clone()
    }
    fn certify(&self, args: &[Nat], log: &mut OpLog) -> PrefixSeries {
        series::apply_msp(&input(args, 0), shift_of(&args[1]), log)
    }
}

struct Pad;

impl BaseSymbol for Pad {
    fn name(&self) -> &'static str {
        "pad"
    }
    fn arity(&self) -> usize {
        2
    }
    fn eval(&self, args: &[Nat]) -> Nat {
        nat::pad(&args[0], &args[1])
    }
    fn output_bits(&self, args: &[Nat]) -> u64 {
        len(&args[0]) + len(&args[1])
    }
    fn length_bound(&self, args: &[Poly]) -> Poly {
        args[0].add(&args[1])
    }
    fn certify(&self, args: &[Nat], _: &mut OpLog) -> PrefixSeries {
        series::apply_pad(&input(args, 0), &args[1])
    }
}

struct Smash;

impl BaseSymbol for Smash {
    fn name(&self) -> &'static str {
        "smash"
    }
    fn arity(&self) -> usize {
        2
    }
    fn eval(&self, args: &[Nat]) -> Nat {
        nat::smash(&args[0], &args[1])
    }
    fn output_bits(&self, args: &[Nat]) -> u64 {
        len(&args[0]).saturating_mul(len(&args[1])).saturating_add(1)
    }
    fn length_bound(&self, args: &[Poly]) -> Poly {
        args[0].mul(&args[1]).add_constant(1)
    }
    fn certify(&self, args: &[Nat], _: &mut OpLog) -> PrefixSeries {
        // x # y = 1 · 2^{|x||y|}
        PrefixSeries::new(vec![Summand::one(len(&args[0]) * len(&args[1]))], vec![])
    }
}
