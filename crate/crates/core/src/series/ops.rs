//! The prefix-series calculus: sums, truncated differences, `MSP` and padding.

use std::collections::HashMap;

use num_traits::Zero;

use crate::nat::{len, msp_u64, pow2, Nat};

/// `MSP(x_input, shift)`, carrying its value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prefix {
    pub input: usize,
    pub shift: u64,
    pub value: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficient {
    One,
    Prefix(Prefix),
}

impl Coefficient {
    pub fn value(&self) -> Nat {
        match self {
            Coefficient::One => Nat::from(1u32),
            Coefficient::Prefix(p) => p.value.clone(),
        }
    }
}

/// `coeff · 2^exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub coeff: Coefficient,
    pub exp: u64,
}

impl Summand {
    pub fn one(exp: u64) -> Summand {
        Summand { coeff: Coefficient::One, exp }
    }

    pub fn prefix(input: usize, shift: u64, value: Nat, exp: u64) -> Summand {
        Summand { coeff: Coefficient::Prefix(Prefix { input, shift, value }), exp }
    }

    pub fn value(&self) -> Nat {
        match &self.coeff {
            Coefficient::One => pow2(self.exp),
            Coefficient::Prefix(p) => &p.value << self.exp as usize,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.coeff, Coefficient::Prefix(p) if p.value.is_zero())
    }

    /// `MSP(self, y)` when it is a single summand, `None` when it is zero.
    fn shifted_down(&self, y: u64) -> Option<Summand> {
        if self.exp >= y {
            return Some(Summand { coeff: self.coeff.clone(), exp: self.exp - y });
        }
        match &self.coeff {
            Coefficient::One => None,
            Coefficient::Prefix(p) => {
                let residual = y - self.exp;
                let value = msp_u64(&p.value, residual);
                (!value.is_zero()).then(|| Summand::prefix(p.input, p.shift + residual, value, 0))
            }
        }
    }
}

/// `Σ positives ∸ Σ negatives`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixSeries {
    pub positives: Vec<Summand>,
    pub negatives: Vec<Summand>,
}

impl PrefixSeries {
    pub fn new(positives: Vec<Summand>, negatives: Vec<Summand>) -> PrefixSeries {
        PrefixSeries { positives, negatives }
    }

    /// The one-summand series `MSP(x_j, 0) · 2^0` for input `j` with value `x`, empty when `x = 0`.
    pub fn input(j: usize, x: &Nat) -> PrefixSeries {
        if x.is_zero() {
            return PrefixSeries::default();
        }
        PrefixSeries::new(vec![Summand::prefix(j, 0, x.clone(), 0)], vec![])
    }

    /// `k = k_P + k_N`.
    pub fn len(&self) -> usize {
        self.positives.len() + self.negatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn summands(&self) -> impl Iterator<Item = &Summand> {
        self.positives.iter().chain(&self.negatives)
    }

    pub fn max_exponent(&self) -> u64 {
        self.summands().map(|s| s.exp).max().unwrap_or(0)
    }

    pub fn positive_sum(&self) -> Nat {
        self.positives.iter().map(Summand::value).sum()
    }

    pub fn negative_sum(&self) -> Nat {
        self.negatives.iter().map(Summand::value).sum()
    }

    /// The value from the stored coefficients.
    pub fn value(&self) -> Nat {
        crate::nat::monus(&self.positive_sum(), &self.negative_sum())
    }

    pub fn is_bit_series(&self) -> bool {
        self.summands().all(|s| s.coeff == Coefficient::One)
    }

    fn map_summands(&self, f: impl Fn(&Summand) -> Option<Summand>) -> PrefixSeries {
        PrefixSeries {
            positives: self.positives.iter().filter_map(&f).collect(),
            negatives: self.negatives.iter().filter_map(&f).collect(),
        }
    }

    pub(crate) fn map_inputs(&self, f: impl Fn(usize) -> usize) -> PrefixSeries {
        self.map_summands(|s| {
            Some(match &s.coeff {
                Coefficient::One => s.clone(),
                Coefficient::Prefix(p) => Summand::prefix(f(p.input), p.shift, p.value.clone(), s.exp),
            })
        })
    }

    /// Drops zero summands and cancels summands occurring on both sides.
    pub(crate) fn normalized(mut self) -> PrefixSeries {
        self.positives.retain(|s| !s.is_zero());
        self.negatives.retain(|s| !s.is_zero());
        let mut pending: HashMap<Summand, usize> = HashMap::new();
        for s in &self.negatives {
            *pending.entry(s.clone()).or_default() += 1;
        }
        let mut cancelled: HashMap<Summand, usize> = HashMap::new();
        self.positives.retain(|s| match pending.get_mut(s) {
            Some(c) if *c > 0 => {
                *c -= 1;
                *cancelled.entry(s.clone()).or_default() += 1;
                false
            }
            _ => true,
        });
        self.negatives.retain(|s| match cancelled.get_mut(s) {
            Some(c) if *c > 0 => {
                *c -= 1;
                false
            }
            _ => true,
        });
        self
    }
}

/// A prefix series whose coefficients are all `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitSeries(PrefixSeries);

impl BitSeries {
    pub fn as_series(&self) -> &PrefixSeries {
        &self.0
    }

    pub fn into_series(self) -> PrefixSeries {
        self.0
    }
}

impl TryFrom<PrefixSeries> for BitSeries {
    type Error = PrefixSeries;

    fn try_from(s: PrefixSeries) -> Result<Self, Self::Error> {
        if s.is_bit_series() {
            Ok(BitSeries(s))
        } else {
            Err(s)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("summand refers to input {input}, but only {available} inputs are given")]
    DanglingInput { input: usize, available: usize },
}

/// `Σ a_i 2^{b_i} ∸ Σ c_i 2^{d_i}` with each prefix coefficient read off `inputs`.
pub fn eval_series(s: &PrefixSeries, inputs: &[Nat]) -> Result<Nat, SeriesError> {
    let term = |t: &Summand| -> Result<Nat, SeriesError> {
        match &t.coeff {
            Coefficient::One => Ok(pow2(t.exp)),
            Coefficient::Prefix(p) => {
                let x = inputs
                    .get(p.input)
                    .ok_or(SeriesError::DanglingInput { input: p.input, available: inputs.len() })?;
                Ok(msp_u64(x, p.shift) << t.exp as usize)
            }
        }
    };
    let pos = s.positives.iter().map(term).sum::<Result<Nat, _>>()?;
    let neg = s.negatives.iter().map(term).sum::<Result<Nat, _>>()?;
    Ok(crate::nat::monus(&pos, &neg))
}

/// The bit series `Σ_{BIT(i,x)=1} 1·2^i`.
pub fn natural_bit_series(x: &Nat) -> BitSeries {
    let positives = (0..len(x)).filter(|&i| x.bit(i)).map(Summand::one).collect();
    BitSeries(PrefixSeries::new(positives, vec![]))
}

/// The shortest signed bit series for `x` (its non-adjacent form): no two consecutive
/// exponents are both used, so the length is at most `⌈(|x|+1)/2⌉`.
pub fn signed_bit_series(x: &Nat) -> BitSeries {
    let mut rest = x.clone();
    let (mut positives, mut negatives) = (Vec::new(), Vec::new());
    let mut i = 0u64;
    while !rest.is_zero() {
        if rest.bit(0) {
            if rest.bit(1) {
                negatives.push(Summand::one(i));
                rest += 1u32;
            } else {
                positives.push(Summand::one(i));
                rest -= 1u32;
            }
        }
        rest >>= 1usize;
        i += 1;
    }
    BitSeries(PrefixSeries::new(positives, negatives))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumOp {
    Plus,
    Monus,
}

/// Sum or truncated difference of two series, choosing the sublists by which side of each
/// series dominates.
pub fn combine_sum(a: &PrefixSeries, b: &PrefixSeries, op: SumOp, log: &mut OpLog) -> PrefixSeries {
    let a_zero = a.negative_sum() >= a.positive_sum();
    let b_zero = b.negative_sum() >= b.positive_sum();
    let concat = |x: &[Summand], y: &[Summand]| x.iter().chain(y).cloned().collect::<Vec<_>>();
    let out = match op {
        SumOp::Plus if a_zero => b.clone(),
        SumOp::Plus if b_zero => a.clone(),
        SumOp::Plus => {
            PrefixSeries::new(concat(&a.positives, &b.positives), concat(&a.negatives, &b.negatives)).normalized()
        }
        SumOp::Monus if a_zero => PrefixSeries::default(),
        SumOp::Monus if b_zero => a.clone(),
        SumOp::Monus => {
            PrefixSeries::new(concat(&a.positives, &b.negatives), concat(&a.negatives, &b.positives)).normalized()
        }
    };
    log.record(OpKind::CombineSum, &[a, b], &out);
    out
}

/// A series for `MSP(value(s), y)`: shift every summand down by `y` to get `Q`, then add or
/// subtract the natural bit series of the exact error `e = |MSP(value(s), y) − value(Q)|`.
pub fn apply_msp(s: &PrefixSeries, y: u64, log: &mut OpLog) -> PrefixSeries {
    if y == 0 {
        log.record(OpKind::ApplyMsp { error: Nat::zero() }, &[s], s);
        return s.clone();
    }
    let q = s.map_summands(|t| t.shifted_down(y));
    let target = msp_u64(&s.value(), y);
    let approx = q.value();
    let (error, out) = if target >= approx {
        let e = &target - &approx;
        let out = combine_sum(&q, natural_bit_series(&e).as_series(), SumOp::Plus, log);
        (e, out)
    } else {
        let e = &approx - &target;
        let out = combine_sum(&q, natural_bit_series(&e).as_series(), SumOp::Monus, log);
        (e, out)
    };
    log.record(OpKind::ApplyMsp { error }, &[s], &out);
    out
}

/// `s · 2^j`.
pub fn shift_exponents(s: &PrefixSeries, j: u64) -> PrefixSeries {
    if j == 0 {
        return s.clone();
    }
    s.map_summands(|t| Some(Summand { coeff: t.coeff.clone(), exp: t.exp + j }))
}

/// `PAD(value(s), y) = value(s) · 2^{|y|}`.
pub fn apply_pad(s: &PrefixSeries, y: &Nat) -> PrefixSeries {
    shift_exponents(s, len(y))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpKind {
    CombineSum,
    /// `error` is the correction `e` folded in after shifting.
    ApplyMsp { error: Nat },
    /// Conversion of a certificate at a scale of length `scale_len`.
    ToBitSeries { scale_len: u64 },
}

/// Length and maximal exponent of each operand and of the result of one calculus step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpRecord {
    pub kind: OpKind,
    pub operands: Vec<(usize, u64)>,
    pub result: (usize, u64),
}

/// Optional trace of calculus steps, used to audit length and width growth.
#[derive(Debug, Default)]
pub struct OpLog {
    enabled: bool,
    records: Vec<OpRecord>,
}

impl OpLog {
    pub fn enabled() -> OpLog {
        OpLog { enabled: true, records: Vec::new() }
    }

    pub fn disabled() -> OpLog {
        OpLog::default()
    }

    pub fn records(&self) -> &[OpRecord] {
        &self.records
    }

    pub fn take(&mut self) -> Vec<OpRecord> {
        std::mem::take(&mut self.records)
    }

    pub(crate) fn record(&mut self, kind: OpKind, operands: &[&PrefixSeries], result: &PrefixSeries) {
        if !self.enabled {
            return;
        }
        self.records.push(OpRecord {
            kind,
            operands: operands.iter().map(|s| (s.len(), s.max_exponent())).collect(),
            result: (result.len(), result.max_exponent()),
        });
    }
}
