use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::RandBigInt;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{block_bound_check, num_blocks, target_value, BlockError};
use crate::nat::{len, smash, Nat};
use crate::series::{eval_series, synthesize_logged, to_bit_series, OpLog, SynthError};
use crate::term::{EvalError, Evaluator, Term};

/// Settings shared by every strategy.
#[derive(Debug, Clone)]
pub struct PhpContext {
    pub evaluator: Evaluator,
    /// Largest `n` the exhaustive strategy accepts.
    pub max_exhaustive: u64,
    /// Number of random input vectors drawn when the inputs below `n` are too many to enumerate.
    pub samples: usize,
    /// Input vectors below this count are enumerated rather than sampled.
    pub enumerate_limit: u64,
    pub seed: u64,
}

impl Default for PhpContext {
    fn default() -> Self {
        PhpContext {
            evaluator: Evaluator::default(),
            max_exhaustive: 1 << 16,
            samples: 64,
            enumerate_limit: 1 << 10,
            seed: 0,
        }
    }
}

/// Outcome of checking that `hole` is not in the image of `f` on inputs below `scale`.
#[derive(Debug, Clone)]
pub struct PhpVerdict {
    pub term: Term,
    pub scale: Nat,
    pub hole: Nat,
    pub hole_blocks: u64,
    /// Largest `#_B(f(x⃗))` over the checked inputs.
    pub max_value_blocks: u64,
    /// Whether no checked input maps to the hole.
    pub missed: bool,
    pub method: &'static str,
    pub checked: u64,
    /// Exhaustive only: `n#n` minus the number of distinct values hit.
    pub missed_holes: Option<Nat>,
    /// Block-gap only: `|#_B(f(x⃗))| < |#_B(hole)|` for every checked input.
    pub gap: Option<bool>,
    /// Block-gap only: whether every bit-series certificate met `#_B ≤ 2k + 1`.
    pub block_bound_held: Option<bool>,
    /// Least scanned `n` from which the verdict holds throughout the scan.
    pub threshold_note: Option<Nat>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PhpError {
    #[error("the {strategy} strategy needs a unary term, got arity {arity}")]
    Arity { strategy: &'static str, arity: usize },
    #[error("n = {n} is above the exhaustive limit {limit}")]
    AboveLimit { n: Nat, limit: u64 },
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Synth(#[from] SynthError),
}

pub trait PhpStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn check(&self, f: &Term, n: &Nat, ctx: &PhpContext) -> Result<PhpVerdict, PhpError>;
}

/// Strategies selectable by name.
#[derive(Clone)]
pub struct PhpRegistry {
    strategies: BTreeMap<&'static str, Arc<dyn PhpStrategy>>,
}

impl PhpRegistry {
    pub fn empty() -> Self {
        PhpRegistry { strategies: BTreeMap::new() }
    }

    pub fn standard() -> Self {
        let mut reg = PhpRegistry::empty();
        reg.register(Arc::new(Exhaustive));
        reg.register(Arc::new(BlockGap));
        reg
    }

    pub fn register(&mut self, s: Arc<dyn PhpStrategy>) -> Option<Arc<dyn PhpStrategy>> {
        self.strategies.insert(s.name(), s)
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn PhpStrategy>> {
        self.strategies.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.strategies.keys().copied()
    }
}

impl Default for PhpRegistry {
    fn default() -> Self {
        PhpRegistry::standard()
    }
}

/// Evaluates `f` on every `x < n`.
pub struct Exhaustive;

impl PhpStrategy for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn check(&self, f: &Term, n: &Nat, ctx: &PhpContext) -> Result<PhpVerdict, PhpError> {
        let start = Instant::now();
        if f.arity() != 1 {
            return Err(PhpError::Arity { strategy: self.name(), arity: f.arity() });
        }
        let hole = target_value(n)?;
        let limit = n.to_u64().filter(|&v| v <= ctx.max_exhaustive);
        let Some(count) = limit else {
            return Err(PhpError::AboveLimit { n: n.clone(), limit: ctx.max_exhaustive });
        };
        let mut values = (0..count)
            .into_par_iter()
            .map(|x| ctx.evaluator.eval(f, &[Nat::from(x)]))
            .collect::<Result<Vec<_>, _>>()?;
        let missed = !values.contains(&hole);
        let max_value_blocks = values.iter().map(num_blocks).max().unwrap_or(0);
        values.par_sort_unstable();
        values.dedup();
        let holes = smash(n, n);
        let in_range = values.iter().filter(|v| *v < &holes).count();
        Ok(PhpVerdict {
            term: f.clone(),
            scale: n.clone(),
            hole_blocks: num_blocks(&hole),
            hole,
            max_value_blocks,
            missed,
            method: self.name(),
            checked: count,
            missed_holes: Some(holes - in_range),
            gap: None,
            block_bound_held: None,
            threshold_note: None,
            elapsed: start.elapsed(),
        })
    }
}

/// Certifies `f(x⃗)` and compares block counts: a value with fewer blocks than the hole
/// (already in the length of the count) cannot be the hole.
pub struct BlockGap;

impl PhpStrategy for BlockGap {
    fn name(&self) -> &'static str {
        "block-gap"
    }

    fn check(&self, f: &Term, n: &Nat, ctx: &PhpContext) -> Result<PhpVerdict, PhpError> {
        let start = Instant::now();
        let hole = target_value(n)?;
        let hole_blocks = num_blocks(&hole);
        let inputs = sample_below(f.arity(), n, ctx);
        let results = inputs
            .par_iter()
            .map(|xs| -> Result<(Nat, u64, bool), PhpError> {
                let cert = synthesize_logged(f, xs, n, &ctx.evaluator, &mut OpLog::disabled())?;
                let bits = to_bit_series(&cert, &mut OpLog::disabled());
                let profile = block_bound_check(&bits)?;
                let value = eval_series(&bits.series, &bits.inputs).expect("inputs cover the series");
                Ok((value, profile.blocks, profile.satisfied))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let hole_len = len(&Nat::from(hole_blocks));
        let gap = results.iter().all(|(_, b, _)| len(&Nat::from(*b)) < hole_len);
        Ok(PhpVerdict {
            term: f.clone(),
            scale: n.clone(),
            missed: results.iter().all(|(v, _, _)| v != &hole),
            hole,
            hole_blocks,
            max_value_blocks: results.iter().map(|r| r.1).max().unwrap_or(0),
            method: self.name(),
            checked: results.len() as u64,
            missed_holes: None,
            gap: Some(gap),
            block_bound_held: Some(results.iter().all(|r| r.2)),
            threshold_note: None,
            elapsed: start.elapsed(),
        })
    }
}

/// Every vector below `n` when there are at most `enumerate_limit`, otherwise the corners
/// plus `samples` seeded random vectors.
fn sample_below(arity: usize, n: &Nat, ctx: &PhpContext) -> Vec<Vec<Nat>> {
    let total = n.to_u64().and_then(|v| v.checked_pow(arity as u32));
    if let Some(total) = total.filter(|&t| t <= ctx.enumerate_limit) {
        let n = n.to_u64().expect("small");
        return (0..total)
            .map(|mut code| {
                (0..arity)
                    .map(|_| {
                        let x = code % n;
                        code /= n;
                        Nat::from(x)
                    })
                    .collect()
            })
            .collect();
    }
    let top = n - 1u32;
    let mut out = vec![vec![Nat::zero(); arity], vec![top.clone(); arity]];
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ len(n).rotate_left(32));
    out.extend((0..ctx.samples).map(|_| (0..arity).map(|_| rng.gen_biguint_below(n)).collect()));
    out
}

/// Verdicts for each scale, each tagged with the least scale from which the strategy's
/// success criterion (the block gap when available, the miss otherwise) holds to the end.
#[derive(Debug, Clone)]
pub struct PhpScan {
    pub verdicts: Vec<PhpVerdict>,
    pub threshold: Option<Nat>,
}

pub fn php_scan(strategy: &dyn PhpStrategy, f: &Term, scales: &[Nat], ctx: &PhpContext) -> Result<PhpScan, PhpError> {
    let mut verdicts = scales.iter().map(|n| strategy.check(f, n, ctx)).collect::<Result<Vec<_>, _>>()?;
    let mut threshold = None;
    for v in verdicts.iter().rev() {
        if !v.gap.unwrap_or(v.missed) {
            break;
        }
        threshold = Some(v.scale.clone());
    }
    for v in &mut verdicts {
        v.threshold_note = threshold.clone();
    }
    Ok(PhpScan { verdicts, threshold })
}
