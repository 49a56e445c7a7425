use num_traits::ToPrimitive;

use super::ast::Term;
use crate::nat::{iter_len, len, Nat};

/// Default ceiling on the bit length of any intermediate value (8 MiB numbers).
pub const DEFAULT_MAX_BITS: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("arity mismatch: term takes {expected} arguments, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("`{symbol}` would produce a {bits}-bit value, above the {limit}-bit evaluation limit")]
    TooLarge { symbol: String, bits: u64, limit: u64 },
}

/// Denotational evaluator with a size guard on intermediate values.
#[derive(Debug, Clone, Copy)]
pub struct Evaluator {
    pub max_bits: u64,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator { max_bits: DEFAULT_MAX_BITS }
    }
}

pub fn eval(f: &Term, args: &[Nat]) -> Result<Nat, EvalError> {
    Evaluator::default().eval(f, args)
}

impl Evaluator {
    pub fn eval(&self, f: &Term, args: &[Nat]) -> Result<Nat, EvalError> {
        if args.len() != f.arity() {
            return Err(EvalError::Arity { expected: f.arity(), found: args.len() });
        }
        self.eval_unchecked(f, args)
    }

    fn eval_unchecked(&self, f: &Term, args: &[Nat]) -> Result<Nat, EvalError> {
        match f {
            Term::Base(sym) => {
                let bits = sym.output_bits(args);
                if bits > self.max_bits {
                    return Err(EvalError::TooLarge {
                        symbol: sym.name().to_string(),
                        bits,
                        limit: self.max_bits,
                    });
                }
                Ok(sym.eval(args))
            }
            Term::Proj { index, .. } => Ok(args[*index].clone()),
            Term::Comp { outer, inner } => {
                let values = inner
                    .iter()
                    .map(|g| self.eval_unchecked(g, args))
                    .collect::<Result<Vec<_>, _>>()?;
                self.eval_unchecked(outer, &values)
            }
            Term::Rec(r) => {
                let steps = self.recursion_steps(f, args)?;
                let xs = &args[1..];
                let mut value = self.eval_unchecked(&r.base, xs)?;
                let mut step_args = Vec::with_capacity(xs.len() + 2);
                for i in 0..steps {
                    step_args.clear();
                    step_args.push(Nat::from(i));
                    step_args.extend_from_slice(xs);
                    let cap = self.eval_unchecked(&r.bound, &step_args)?;
                    step_args.push(value);
                    let next = self.eval_unchecked(&r.step, &step_args)?;
                    value = next.min(cap);
                }
                Ok(value)
            }
        }
    }

    /// Number of recursion steps `|count(n, x⃗)|_level` for a `Rec` node applied to `args`.
    pub fn recursion_steps(&self, f: &Term, args: &[Nat]) -> Result<u64, EvalError> {
        let Term::Rec(r) = f else {
            return Ok(0);
        };
        let t = self.eval_unchecked(&r.count, args)?;
        let steps = iter_len(&t, r.level);
        // level ≥ 1, so steps ≤ len(t) and always fits.
        Ok(steps.to_u64().unwrap_or_else(|| len(&t)))
    }
}
