use sha2::{Digest, Sha256};

use super::certificate::Certificate;
use super::ops::{apply_msp, natural_bit_series, shift_exponents, signed_bit_series, Coefficient, OpLog, PrefixSeries};
use crate::nat::Nat;
use crate::term::{EvalError, Evaluator, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error("input {index} = {value} is not below the scale {scale}")]
    InputOutOfRange { index: usize, value: Nat, scale: Nat },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Hex SHA-256 of the canonical text of `f`.
pub fn term_hash(f: &Term) -> String {
    hex::encode(Sha256::digest(f.to_string().as_bytes()))
}

pub fn synthesize(f: &Term, inputs: &[Nat], scale: &Nat) -> Result<Certificate, SynthError> {
    synthesize_logged(f, inputs, scale, &Evaluator::default(), &mut OpLog::disabled())
}

/// Builds a certificate for `f(inputs)` by induction on `f`, recording every calculus step in `log`.
pub fn synthesize_logged(
    f: &Term,
    inputs: &[Nat],
    scale: &Nat,
    evaluator: &Evaluator,
    log: &mut OpLog,
) -> Result<Certificate, SynthError> {
    if inputs.len() != f.arity() {
        return Err(EvalError::Arity { expected: f.arity(), found: inputs.len() }.into());
    }
    if let Some((index, value)) = inputs.iter().enumerate().find(|(_, x)| *x >= scale) {
        return Err(SynthError::InputOutOfRange { index, value: value.clone(), scale: scale.clone() });
    }
    let mut synth = Synth { evaluator, log };
    let (series, _) = synth.series(f, inputs)?;
    Ok(Certificate {
        width_exponent: series.max_exponent(),
        length_bound: series.len() as u64,
        series,
        inputs: inputs.to_vec(),
        scale: scale.clone(),
        delta: scale * scale,
    })
}

struct Synth<'a> {
    evaluator: &'a Evaluator,
    log: &'a mut OpLog,
}

impl Synth<'_> {
    /// A series for `f(args)` whose prefixes refer to `args`, with its value.
    fn series(&mut self, f: &Term, args: &[Nat]) -> Result<(PrefixSeries, Nat), SynthError> {
        match f {
            Term::Base(sym) => {
                let value = self.evaluator.eval(f, args)?;
                Ok((sym.certify(args, self.log), value))
            }
            Term::Proj { index, .. } => Ok((PrefixSeries::input(*index, &args[*index]), args[*index].clone())),
            Term::Comp { outer, inner } => {
                let parts = inner.iter().map(|g| self.series(g, args)).collect::<Result<Vec<_>, _>>()?;
                let values: Vec<Nat> = parts.iter().map(|(_, v)| v.clone()).collect();
                let (s, value) = self.series(outer, &values)?;
                let s = self.substitute(&s, &parts);
                Ok((compact(s, &value), value))
            }
            Term::Rec(r) => {
                let steps = self.evaluator.recursion_steps(f, args)?;
                let xs = &args[1..];
                // Arguments of the step and bound terms, as series over `args`.
                let mut env: Vec<(PrefixSeries, Nat)> = Vec::with_capacity(xs.len() + 2);
                env.push(Default::default());
                env.extend((1..args.len()).map(|j| (PrefixSeries::input(j, &args[j]), args[j].clone())));
                let (s, value) = self.series(&r.base, xs)?;
                let mut acc = (s.map_inputs(|j| j + 1), value);
                let mut step_args = Vec::with_capacity(xs.len() + 2);
                for i in 0..steps {
                    let i = Nat::from(i);
                    env[0] = (natural_bit_series(&i).into_series(), i.clone());
                    step_args.clear();
                    step_args.push(i);
                    step_args.extend_from_slice(xs);
                    let cap = self.evaluator.eval(&r.bound, &step_args)?;
                    step_args.push(acc.1.clone());
                    let (s, next) = self.series(&r.step, &step_args)?;
                    let (s, next) = if next <= cap {
                        env.push(acc);
                        let s = self.substitute(&s, &env);
                        env.pop();
                        (s, next)
                    } else {
                        step_args.pop();
                        let (s, cap) = self.series(&r.bound, &step_args)?;
                        (self.substitute(&s, &env[..xs.len() + 1]), cap)
                    };
                    acc = (compact(s, &next), next);
                }
                Ok(acc)
            }
        }
    }

    /// Replaces each `MSP(v_i, y) · 2^j` in `s` by a series for it built from `parts[i]`.
    fn substitute(&mut self, s: &PrefixSeries, parts: &[(PrefixSeries, Nat)]) -> PrefixSeries {
        let mut out = PrefixSeries::default();
        for (list, negated) in [(&s.positives, false), (&s.negatives, true)] {
            for t in list {
                let Coefficient::Prefix(p) = &t.coeff else {
                    if negated { &mut out.negatives } else { &mut out.positives }.push(t.clone());
                    continue;
                };
                let part = shift_exponents(&apply_msp(&parts[p.input].0, p.shift, self.log), t.exp);
                // A part that evaluates to zero may still have N > P; it contributes nothing.
                if part.negative_sum() >= part.positive_sum() {
                    continue;
                }
                let (pos, neg) = if negated { (part.negatives, part.positives) } else { (part.positives, part.negatives) };
                out.positives.extend(pos);
                out.negatives.extend(neg);
            }
        }
        out.normalized()
    }
}

/// Falls back to the signed bit series of the value when that is shorter.
fn compact(s: PrefixSeries, value: &Nat) -> PrefixSeries {
    debug_assert_eq!(&s.value(), value);
    let bits = signed_bit_series(value).into_series();
    if bits.len() < s.len() {
        bits
    } else {
        s
    }
}
