//! Length growth of terms: `|f(x⃗)| ≤ |n|^b` for `x⃗ < n`.
//!
//! Each term gets a polynomial `q(M)` with non-negative coefficients bounding the length of
//! its output when every argument has length at most `M`. Scales are powers of two, `n = 2^k`,
//! so inputs below `n` have length at most `|n| − 1` and the exponent `b` is the least one with
//! `q(L − 1) ≤ L^b` for all large `L = |n|`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ast::Term;
use super::eval::{EvalError, Evaluator};
use crate::nat::{len, pow2, Nat};

/// Dense univariate polynomial with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: i64) -> Poly {
        Poly(vec![BigInt::from(c)]).trimmed()
    }

    /// The variable itself.
    pub fn var() -> Poly {
        Poly(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_coefficients(coeffs: Vec<i64>) -> Poly {
        Poly(coeffs.into_iter().map(BigInt::from).collect()).trimmed()
    }

    fn trimmed(mut self) -> Poly {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|i| self.coefficient(i) + other.coefficient(i)).collect()).trimmed()
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|i| self.coefficient(i) - other.coefficient(i)).collect()).trimmed()
    }

    pub fn add_constant(&self, c: i64) -> Poly {
        self.add(&Poly::constant(c))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    /// Coefficientwise maximum; an upper bound on both for non-negative arguments when both
    /// polynomials have non-negative coefficients.
    pub fn max(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|i| self.coefficient(i).max(other.coefficient(i))).collect()).trimmed()
    }

    /// `self(inner(M))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(inner).add(&Poly(vec![c.clone()]).trimmed());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(1), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("L")?,
                (1, false) => write!(f, "{a}L")?,
                (_, true) => write!(f, "L^{i}")?,
                (_, false) => write!(f, "{a}L^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomial `q(M)` bounding `|f(x⃗)|` when every `|x_i| ≤ M`.
pub fn length_bound_poly(f: &Term) -> Poly {
    bound_with(f, &vec![Poly::var(); f.arity()])
}

/// Bound on `|f(x⃗)|` given a bound on each `|x_i|`.
fn bound_with(f: &Term, args: &[Poly]) -> Poly {
    match f {
        Term::Base(sym) => sym.length_bound(args),
        Term::Proj { index, .. } => args[*index].clone(),
        Term::Comp { outer, inner } => {
            let values: Vec<Poly> = inner.iter().map(|g| bound_with(g, args)).collect();
            bound_with(outer, &values)
        }
        Term::Rec(r) => {
            // f ≤ max(g(x⃗), r(i, x⃗)) with i < |t(n, x⃗)|, so |i| ≤ |t(n, x⃗)|.
            let xs = &args[1..];
            let mut step_args = vec![bound_with(&r.count, args)];
            step_args.extend_from_slice(xs);
            bound_with(&r.base, xs).max(&bound_with(&r.bound, &step_args))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthExponent {
    /// Least `b` with `|f(x⃗)| ≤ |n|^b` for all sufficiently large power-of-two `n`.
    pub exponent: u32,
    /// The structural bound `q(L − 1)` in terms of `L = |n|`.
    pub bound_in_scale: Poly,
    /// Least `|n|` from which the structural bound guarantees the inequality.
    pub threshold_len: u64,
}

impl LengthExponent {
    /// Least power-of-two scale with length `threshold_len`.
    pub fn threshold_scale(&self) -> Nat {
        pow2(self.threshold_len.saturating_sub(1))
    }
}

pub fn length_exponent(f: &Term) -> LengthExponent {
    let q = length_bound_poly(f);
    let p = q.compose(&Poly::var().add_constant(-1));
    let exponent = match p.degree() {
        None => 0,
        Some(d) => {
            let diff = Poly::var().pow(d as u32).sub(&p);
            if diff.is_zero() || diff.leading().is_positive() {
                d as u32
            } else {
                d as u32 + 1
            }
        }
    };
    let diff = Poly::var().pow(exponent).sub(&p);
    let threshold_len = last_negative(&diff).map_or(2, |l| l + 1).max(2);
    LengthExponent { exponent, bound_in_scale: p, threshold_len }
}

/// Largest integer `L ≥ 2` with `diff(L) < 0`, for `diff` eventually non-negative.
fn last_negative(diff: &Poly) -> Option<u64> {
    if diff.is_zero() {
        return None;
    }
    let lead = diff.leading().abs();
    let cauchy: BigInt = diff.0.iter().map(|c| c.abs() / &lead).max().unwrap_or_default() + 2;
    let top = cauchy.to_u64().unwrap_or(u64::MAX).min(1 << 20);
    (2..=top).rev().find(|&l| diff.eval(&BigInt::from(l)).is_negative())
}

/// Scans `n = 2^k` for `k = 1..=max_log` and returns the least scanned `n` from which
/// `|f(x⃗)| ≤ |n|^b` holds for every checked `x⃗ < n` (all of them when there are at most
/// 4096, otherwise the extremes plus a seeded sample). `None` if it fails at the top.
pub fn empirical_length_threshold(
    f: &Term,
    b: u32,
    max_log: u32,
    seed: u64,
    evaluator: &Evaluator,
) -> Result<Option<Nat>, EvalError> {
    let mut threshold = None;
    for k in 1..=max_log {
        let n = pow2(k as u64);
        let scale_len = k as u64 + 1;
        let bound = Nat::from(scale_len).pow(b);
        let mut holds = true;
        for x in sample_inputs(f.arity(), k, seed) {
            if Nat::from(len(&evaluator.eval(f, &x)?)) > bound {
                holds = false;
                break;
            }
        }
        match (holds, threshold.is_some()) {
            (true, false) => threshold = Some(n),
            (false, _) => threshold = None,
            _ => {}
        }
    }
    Ok(threshold)
}

/// Input vectors below `2^k` for an `arity`-ary term.
pub(crate) fn sample_inputs(arity: usize, k: u32, seed: u64) -> Vec<Vec<Nat>> {
    let n = 1u64 << k;
    let total = (n as u128).checked_pow(arity as u32);
    if total.is_some_and(|t| t <= 4096) {
        let mut out = vec![Vec::new()];
        for _ in 0..arity {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |x| {
                        let mut w = v.clone();
                        w.push(Nat::from(x));
                        w
                    })
                })
                .collect();
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64) << 32);
    let mut out = vec![vec![Nat::from(n - 1); arity], vec![Nat::zero(); arity]];
    out.extend((0..256).map(|_| (0..arity).map(|_| Nat::from(rng.gen_range(0..n))).collect()));
    out
}
