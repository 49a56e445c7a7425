//! The hypothesis `|n|₃ · ℓ(n) ≤ ⌊||n||/2⌋` and the closure laws for `ℓ(n) = |n|_m^b`.
//!
//! Scales are far too large to materialize, so each `n = 2^{L-1}` is represented by its
//! length `L = |n|`; every quantity involved is an iterated length of `L`.

use num_traits::{One, Pow};

use crate::nat::{iter_len, Nat};

/// `ℓ(n) = |n|_m^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TauFamily {
    pub m: u32,
    pub b: u32,
}

impl TauFamily {
    /// `ℓ(n)` for `|n| = length`.
    pub fn eval_at_length(&self, length: &Nat) -> Nat {
        Pow::pow(iter_len(length, self.m - 1), self.b)
    }

    /// `ℓ₁ · ℓ₂` is exactly the member with the exponents added.
    pub fn product(self, other: TauFamily) -> Option<TauFamily> {
        (self.m == other.m).then_some(TauFamily { m: self.m, b: self.b + other.b })
    }

    /// `ℓ₁ + ℓ₂ ≤ 2 · |n|_m^{max b} ≤ |n|_m^{max b + 1}` once `|n|_m ≥ 2`.
    pub fn sum(self, other: TauFamily) -> Option<TauFamily> {
        (self.m == other.m).then_some(TauFamily { m: self.m, b: self.b.max(other.b) + 1 })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauSample {
    /// `|n|`.
    pub length: Nat,
    /// `|n|₃ · ℓ(n)`.
    pub lhs: Nat,
    /// `⌊||n||/2⌋`.
    pub rhs: Nat,
    pub holds: bool,
}

/// Closure laws checked at every sampled length for one pair of family members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCheck {
    pub m: u32,
    pub b1: u32,
    pub b2: u32,
    /// `ℓ₁ℓ₂ = ℓ_{b₁+b₂}` at every sample.
    pub product_exact: bool,
    /// `ℓ₁ + ℓ₂ ≤ ℓ_{max+1}` at every sample from `sum_threshold` on.
    pub sum_bounded: bool,
    /// Least sampled `|n|` from which the sum law holds throughout.
    pub sum_threshold: Option<Nat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauReport {
    pub family: TauFamily,
    pub samples: Vec<TauSample>,
    /// Sampled `|n|` at which the inequality fails.
    pub violations: Vec<Nat>,
    /// Least sampled `|n|` from which no violation occurs in the range.
    pub threshold: Option<Nat>,
    pub closure: Vec<ClosureCheck>,
}

impl TauReport {
    /// Violations at lengths at or above the threshold (empty by construction when one exists).
    pub fn violations_above_threshold(&self) -> usize {
        match &self.threshold {
            Some(t) => self.violations.iter().filter(|l| *l >= t).count(),
            None => self.violations.len(),
        }
    }
}

fn sample(family: TauFamily, length: &Nat) -> TauSample {
    let lhs = iter_len(length, 2) * family.eval_at_length(length);
    let rhs = iter_len(length, 1) >> 1usize;
    TauSample { length: length.clone(), holds: lhs <= rhs, lhs, rhs }
}

/// Scans the given lengths `|n|` (ascending). Closure laws are checked for every `b₁, b₂ ≤ closure_b`.
pub fn tau_hypothesis_check(family: TauFamily, lengths: &[Nat], closure_b: u32) -> TauReport {
    assert!(family.m >= 3 && family.b >= 1, "the family needs m ≥ 3 and b ≥ 1");
    let samples: Vec<TauSample> = lengths.iter().map(|l| sample(family, l)).collect();
    let violations: Vec<Nat> = samples.iter().filter(|s| !s.holds).map(|s| s.length.clone()).collect();
    let threshold = match samples.iter().rposition(|s| !s.holds) {
        None => samples.first().map(|s| s.length.clone()),
        Some(i) => samples.get(i + 1).map(|s| s.length.clone()),
    };
    let mut closure = Vec::new();
    for b1 in 1..=closure_b {
        for b2 in 1..=closure_b {
            closure.push(check_closure(family.m, b1, b2, lengths));
        }
    }
    TauReport { family, samples, violations, threshold, closure }
}

fn check_closure(m: u32, b1: u32, b2: u32, lengths: &[Nat]) -> ClosureCheck {
    let (l1, l2) = (TauFamily { m, b: b1 }, TauFamily { m, b: b2 });
    let (prod, sum) = (l1.product(l2).expect("same m"), l1.sum(l2).expect("same m"));
    let mut product_exact = true;
    let mut sum_threshold: Option<Nat> = None;
    for l in lengths {
        let (v1, v2) = (l1.eval_at_length(l), l2.eval_at_length(l));
        product_exact &= &v1 * &v2 == prod.eval_at_length(l);
        if v1 + v2 <= sum.eval_at_length(l) {
            sum_threshold.get_or_insert_with(|| l.clone());
        } else {
            sum_threshold = None;
        }
    }
    // From |n|_m ≥ 2 on the sum law holds, so it must hold past the recorded threshold.
    let sum_bounded = lengths.iter().filter(|l| iter_len(l, m - 1) >= Nat::one() + Nat::one()).all(|l| {
        l1.eval_at_length(l) + l2.eval_at_length(l) <= sum.eval_at_length(l)
    });
    ClosureCheck { m, b1, b2, product_exact, sum_bounded, sum_threshold }
}

/// Every length in `from..=to` when there are at most `2^16` of them, otherwise the
/// endpoints together with each `2^j` and `2^j + 1` in range.
pub fn sample_lengths(from: &Nat, to: &Nat) -> Vec<Nat> {
    if from > to {
        return Vec::new();
    }
    let span: Nat = to - from;
    if span < Nat::from(1u32 << 16) {
        let mut out = Vec::new();
        let mut l = from.clone();
        while &l <= to {
            out.push(l.clone());
            l += 1u32;
        }
        return out;
    }
    let mut out = vec![from.clone(), to.clone()];
    let mut p = Nat::one();
    while &p <= to {
        for l in [p.clone(), &p + 1u32] {
            if &l >= from && &l <= to {
                out.push(l);
            }
        }
        p <<= 1usize;
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat::{nat, pow2};

    fn lengths_up_to(k: u32) -> Vec<Nat> {
        (1..=k).map(|j| pow2(j as u64) + 1u32).collect()
    }

    #[test]
    fn length_sampling() {
        assert_eq!(sample_lengths(&nat(2), &nat(5)), vec![nat(2), nat(3), nat(4), nat(5)]);
        assert!(sample_lengths(&nat(5), &nat(2)).is_empty());
        let wide = sample_lengths(&nat(2), &pow2(100));
        assert_eq!(wide.first(), Some(&nat(2)));
        assert_eq!(wide.last(), Some(&pow2(100)));
        assert!(wide.contains(&(pow2(64) + 1u32)));
        assert!(wide.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn family_arithmetic() {
        let a = TauFamily { m: 3, b: 2 };
        assert_eq!(a.product(TauFamily { m: 3, b: 1 }), Some(TauFamily { m: 3, b: 3 }));
        assert_eq!(a.sum(TauFamily { m: 3, b: 1 }), Some(TauFamily { m: 3, b: 3 }));
        assert_eq!(a.product(TauFamily { m: 4, b: 1 }), None);
        // n = 2^16: |n| = 17, ||n|| = 5, |n|_3 = 3.
        assert_eq!(a.eval_at_length(&nat(17)), nat(9));
    }

    #[test]
    fn small_towers_violate() {
        let r = tau_hypothesis_check(TauFamily { m: 3, b: 1 }, &lengths_up_to(16), 2);
        assert_eq!(r.violations.len(), 16);
        assert_eq!(r.threshold, None);
        assert!(r.closure.iter().all(|c| c.product_exact && c.sum_bounded));
    }

    #[test]
    fn beyond_the_desk_range_it_holds() {
        // ||n|| = 97 gives 7 · 7 > 48; ||n|| = 98 gives 7 · 7 ≤ 49.
        let ls = [pow2(96) + 1u32, pow2(97), pow2(97) + 1u32, pow2(200)];
        let r = tau_hypothesis_check(TauFamily { m: 3, b: 1 }, &ls, 1);
        assert_eq!(r.violations, vec![pow2(96) + 1u32]);
        assert_eq!(r.threshold, Some(pow2(97)));
        assert_eq!(r.violations_above_threshold(), 0);
    }

    #[test]
    fn weaker_families_have_smaller_left_sides() {
        let ls = lengths_up_to(16);
        let r3 = tau_hypothesis_check(TauFamily { m: 3, b: 1 }, &ls, 1);
        let r4 = tau_hypothesis_check(TauFamily { m: 4, b: 1 }, &ls, 1);
        for (a, b) in r3.samples.iter().zip(&r4.samples) {
            assert!(b.lhs <= a.lhs);
        }
    }
}
