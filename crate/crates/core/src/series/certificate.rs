use std::fmt;

use super::ops::{eval_series, Coefficient, OpKind, OpLog, PrefixSeries, Summand};
use crate::coding::{pair, psqbd, seq_encode};
use crate::nat::{len, msp_u64, pow2, smash, Nat};

/// A prefix series for a concrete value together with its width and length claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub series: PrefixSeries,
    pub inputs: Vec<Nat>,
    pub scale: Nat,
    /// Largest exponent allowed in the series.
    pub width_exponent: u64,
    pub length_bound: u64,
    pub delta: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid,
    Invalid(String),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Validation::Valid => None,
            Validation::Invalid(r) => Some(r),
        }
    }
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validation::Valid => f.write_str("valid"),
            Validation::Invalid(r) => write!(f, "invalid: {r}"),
        }
    }
}

macro_rules! reject {
    ($($arg:tt)*) => { return Validation::Invalid(format!($($arg)*)) };
}

/// The summands as one sequence of pairs `⟨a, b⟩`, positives first.
fn encoded(series: &PrefixSeries) -> Nat {
    let items: Vec<Nat> = series.summands().map(|s| pair(&s.coeff.value(), &Nat::from(s.exp))).collect();
    let blocksize = items.iter().map(len).max().unwrap_or(0);
    seq_encode(&Nat::from(blocksize), &items).expect("block size covers every item")
}

/// Checks every claim of `c` and that it represents `claimed`.
pub fn validate(c: &Certificate, claimed: &Nat) -> Validation {
    let k = c.series.len() as u64;
    let allowed = c.length_bound.min(len(&c.delta));
    if k > allowed {
        reject!("length {k} exceeds min(k = {}, |δ| = {}) = {allowed}", c.length_bound, len(&c.delta));
    }
    for (side, list) in [("P", &c.series.positives), ("N", &c.series.negatives)] {
        for (i, s) in list.iter().enumerate() {
            if s.exp > c.width_exponent {
                reject!("{side}[{i}] has exponent {} above the width exponent {}", s.exp, c.width_exponent);
            }
            if let Coefficient::Prefix(p) = &s.coeff {
                let Some(x) = c.inputs.get(p.input) else {
                    reject!("{side}[{i}] refers to input {} of {}", p.input, c.inputs.len());
                };
                if p.shift > len(x) {
                    reject!("{side}[{i}] shifts input {} by {} > |x| = {}", p.input, p.shift, len(x));
                }
                if p.value != msp_u64(x, p.shift) {
                    reject!("{side}[{i}] coefficient {} is not MSP(x_{}, {})", p.value, p.input, p.shift);
                }
            }
        }
    }
    let input_sum: Nat = c.inputs.iter().sum();
    let bound = psqbd(&(input_sum + c.width_exponent + 1u32), &pow2(allowed));
    if encoded(&c.series) >= bound {
        reject!("series code exceeds its PSqBd bound");
    }
    match eval_series(&c.series, &c.inputs) {
        Ok(v) if &v == claimed => Validation::Valid,
        Ok(v) => reject!("series evaluates to {v}, not {claimed}"),
        Err(e) => reject!("{e}"),
    }
}

/// `(largest exponent, number of summands)`.
pub fn measure(c: &Certificate) -> (u64, usize) {
    (c.series.max_exponent(), c.series.len())
}

/// Expands every prefix coefficient along its set bits: width grows by `|n|`, length by a
/// factor `|n|`, and `δ` becomes `n # δ`.
pub fn to_bit_series(c: &Certificate, log: &mut OpLog) -> Certificate {
    let expand = |list: &[Summand]| -> Vec<Summand> {
        list.iter()
            .flat_map(|s| match &s.coeff {
                Coefficient::One => vec![s.clone()],
                Coefficient::Prefix(p) => {
                    (0..len(&p.value)).filter(|&i| p.value.bit(i)).map(|i| Summand::one(s.exp + i)).collect()
                }
            })
            .collect()
    };
    let series = PrefixSeries::new(expand(&c.series.positives), expand(&c.series.negatives));
    let scale_len = len(&c.scale);
    log.record(OpKind::ToBitSeries { scale_len }, &[&c.series], &series);
    Certificate {
        series,
        inputs: c.inputs.clone(),
        scale: c.scale.clone(),
        width_exponent: c.width_exponent + scale_len,
        length_bound: c.length_bound.saturating_mul(scale_len),
        delta: smash(&c.scale, &c.delta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat::nat;
    use crate::series::natural_bit_series;

    fn certificate(series: PrefixSeries, inputs: &[u64], scale: u64) -> Certificate {
        let (w, k) = (series.max_exponent(), series.len() as u64);
        Certificate {
            series,
            inputs: inputs.iter().map(|&v| nat(v)).collect(),
            scale: nat(scale),
            width_exponent: w,
            length_bound: k,
            delta: nat(scale * scale),
        }
    }

    #[test]
    fn measure_examples() {
        assert_eq!(measure(&certificate(PrefixSeries::default(), &[], 4)), (0, 0));
        assert_eq!(measure(&certificate(natural_bit_series(&nat(13)).into_series(), &[], 16)), (3, 3));
    }

    #[test]
    fn validation_is_monotone_in_claims() {
        let s = PrefixSeries::new(vec![Summand::prefix(0, 1, nat(6), 2)], vec![Summand::one(1)]);
        let c = certificate(s, &[13], 16);
        assert_eq!(validate(&c, &nat(22)), Validation::Valid);
        for (dw, dk) in [(0, 1), (1, 0), (5, 7)] {
            let wider = Certificate { width_exponent: c.width_exponent + dw, length_bound: c.length_bound + dk, ..c.clone() };
            assert!(validate(&wider, &nat(22)).is_valid());
        }
        let narrow = Certificate { width_exponent: 1, ..c.clone() };
        assert!(!validate(&narrow, &nat(22)).is_valid());
        let short = Certificate { length_bound: 1, ..c.clone() };
        assert!(!validate(&short, &nat(22)).is_valid());
        assert!(!validate(&c, &nat(23)).is_valid());
    }

    #[test]
    fn tampered_coefficients_are_rejected() {
        let s = PrefixSeries::new(vec![Summand::prefix(0, 1, nat(7), 0)], vec![]);
        let c = certificate(s, &[13], 16);
        let v = validate(&c, &nat(7));
        assert!(v.reason().unwrap().contains("MSP"), "{v}");
        let s = PrefixSeries::new(vec![Summand::prefix(1, 0, nat(13), 0)], vec![]);
        assert!(!validate(&certificate(s, &[13], 16), &nat(13)).is_valid());
        let s = PrefixSeries::new(vec![Summand::prefix(0, 5, nat(0), 0)], vec![]);
        assert!(!validate(&certificate(s, &[13], 16), &nat(0)).is_valid());
    }

    #[test]
    fn bit_series_conversion() {
        let s = PrefixSeries::new(vec![Summand::prefix(0, 0, nat(5), 2), Summand::one(7)], vec![]);
        let c = certificate(s, &[5], 8);
        let b = to_bit_series(&c, &mut OpLog::disabled());
        assert_eq!(b.series.positives, vec![Summand::one(2), Summand::one(4), Summand::one(7)]);
        assert!(b.series.is_bit_series());
        assert_eq!(validate(&b, &nat(148)), Validation::Valid);
        assert_eq!(b.delta, smash(&nat(8), &nat(64)));
        let one = certificate(PrefixSeries::new(vec![Summand::one(4)], vec![]), &[3, 3], 4);
        assert_eq!(to_bit_series(&one, &mut OpLog::disabled()).series, one.series);
    }
}
