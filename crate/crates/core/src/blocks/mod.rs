//! Block counts of binary expansions, the hole `⌊(n#n ∸ 1)/3⌋`, pigeonhole checks and the
//! length-family hypothesis checker.

mod php;
mod tau;

pub use php::{
    php_scan, BlockGap, Exhaustive, PhpContext, PhpError, PhpRegistry, PhpScan, PhpStrategy, PhpVerdict,
};
pub use tau::{sample_lengths, tau_hypothesis_check, ClosureCheck, TauFamily, TauReport, TauSample};

use crate::nat::{len, monus, msp_u64, smash, Nat};
use crate::series::Certificate;

/// `#_B(y)`: the number of maximal runs of equal bits, `0` for `y = 0`.
pub fn num_blocks(y: &Nat) -> u64 {
    // Bit i differs from bit i+1 exactly where y ^ (y >> 1) has a one.
    (y ^ (y >> 1usize)).count_ones()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockProfile {
    pub subject: Nat,
    pub blocks: u64,
    pub bound: u64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockError {
    #[error("block bound needs a bit series, but summand {0} has a prefix coefficient")]
    NotBitSeries(usize),
    #[error("the hole is defined for n ≥ 2, got {0}")]
    ScaleTooSmall(Nat),
}

/// Compares `#_B` of the certified value with `2k + 1` for a bit series of length `k`.
pub fn block_bound_check(c: &Certificate) -> Result<BlockProfile, BlockError> {
    if let Some(i) = c.series.summands().position(|s| s.coeff != crate::series::Coefficient::One) {
        return Err(BlockError::NotBitSeries(i));
    }
    let subject = c.series.value();
    let blocks = num_blocks(&subject);
    let bound = 2 * c.series.len() as u64 + 1;
    Ok(BlockProfile { subject, blocks, bound, satisfied: blocks <= bound })
}

/// `⌊(n#n ∸ 1)/3⌋`, the alternating value `1010…` missed by every `A³` map on `x < n`.
pub fn target_value(n: &Nat) -> Result<Nat, BlockError> {
    if n < &Nat::from(2u32) {
        return Err(BlockError::ScaleTooSmall(n.clone()));
    }
    Ok((smash(n, n) - 1u32) / 3u32)
}

/// `MSP(|n|² ∸ 1, 3)`, a lower bound on `#_B(target_value(n))`.
pub fn target_blocks_lower(n: &Nat) -> Result<u64, BlockError> {
    if n < &Nat::from(2u32) {
        return Err(BlockError::ScaleTooSmall(n.clone()));
    }
    let l = Nat::from(len(n));
    Ok(msp_u64(&monus(&(&l * &l), &Nat::from(1u32)), 3).try_into().expect("fits in u64"))
}
