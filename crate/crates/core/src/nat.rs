//! Exact primitives of the bounded-arithmetic language over arbitrary-precision naturals.
//!
//! Every function here is total on `Nat`. Shift amounts that do not fit a machine word are
//! handled by their meaning (a right shift past the length yields zero); operations whose
//! *result* would not fit in memory (a left shift by more than `usize::MAX` bits) panic,
//! as any bignum library would.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision natural number.
pub type Nat = BigUint;

pub fn nat(v: u64) -> Nat {
    Nat::from(v)
}

/// Truncated subtraction `a ∸ b`.
pub fn monus(a: &Nat, b: &Nat) -> Nat {
    if a >= b {
        a - b
    } else {
        Nat::zero()
    }
}

/// Binary length `⌈log₂(a+1)⌉`, with `len(0) = 0`.
pub fn len(a: &Nat) -> u64 {
    a.bits()
}

pub fn len_nat(a: &Nat) -> Nat {
    Nat::from(a.bits())
}

/// Iterated length: `|a|_0 = a`, `|a|_{m+1} = len(|a|_m)`.
pub fn iter_len(a: &Nat, m: u32) -> Nat {
    let mut cur = a.clone();
    for _ in 0..m {
        let next = len_nat(&cur);
        if next == cur {
            // len has fixed points at 0, 1 and 2.
            break;
        }
        cur = next;
    }
    cur
}

/// Most significant part `⌊a / 2^i⌋`.
pub fn msp(a: &Nat, i: &Nat) -> Nat {
    match i.to_u64() {
        Some(s) => msp_u64(a, s),
        None => Nat::zero(),
    }
}

pub fn msp_u64(a: &Nat, i: u64) -> Nat {
    if i >= a.bits() {
        return Nat::zero();
    }
    a >> i
}

/// Bit `i` of `w`: `msp(w,i) ∸ 2·⌊msp(w,i)/2⌋`.
pub fn bit(i: &Nat, w: &Nat) -> Nat {
    match i.to_u64() {
        Some(i) if w.bit(i) => Nat::one(),
        _ => Nat::zero(),
    }
}

pub fn half(a: &Nat) -> Nat {
    a >> 1u32
}

/// `a · 2^{len(b)}`.
pub fn pad(a: &Nat, b: &Nat) -> Nat {
    if a.is_zero() {
        return Nat::zero();
    }
    a << shift_amount(len(b))
}

/// Smash `a # b = 2^{len(a)·len(b)}`.
pub fn smash(a: &Nat, b: &Nat) -> Nat {
    pow2(len(a) * len(b))
}

/// `2^e`.
pub fn pow2(e: u64) -> Nat {
    Nat::one() << shift_amount(e)
}

fn shift_amount(e: u64) -> usize {
    usize::try_from(e).expect("shift exceeds addressable memory")
}

/// `#^b(n)`: the left fold `n # n # … # n` over `b` copies of `n`.
pub fn smash_iter(b: u32, n: &Nat) -> Result<Nat, NumericsError> {
    if b < 2 {
        return Err(NumericsError::SmashArity(b));
    }
    let mut acc = n.clone();
    for _ in 1..b {
        acc = smash(&acc, n);
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericsError {
    #[error("#^b needs at least two operands, got b = {0}")]
    SmashArity(u32),
    #[error("item {index} has length {len}, exceeding block size {blocksize}")]
    OversizedItem { index: usize, len: u64, blocksize: u64 },
    #[error("{0} is not the code of an ordered pair")]
    NotAPair(Nat),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        nat(v)
    }

    #[test]
    fn monus_clamps() {
        assert_eq!(monus(&n(5), &n(3)), n(2));
        assert_eq!(monus(&n(3), &n(5)), n(0));
        assert_eq!(monus(&n(0), &n(0)), n(0));
    }

    #[test]
    fn lengths() {
        assert_eq!(len(&n(0)), 0);
        assert_eq!(len(&n(1)), 1);
        assert_eq!(len(&n(13)), 4);
        assert_eq!(iter_len(&n(13), 0), n(13));
        assert_eq!(iter_len(&n(13), 1), n(4));
        assert_eq!(iter_len(&n(13), 2), n(3));
        assert_eq!(iter_len(&n(13), 3), n(2));
        assert_eq!(iter_len(&n(13), 40), n(2));
        assert_eq!(iter_len(&n(0), 5), n(0));
    }

    #[test]
    fn msp_and_bit() {
        assert_eq!(msp(&n(13), &n(2)), n(3));
        assert_eq!(msp(&n(13), &n(0)), n(13));
        assert_eq!(msp(&n(5), &n(10)), n(0));
        let huge = pow2(70);
        assert_eq!(msp(&n(5), &huge), n(0));
        assert_eq!(bit(&n(0), &n(13)), n(1));
        assert_eq!(bit(&n(1), &n(13)), n(0));
        assert_eq!(bit(&n(4), &n(13)), n(0));
        assert_eq!(bit(&huge, &n(13)), n(0));
    }

    #[test]
    fn smash_and_pad() {
        assert_eq!(smash(&n(3), &n(3)), n(16));
        assert_eq!(smash(&n(0), &n(99)), n(1));
        assert_eq!(pad(&n(3), &n(5)), n(24));
        assert_eq!(pad(&n(7), &n(0)), n(7));
        assert_eq!(half(&n(13)), n(6));
    }

    #[test]
    fn smash_iteration() {
        assert_eq!(smash_iter(2, &n(4)).unwrap(), n(512));
        assert_eq!(smash_iter(2, &n(3)).unwrap(), n(16));
        // (4#4)#4 = 512 # 4 = 2^{10·3}
        assert_eq!(smash_iter(3, &n(4)).unwrap(), pow2(30));
        assert_eq!(smash_iter(1, &n(4)), Err(NumericsError::SmashArity(1)));
    }
}
