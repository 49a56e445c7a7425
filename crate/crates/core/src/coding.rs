//! Pairing and sequence coding over `Nat`.
//!
//! `pair(x, y)` is the number whose binary string is `1⟨x⟩1⟨y⟩`, both payload blocks left-padded
//! with zeros to width `len(x) + len(y)`. For `x = y = 0` the payload width is zero and the code
//! is `11₂ = 3`.
//!
//! A sequence is `pair(blocksize, body)` where `body` is a leading `1` sentinel followed by the
//! items, each left-padded to `blocksize` bits, with item 0 in the lowest block.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::nat::{len, pow2, smash, Nat, NumericsError};

pub fn pair(x: &Nat, y: &Nat) -> Nat {
    let width = (len(x) + len(y)) as usize;
    let high = (BigUint::one() << width) | x;
    let low = (BigUint::one() << width) | y;
    (high << (width + 1)) | low
}

pub fn unpair(p: &Nat) -> Result<(Nat, Nat), NumericsError> {
    let total = len(p);
    if total < 2 || !total.is_multiple_of(2) {
        return Err(NumericsError::NotAPair(p.clone()));
    }
    let width = (total - 2) / 2;
    if !p.bit(width) {
        return Err(NumericsError::NotAPair(p.clone()));
    }
    let mask = pow2(width) - 1u32;
    let y = p & &mask;
    let x = (p >> (width + 1)) & &mask;
    if len(&x) + len(&y) != width {
        return Err(NumericsError::NotAPair(p.clone()));
    }
    Ok((x, y))
}

/// `SqBd(a, b) = 64 · ((2 # a) # (2(2b+1)))`, smash taken left-associatively.
pub fn sqbd(a: &Nat, b: &Nat) -> Nat {
    let two = Nat::from(2u32);
    let inner = smash(&two, a);
    let arg: Nat = (b * 2u32 + 1u32) * 2u32;
    smash(&inner, &arg) * 64u32
}

/// `PSqBd(a, b) = SqBd(SqBd(a, 4), b)`.
pub fn psqbd(a: &Nat, b: &Nat) -> Nat {
    sqbd(&sqbd(a, &Nat::from(4u32)), b)
}

pub fn seq_encode(blocksize: &Nat, items: &[Nat]) -> Result<Nat, NumericsError> {
    let bs = blocksize.to_u64().unwrap_or(u64::MAX);
    for (index, item) in items.iter().enumerate() {
        if len(item) > bs {
            return Err(NumericsError::OversizedItem { index, len: len(item), blocksize: bs });
        }
    }
    let bs = bs as usize;
    let mut body = BigUint::one() << (bs * items.len());
    for (i, item) in items.iter().enumerate() {
        body |= item << (i * bs);
    }
    Ok(pair(blocksize, &body))
}

/// Decodes a sequence code into its block size and items. `None` if `w` is not a sequence code.
///
/// A zero block size carries no item count; it decodes as the empty sequence.
pub fn seq_decode(w: &Nat) -> Option<(u64, Vec<Nat>)> {
    let (bs, body) = unpair(w).ok()?;
    let bs = bs.to_u64()?;
    let body_len = len(&body);
    if body_len == 0 {
        return None;
    }
    if bs == 0 {
        return if body.is_one() { Some((0, Vec::new())) } else { None };
    }
    if !(body_len - 1).is_multiple_of(bs) {
        return None;
    }
    let count = (body_len - 1) / bs;
    let mask = pow2(bs) - 1u32;
    let items = (0..count).map(|i| (&body >> (i * bs) as usize) & &mask).collect();
    Some((bs, items))
}

/// The `i`-th element of the sequence coded by `w`; zero out of range or when `w` is no sequence.
pub fn seq_project(i: &Nat, w: &Nat) -> Nat {
    let Some((_, items)) = seq_decode(w) else {
        return Nat::zero();
    };
    i.to_usize().and_then(|i| items.get(i).cloned()).unwrap_or_default()
}
