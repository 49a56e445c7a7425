//! Amplifying a unary map onto `2^{2|m|}` by blockwise substitution.

use num_traits::Zero;

use super::ast::Term;
use super::eval::{EvalError, Evaluator};
use crate::nat::{len, Nat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AmplifyError {
    #[error("amplification needs a unary term, got arity {0}")]
    NotUnary(usize),
    #[error("amplification needs at least one round")]
    NoRounds,
    #[error("input {x} does not fit in {bits} bits")]
    InputTooWide { x: Nat, bits: u64 },
    #[error("image {image} of block {block} does not fit in {bits} bits")]
    ImageTooWide { block: Nat, image: Nat, bits: u64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A value together with its allocated bit width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amplified {
    pub value: Nat,
    pub width: u64,
}

fn check_unary(f0: &Term) -> Result<(), AmplifyError> {
    match f0.arity() {
        1 => Ok(()),
        a => Err(AmplifyError::NotUnary(a)),
    }
}

fn image(f0: &Term, block: Nat, bits: u64, evaluator: &Evaluator) -> Result<Nat, AmplifyError> {
    let image = evaluator.eval(f0, std::slice::from_ref(&block))?;
    if len(&image) > bits {
        return Err(AmplifyError::ImageTooWide { block, image, bits });
    }
    Ok(image)
}

/// Splits `v` (of allocated width `v.width`) into `|m|`-bit blocks, low to high, and puts
/// `f0(block)` in a `2|m|`-bit slot for each.
pub fn blockwise_substitute(
    f0: &Term,
    m: &Nat,
    v: &Amplified,
    evaluator: &Evaluator,
) -> Result<Amplified, AmplifyError> {
    check_unary(f0)?;
    let block_bits = len(m);
    if block_bits == 0 {
        return Ok(Amplified { value: Nat::zero(), width: 0 });
    }
    let blocks = v.width.div_ceil(block_bits);
    let mask = (Nat::from(1u32) << block_bits as usize) - 1u32;
    let mut value = Nat::zero();
    for b in (0..blocks).rev() {
        let block = (&v.value >> (b * block_bits) as usize) & &mask;
        value <<= (2 * block_bits) as usize;
        value |= image(f0, block, 2 * block_bits, evaluator)?;
    }
    Ok(Amplified { value, width: blocks * 2 * block_bits })
}

/// `f_r(x)` for `f_1 := f0` and `f_{r+1} :=` blockwise substitution of `f0` into `f_r`.
pub fn amplify_eval(f0: &Term, m: &Nat, r: u32, x: &Nat, evaluator: &Evaluator) -> Result<Amplified, AmplifyError> {
    check_unary(f0)?;
    if r == 0 {
        return Err(AmplifyError::NoRounds);
    }
    let bits = len(m);
    if len(x) > bits {
        return Err(AmplifyError::InputTooWide { x: x.clone(), bits });
    }
    let mut v = Amplified { value: image(f0, x.clone(), 2 * bits, evaluator)?, width: 2 * bits };
    for _ in 1..r {
        v = blockwise_substitute(f0, m, &v, evaluator)?;
    }
    Ok(v)
}
