//! Quick end-to-end checks of worked examples, run by `sphp selftest`.

use num_bigint::RandBigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocks::{num_blocks, target_value, tau_hypothesis_check, TauFamily};
use crate::coding::{pair, psqbd, seq_encode, seq_project, sqbd, unpair};
use crate::nat::{iter_len, msp, nat, pad, smash, smash_iter, Nat};
use crate::series::{synthesize, to_bit_series, validate, OpLog};
use crate::term::{amplify_eval, eval, parse_term, Evaluator};

pub struct Check {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

const DOUBLING: &str = "(comp (rec 3 (proj 0 1) (comp pad (proj 2 3) (proj 2 3)) (proj 1 2) \
                        (comp smash (proj 1 2) (proj 1 2))) (proj 0 1) (proj 0 1))";

fn doubling_certificate() -> Result<(), String> {
    let f = parse_term(DOUBLING).map_err(|e| e.to_string())?;
    let c = synthesize(&f, &[nat(13)], &nat(16)).map_err(|e| e.to_string())?;
    let value = eval(&f, &[nat(13)]).map_err(|e| e.to_string())?;
    expect_eq(value.clone(), nat(53248))?;
    let v = validate(&c, &value);
    if !v.is_valid() {
        return Err(v.to_string());
    }
    let bits = to_bit_series(&c, &mut OpLog::disabled());
    match validate(&bits, &value) {
        v if v.is_valid() => Ok(()),
        v => Err(format!("bit series: {v}")),
    }
}

fn amplification() -> Result<(), String> {
    let f0 = parse_term("(comp add (comp pad (proj 0 1) (comp succ (comp succ (comp zero (proj 0 1))))) (proj 0 1))")
        .map_err(|e| e.to_string())?;
    let v = amplify_eval(&f0, &nat(3), 2, &nat(1), &Evaluator::default()).map_err(|e| e.to_string())?;
    expect_eq((v.value, v.width), (nat(85), 8))
}

fn random_pairs(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let (bx, by) = (rng.gen_range(0..200), rng.gen_range(0..200));
        let (x, y) = (rng.gen_biguint(bx), rng.gen_biguint(by));
        if unpair(&pair(&x, &y)).ok() != Some((x.clone(), y.clone())) {
            return Err(format!("pair({x}, {y}) does not invert"));
        }
    }
    Ok(())
}

fn random_sequences(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let bits = rng.gen_range(1..64u64);
        let items: Vec<Nat> = (0..rng.gen_range(0..20)).map(|_| rng.gen_biguint(bits)).collect();
        let w = seq_encode(&Nat::from(bits), &items).map_err(|e| e.to_string())?;
        for (i, item) in items.iter().enumerate() {
            if &seq_project(&Nat::from(i), &w) != item {
                return Err(format!("item {i} of a {bits}-bit sequence does not project back"));
            }
        }
    }
    Ok(())
}

fn random_block_steps(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let bits = rng.gen_range(0..256);
        let v = rng.gen_biguint(bits);
        let p = Nat::from(1u32) << rng.gen_range(0..260usize);
        let w = if rng.gen() { &v + &p } else { crate::nat::monus(&v, &p) };
        if num_blocks(&w) > num_blocks(&v) + 2 {
            return Err(format!("{v} ± {p} gains more than two blocks"));
        }
    }
    Ok(())
}

type CheckFn = Box<dyn Fn() -> Result<(), String>>;

/// Worked examples plus randomized round trips drawn from `seed`.
pub fn run(seed: u64) -> Vec<Check> {
    let checks: Vec<(&'static str, CheckFn)> = vec![
        ("iterated length", Box::new(|| expect_eq(iter_len(&nat(13), 3), nat(2)))),
        ("msp", Box::new(|| expect_eq(msp(&nat(13), &nat(2)), nat(3)))),
        ("pad and smash", Box::new(|| expect_eq((pad(&nat(5), &nat(3)), smash(&nat(3), &nat(3))), (nat(20), nat(16))))),
        ("iterated smash", Box::new(|| expect_eq(smash_iter(3, &nat(4)).ok(), Some(nat(1) << 30usize)))),
        ("pairing", Box::new(|| expect_eq(unpair(&pair(&nat(2), &nat(3))).ok(), Some((nat(2), nat(3)))))),
        ("sequence bounds", Box::new(|| expect_eq(psqbd(&nat(0), &nat(0)), sqbd(&sqbd(&nat(0), &nat(4)), &nat(0))))),
        ("doubling certificate", Box::new(doubling_certificate)),
        ("hole at n = 4", Box::new(|| expect_eq(target_value(&nat(4)).map(|t| (num_blocks(&t), t)).ok(), Some((8, nat(170)))))),
        ("amplification", Box::new(amplification)),
        ("random pairs", Box::new(move || random_pairs(seed))),
        ("random sequences", Box::new(move || random_sequences(seed))),
        ("random block steps", Box::new(move || random_block_steps(seed))),
        (
            "closure laws",
            Box::new(|| {
                let lengths: Vec<Nat> = (1..=16u32).map(|j| (nat(1) << j as usize) + 1u32).collect();
                let r = tau_hypothesis_check(TauFamily { m: 3, b: 1 }, &lengths, 4);
                expect_eq(r.closure.iter().all(|c| c.product_exact && c.sum_bounded), true)
            }),
        ),
    ];
    checks.into_iter().map(|(name, f)| Check { name, outcome: f() }).collect()
}
