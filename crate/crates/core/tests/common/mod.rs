#![allow(dead_code)]

use num_bigint::RandBigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sphp_core::nat::Nat;
use sphp_core::term::{parse_program, Program, Term};

pub const CORPUS: &str = include_str!("../../corpus/a3.sexp");
pub const CONTROL: &str = include_str!("../../corpus/control.sexp");

pub fn corpus() -> Vec<(String, Term)> {
    let program = parse_program(CORPUS).expect("corpus parses");
    program.iter().map(|(n, t)| (n.to_string(), t.clone())).collect()
}

pub fn control() -> Program {
    parse_program(CONTROL).expect("control parses")
}

pub fn nats(v: &[u64]) -> Vec<Nat> {
    v.iter().map(|&x| Nat::from(x)).collect()
}

/// Every vector below `n`.
pub fn all_below(arity: usize, n: u64) -> Vec<Vec<Nat>> {
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
    out
}

pub fn sampled_below(arity: usize, n: &Nat, count: usize, seed: u64) -> Vec<Vec<Nat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n.to_u64().unwrap_or(u64::MAX));
    (0..count).map(|_| (0..arity).map(|_| rng.gen_biguint_below(n)).collect()).collect()
}

/// Prints the one-line verdict for an acceptance criterion.
#[allow(dead_code)]
pub fn verdict(criterion: &str, title: &str, pass: bool, detail: &str) -> bool {
    println!("criterion {criterion} ({title}): {} [{detail}]", if pass { "PASS" } else { "FAIL" });
    pass
}
