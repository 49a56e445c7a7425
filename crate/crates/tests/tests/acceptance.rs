//! Acceptance criteria. Each prints one `criterion N (...): PASS|FAIL [...]` line;
//! the binary exits non-zero when any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::RandBigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{all_below, control, corpus, sampled_below, verdict};
use sphp_core::blocks::{
    num_blocks, php_scan, sample_lengths, target_blocks_lower, target_value, tau_hypothesis_check, BlockGap, Exhaustive,
    PhpContext, TauFamily,
};
use sphp_core::coding::{pair, seq_encode, seq_project, unpair};
use sphp_core::nat::{len, msp_u64, pow2, smash, Nat};
use sphp_core::series::{
    eval_series, read_certificate, synthesize, synthesize_logged, term_hash, to_bit_series, validate,
    write_certificate, OpKind, OpLog, OpRecord, PrefixSeries, Summand,
};
use sphp_core::term::{amplify_eval, blockwise_substitute, diagonal, eval, Amplified, Evaluator, Term};

const SEED: u64 = 0x5eed;
const SMALL_SCALES: [u64; 6] = [2, 4, 8, 16, 32, 64];
const SAMPLED_SCALES: [u64; 2] = [1 << 8, 1 << 12];
const SAMPLES_PER_SCALE: usize = 100;

fn len_u(k: usize) -> u64 {
    len(&Nat::from(k))
}

/// The growth envelope of one logged calculus step, checked independently of the library.
fn envelope_violation(r: &OpRecord) -> Option<String> {
    let (k_out, w_out) = r.result;
    match &r.kind {
        OpKind::CombineSum => {
            let [(k1, w1), (k2, w2)] = r.operands[..] else { return Some("combine_sum arity".into()) };
            (k_out > k1 + k2 || (k_out > 0 && w_out > w1.max(w2)))
                .then(|| format!("combine_sum ({k1},{w1}) ({k2},{w2}) -> ({k_out},{w_out})"))
        }
        OpKind::ApplyMsp { .. } => {
            let (k, w) = r.operands[0];
            let grow = len_u(k) + len(&Nat::from(len_u(k)));
            (k_out as u64 > k as u64 + grow || (k_out > 0 && w_out > w + grow))
                .then(|| format!("apply_msp ({k},{w}) -> ({k_out},{w_out})"))
        }
        OpKind::ToBitSeries { scale_len } => {
            let (k, w) = r.operands[0];
            (k_out as u64 > scale_len * k as u64 || (k_out > 0 && w_out > w + scale_len))
                .then(|| format!("to_bit_series ({k},{w}) at |n| = {scale_len} -> ({k_out},{w_out})"))
        }
    }
}

#[derive(Default)]
struct Sweep {
    certificates: usize,
    unsound: Vec<String>,
    invalid: Vec<String>,
    invalid_bits: Vec<String>,
    calls: usize,
    envelope: Vec<String>,
}

impl Sweep {
    fn merge(mut self, other: Sweep) -> Sweep {
        self.certificates += other.certificates;
        self.unsound.extend(other.unsound);
        self.invalid.extend(other.invalid);
        self.invalid_bits.extend(other.invalid_bits);
        self.calls += other.calls;
        self.envelope.extend(other.envelope);
        self
    }
}

fn sweep_one(name: &str, f: &Term, n: &Nat, xs: &[Nat]) -> Sweep {
    let mut out = Sweep::default();
    let mut log = OpLog::enabled();
    let value = eval(f, xs).expect("corpus terms evaluate");
    let c = synthesize_logged(f, xs, n, &Evaluator::default(), &mut log).expect("inputs are below the scale");
    out.certificates = 1;
    let at = || format!("{name} n={n} x={xs:?}");
    if eval_series(&c.series, xs).ok().as_ref() != Some(&value) {
        out.unsound.push(at());
    }
    let v = validate(&c, &value);
    if !v.is_valid() {
        out.invalid.push(format!("{}: {v}", at()));
    }
    let bits = to_bit_series(&c, &mut log);
    if !validate(&bits, &value).is_valid() {
        out.invalid_bits.push(at());
    }
    out.calls = log.records().len();
    out.envelope = log.records().iter().filter_map(envelope_violation).map(|e| format!("{}: {e}", at())).collect();
    out
}

/// Suite 1, shared with the bookkeeping criterion that audits its calculus steps.
fn soundness_sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let mut jobs: Vec<(String, Term, Nat, Vec<Nat>)> = Vec::new();
        for (name, f) in corpus() {
            for n in SMALL_SCALES {
                for xs in all_below(f.arity(), n) {
                    jobs.push((name.clone(), f.clone(), Nat::from(n), xs));
                }
            }
            for n in SAMPLED_SCALES {
                let n = Nat::from(n);
                for xs in sampled_below(f.arity(), &n, SAMPLES_PER_SCALE, SEED) {
                    jobs.push((name.clone(), f.clone(), n.clone(), xs));
                }
            }
        }
        jobs.par_iter()
            .map(|(name, f, n, xs)| sweep_one(name, f, n, xs))
            .reduce(Sweep::default, Sweep::merge)
    })
}

fn first(list: &[String]) -> String {
    list.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
}

fn criterion_1_certificate_soundness() -> bool {
    let corpus = corpus();
    let covered: Vec<&str> = ["zero", "succ", "add", "monus", "half", "len", "msp", "pad", "smash"]
        .into_iter()
        .filter(|s| !corpus.iter().any(|(_, t)| sphp_core::term::contains_symbol(t, s)))
        .collect();
    let in_a3 = corpus.iter().all(|(_, t)| t.classify().within(3));
    let s = soundness_sweep();
    let pass = corpus.len() >= 20 && covered.is_empty() && in_a3 && s.unsound.is_empty() && s.invalid.is_empty();
    let detail = format!(
        "{} terms, {} certificates, {} unsound, {} invalid{}{}",
        corpus.len(),
        s.certificates,
        s.unsound.len(),
        s.invalid.len(),
        if s.invalid.is_empty() { String::new() } else { format!(": {}", first(&s.invalid)) },
        if covered.is_empty() { String::new() } else { format!("; symbols not covered: {covered:?}") },
    );
    verdict("1", "certificate soundness", pass, &detail)
}

fn criterion_2_msp_error_lemma() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut violations = Vec::new();
    let sum_msp = |a: &[Nat], y: u64| -> Nat { a.iter().map(|x| msp_u64(x, y)).sum() };
    for trial in 0..100_000u32 {
        let k = rng.gen_range(0..=64usize);
        let a: Vec<Nat> = (0..k)
            .map(|_| {
                let bits = rng.gen_range(0..=256u64);
                rng.gen_biguint(bits)
            })
            .collect();
        let y = rng.gen_range(0..=300u64);
        let total: Nat = a.iter().sum();
        // (1): y = 1.
        let (lo, mid) = (sum_msp(&a, 1), msp_u64(&total, 1));
        if !(lo <= mid && mid <= &lo + k.saturating_sub(1)) {
            violations.push(format!("(1) trial {trial}"));
        }
        // (2): general y.
        let (lo, mid) = (sum_msp(&a, y), msp_u64(&total, y));
        let slack: Nat = (0..y.min(64)).map(|i| msp_u64(&Nat::from(k), i)).sum();
        if !(lo <= mid && mid <= lo + slack) {
            violations.push(format!("(2) trial {trial}"));
        }
        // (3): truncated difference.
        let (x1, x2) = (a.first().cloned().unwrap_or_default(), a.last().cloned().unwrap_or_default());
        let d = sphp_core::nat::monus(&msp_u64(&x1, y), &msp_u64(&x2, y));
        let mid = msp_u64(&sphp_core::nat::monus(&x1, &x2), y);
        if !(sphp_core::nat::monus(&d, &Nat::one()) <= mid && mid <= d) {
            violations.push(format!("(3) trial {trial}"));
        }
    }
    verdict("2", "MSP error lemma", violations.is_empty(), &format!("100000 instances, {} violations", violations.len()))
}

fn criterion_3_block_bound() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut series_violations = 0;
    for _ in 0..10_000 {
        let k = rng.gen_range(0..=64usize);
        let (mut p, mut n) = (Vec::new(), Vec::new());
        for _ in 0..k {
            let e = rng.gen_range(0..300u64);
            if rng.gen_bool(0.6) { p.push(Summand::one(e)) } else { n.push(Summand::one(e)) }
        }
        let v = eval_series(&PrefixSeries::new(p, n), &[]).unwrap();
        if num_blocks(&v) > 2 * k as u64 + 1 {
            series_violations += 1;
        }
    }
    let mut step_violations = 0;
    for _ in 0..100_000 {
        let bits = rng.gen_range(0..=256u64);
        let v = rng.gen_biguint(bits);
        let p = pow2(rng.gen_range(0..260u64));
        let before = num_blocks(&v) as i64;
        let ok = if rng.gen() {
            (num_blocks(&(&v + &p)) as i64 - before).abs() <= 2
        } else if v >= p {
            (num_blocks(&(&v - &p)) as i64 - before).abs() <= 2
        } else {
            // Truncation to 0 only removes blocks.
            num_blocks(&Nat::zero()) as i64 <= before + 2
        };
        step_violations += usize::from(!ok);
    }
    verdict(
        "3",
        "block bound",
        series_violations == 0 && step_violations == 0,
        &format!("10000 bit series: {series_violations} violations; 100000 steps: {step_violations} violations"),
    )
}

fn criterion_4_bookkeeping_envelopes() -> bool {
    let s = soundness_sweep();
    let pass = s.envelope.is_empty() && s.invalid_bits.is_empty() && s.calls > 0;
    let detail = format!(
        "{} logged calls, {} envelope violations, {} invalid bit series{}",
        s.calls,
        s.envelope.len(),
        s.invalid_bits.len(),
        if s.envelope.is_empty() { String::new() } else { format!(": {}", first(&s.envelope)) },
    );
    verdict("4", "bookkeeping", pass, &detail)
}

fn golden_thresholds() -> BTreeMap<String, Option<String>> {
    let text = include_str!("golden/block_gap.json");
    serde_json::from_str(text).expect("golden file parses")
}

fn criterion_5_pigeonhole() -> bool {
    let ctx = PhpContext { seed: SEED, samples: 32, ..PhpContext::default() };
    let scales: Vec<Nat> = (2..=8).map(pow2).collect();
    let a3: Vec<(String, Term)> = corpus().into_iter().filter(|(_, t)| t.classify().within(3)).collect();
    let hits: Vec<String> = a3
        .par_iter()
        .flat_map_iter(|(name, f)| {
            let scan = php_scan(&Exhaustive, &diagonal(f), &scales, &ctx).expect("exhaustive scan runs");
            scan.verdicts.into_iter().filter(|v| !v.missed).map(move |v| format!("{name} n={}", v.scale))
        })
        .collect();
    // The polynomial-time control must hit the hole, so the check is not vacuous.
    let control = control();
    let hitter = control.get("a1_hole_hitter").unwrap();
    let control_scan = php_scan(&Exhaustive, hitter, &scales, &ctx).unwrap();
    let control_hits = control_scan.verdicts.iter().filter(|v| !v.missed).count();
    let control_ok = !hitter.classify().within(3) && control_hits == scales.len();

    let towers: Vec<Nat> = (0..=4).map(|j| pow2(1 << j)).collect();
    let golden = golden_thresholds();
    let fresh: BTreeMap<String, Option<String>> = a3
        .par_iter()
        .map(|(name, f)| {
            let scan = php_scan(&BlockGap, f, &towers, &ctx).expect("block-gap scan runs");
            assert!(scan.verdicts.iter().all(|v| v.block_bound_held == Some(true)), "{name}: block bound");
            (name.clone(), scan.threshold.map(|t| t.to_string()))
        })
        .collect();
    if std::env::var_os("SPHP_BLESS").is_some() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/block_gap.json");
        std::fs::write(path, serde_json::to_string_pretty(&fresh).unwrap() + "\n").unwrap();
    }
    let no_gap: Vec<&String> = fresh.iter().filter(|(_, t)| t.is_none()).map(|(n, _)| n).collect();
    let drift: Vec<&String> = fresh.iter().filter(|(n, t)| golden.get(*n) != Some(t)).map(|(n, _)| n).collect();
    let pass = hits.is_empty() && control_ok && no_gap.is_empty() && drift.is_empty();
    let detail = format!(
        "{} A3 terms x {} scales exhaustive: {} hits; control hit {control_hits}/{}; block gap without threshold: {no_gap:?}; thresholds differing from golden: {drift:?}",
        a3.len(),
        scales.len(),
        hits.len(),
        scales.len()
    );
    verdict("5", "pigeonhole at desk scale", pass, &detail)
}

/// `⌊(2^{L²} − 1)/3⌋` as a bit string: `1010…10` or `1010…1`.
fn alternating_oracle(l: u64) -> String {
    let width = l * l - 1;
    (0..width).map(|i| if i % 2 == 0 { '1' } else { '0' }).collect()
}

fn criterion_6_target_structure() -> bool {
    let mut violations = Vec::new();
    for n in 2..=1024u64 {
        let n = Nat::from(n);
        let all_ones = smash(&n, &n) - 1u32;
        if all_ones.count_ones() != len(&all_ones) {
            violations.push(format!("n={n}: n#n-1 not all ones"));
        }
        let t = target_value(&n).unwrap();
        let r = &all_ones - &t * 3u32;
        if &t * 3u32 > all_ones || r > Nat::from(2u32) {
            violations.push(format!("n={n}: division"));
        }
        if t.to_str_radix(2) != alternating_oracle(len(&n)) {
            violations.push(format!("n={n}: pattern"));
        }
        if num_blocks(&t) < target_blocks_lower(&n).unwrap() {
            violations.push(format!("n={n}: block lower bound"));
        }
    }
    verdict("6", "target structure", violations.is_empty(), &format!("n = 2..1024, {} violations", violations.len()))
}

fn criterion_7_coding_round_trips() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut pair_failures = 0;
    for _ in 0..10_000 {
        let (bx, by) = (rng.gen_range(0..=200u64), rng.gen_range(0..=200u64));
        let (x, y) = (rng.gen_biguint(bx), rng.gen_biguint(by));
        pair_failures += usize::from(unpair(&pair(&x, &y)).ok() != Some((x, y)));
    }
    let mut seq_failures = 0;
    for _ in 0..10_000 {
        let bits = rng.gen_range(1..=64u64);
        let items: Vec<Nat> = (0..rng.gen_range(0..=16)).map(|_| rng.gen_biguint(bits)).collect();
        let w = seq_encode(&Nat::from(bits), &items).unwrap();
        let ok = items.iter().enumerate().all(|(i, item)| &seq_project(&Nat::from(i), &w) == item)
            && seq_project(&Nat::from(items.len()), &w).is_zero();
        seq_failures += usize::from(!ok);
    }
    let mut file_failures = Vec::new();
    let mut files = 0;
    for (name, f) in corpus() {
        for xs in sampled_below(f.arity(), &Nat::from(64u32), 5, SEED) {
            let c = synthesize(&f, &xs, &Nat::from(64u32)).unwrap();
            let text = write_certificate(&c, &term_hash(&f));
            let doc = read_certificate(&text).unwrap();
            files += 1;
            if doc.certificate != c || write_certificate(&doc.certificate, &doc.term_hash) != text {
                file_failures.push(name.clone());
            }
        }
    }
    let pass = pair_failures == 0 && seq_failures == 0 && file_failures.is_empty();
    verdict(
        "7",
        "coding round trips",
        pass,
        &format!("pairs {pair_failures}/10000, sequences {seq_failures}/10000, certificate files {}/{files} failures", file_failures.len()),
    )
}

/// Blockwise substitution on bit strings.
fn substitute_oracle(f0: &Term, l: u64, value: &Nat, width: u64) -> Option<(Nat, u64)> {
    let digits = format!("{:0>w$}", value.to_str_radix(2), w = width as usize);
    let mut out = String::new();
    for chunk in digits.as_bytes().chunks(l as usize) {
        let block = Nat::parse_bytes(chunk, 2).unwrap();
        let image = eval(f0, &[block]).ok()?.to_str_radix(2);
        if image.len() as u64 > 2 * l {
            return None;
        }
        out.push_str(&format!("{image:0>w$}", w = 2 * l as usize));
    }
    Some((Nat::parse_bytes(out.as_bytes(), 2).unwrap_or_default(), out.len() as u64))
}

fn criterion_8_amplification() -> bool {
    let corpus: BTreeMap<String, Term> = corpus().into_iter().collect();
    let maps = ["ident", "double", "pad_self", "successor", "halve", "five_x", "top_half"];
    let ev = Evaluator::default();
    let (mut checked, mut mismatches) = (0, Vec::new());
    for name in maps {
        let f0 = &corpus[name];
        for m in 1..16u64 {
            let l = len(&Nat::from(m));
            for x in 0..(1u64 << l) {
                for r in 1..=3u32 {
                    let Ok(cur) = amplify_eval(f0, &Nat::from(m), r, &Nat::from(x), &ev) else { continue };
                    let next = amplify_eval(f0, &Nat::from(m), r + 1, &Nat::from(x), &ev);
                    let oracle = substitute_oracle(f0, l, &cur.value, cur.width);
                    let direct = blockwise_substitute(f0, &Nat::from(m), &cur, &ev).ok();
                    checked += 1;
                    let agree = match (&next, &oracle) {
                        (Ok(Amplified { value, width }), Some((v, w))) => value == v && width == w,
                        (Err(_), None) => true,
                        _ => false,
                    };
                    let widths = cur.width == (1 << r) * l && direct.as_ref() == next.as_ref().ok();
                    if !(agree && widths) {
                        mismatches.push(format!("{name} m={m} x={x} r={r}"));
                    }
                }
            }
        }
    }
    verdict(
        "8",
        "amplification mechanics",
        mismatches.is_empty() && checked > 0,
        &format!("{checked} (map, m, x, r) cases, {} mismatches {}", mismatches.len(), first(&mismatches)),
    )
}

fn criterion_9a_tau_hypothesis() -> bool {
    // n = 2^{L-1} for every length L = |n| up to 2^16 + 1, which includes every tower point.
    let lengths = sample_lengths(&Nat::from(2u32), &(pow2(16) + 1u32));
    let r = tau_hypothesis_check(TauFamily { m: 3, b: 1 }, &lengths, 0);
    let threshold = r.threshold.as_ref().map_or("none in range".to_string(), |t| format!("|n| = {t}"));
    let pass = r.threshold.is_some() && r.violations_above_threshold() == 0;
    verdict(
        "9a",
        "tau hypothesis for m = 3, b = 1",
        pass,
        &format!(
            "{} sampled scales, {} violations, threshold {threshold}, {} violations above it",
            r.samples.len(),
            r.violations.len(),
            r.violations_above_threshold()
        ),
    )
}

fn criterion_9b_closure_laws() -> bool {
    let lengths = sample_lengths(&Nat::from(2u32), &(pow2(16) + 1u32));
    let mut failures = Vec::new();
    let mut cases = 0;
    for m in 3..=5 {
        let r = tau_hypothesis_check(TauFamily { m, b: 1 }, &lengths, 4);
        for c in &r.closure {
            cases += 1;
            let product = TauFamily { m, b: c.b1 }.product(TauFamily { m, b: c.b2 });
            if !c.product_exact || !c.sum_bounded || product != Some(TauFamily { m, b: c.b1 + c.b2 }) {
                failures.push(format!("m={m} b1={} b2={}", c.b1, c.b2));
            }
        }
    }
    verdict("9b", "closure laws", failures.is_empty(), &format!("{cases} (m, b1, b2) cases, {} failures", failures.len()))
}

type Criterion = fn() -> bool;

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("1", criterion_1_certificate_soundness),
        ("2", criterion_2_msp_error_lemma),
        ("3", criterion_3_block_bound),
        ("4", criterion_4_bookkeeping_envelopes),
        ("5", criterion_5_pigeonhole),
        ("6", criterion_6_target_structure),
        ("7", criterion_7_coding_round_trips),
        ("8", criterion_8_amplification),
        ("9a", criterion_9a_tau_hypothesis),
        ("9b", criterion_9b_closure_laws),
    ];
    let failed: Vec<&str> = criteria
        .iter()
        .filter(|(name, run)| match std::panic::catch_unwind(run) {
            Ok(pass) => !pass,
            Err(_) => {
                println!("criterion {name}: FAIL [panicked]");
                true
            }
        })
        .map(|(name, _)| *name)
        .collect();
    println!("acceptance: {} of {} passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("acceptance: failed {failed:?}");
        std::process::exit(1);
    }
}
