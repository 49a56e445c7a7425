use std::fmt;
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use sphp_core::blocks::{
    block_bound_check, php_scan, sample_lengths, tau_hypothesis_check, PhpContext, PhpError, PhpRegistry, PhpScan,
    TauFamily,
};
use sphp_core::nat::Nat;
use sphp_core::report::{php_report, tau_report, ScanEntry};
use sphp_core::series::{
    measure, read_certificate, synthesize, term_hash, to_bit_series, validate, write_certificate, Certificate, OpLog,
    SynthError,
};
use sphp_core::term::{diagonal, parse_program, parse_term_in, EvalError, ParseError, Program, Term};

use crate::TermArgs;

/// A failure with its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Status 1: program, term or number syntax.
    Parse(String),
    /// Status 2: arity, range or lookup.
    Usage(String),
    /// Status 3: a certificate or check did not verify.
    Verify(String),
    /// Status 4.
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Verify(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Usage(m) => f.write_str(m),
            CliError::Verify(m) => write!(f, "verification failed: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::UnknownName { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PhpError> for CliError {
    fn from(e: PhpError) -> Self {
        CliError::Usage(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_program(args: &TermArgs) -> Result<Program> {
    match &args.program {
        Some(path) => Ok(parse_program(&read_file(path)?)?),
        None => Ok(Program::default()),
    }
}

fn resolve(args: &TermArgs, program: &Program) -> Result<Term> {
    let text = args.term.as_deref().ok_or_else(|| CliError::Usage("no term given (use --term)".into()))?;
    Ok(parse_term_in(text, program)?)
}

fn load_term(args: &TermArgs) -> Result<Term> {
    resolve(args, &load_program(args)?)
}

fn decimal(field: &str, text: &str) -> Result<Nat> {
    let text = text.trim();
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CliError::Parse(format!("{field}: `{text}` is not a decimal number")));
    }
    Ok(text.parse().expect("digits parse"))
}

fn decimals(text: &str) -> Result<Vec<Nat>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| decimal("--inputs", t)).collect()
}

fn check_arity(f: &Term, inputs: &[Nat]) -> Result<()> {
    if f.arity() != inputs.len() {
        return Err(EvalError::Arity { expected: f.arity(), found: inputs.len() }.into());
    }
    Ok(())
}

pub fn eval(term: &TermArgs, inputs: &str) -> Result<()> {
    let f = load_term(term)?;
    let inputs = decimals(inputs)?;
    println!("{}", sphp_core::term::eval(&f, &inputs)?);
    Ok(())
}

fn certified(term: &TermArgs, inputs: &str, scale: &str) -> Result<(Term, Certificate, Nat)> {
    let f = load_term(term)?;
    let inputs = decimals(inputs)?;
    let scale = decimal("--scale", scale)?;
    check_arity(&f, &inputs)?;
    let c = synthesize(&f, &inputs, &scale)?;
    let value = sphp_core::term::eval(&f, &inputs)?;
    Ok((f, c, value))
}

fn summary(c: &Certificate, value: &Nat) -> Result<String> {
    let v = validate(c, value);
    let (w, k) = measure(c);
    match v.reason() {
        None => Ok(format!("value={value} width-exponent={w} len={k} valid=true")),
        Some(r) => Err(CliError::Verify(r.to_string())),
    }
}

pub fn certify(term: &TermArgs, inputs: &str, scale: &str, out: Option<&Path>) -> Result<()> {
    let (f, c, value) = certified(term, inputs, scale)?;
    let line = summary(&c, &value)?;
    emit(&write_certificate(&c, &term_hash(&f)), out)?;
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    Ok(())
}

pub fn verify(term: &TermArgs, path: &Path) -> Result<()> {
    let doc = read_certificate(&read_file(path)?).map_err(|e| CliError::Parse(e.to_string()))?;
    let f = load_term(term)?;
    if doc.term_hash != term_hash(&f) {
        return Err(CliError::Verify(format!("certificate is for term {}, not {}", doc.term_hash, term_hash(&f))));
    }
    let c = &doc.certificate;
    if c.inputs.len() != f.arity() {
        return Err(CliError::Verify(format!("{} inputs for a term of arity {}", c.inputs.len(), f.arity())));
    }
    let value = sphp_core::term::eval(&f, &c.inputs)?;
    println!("{}", summary(c, &value)?);
    Ok(())
}

pub fn bits(term: &TermArgs, inputs: &str, scale: &str, out: Option<&Path>) -> Result<()> {
    let (f, c, value) = certified(term, inputs, scale)?;
    summary(&c, &value)?;
    let b = to_bit_series(&c, &mut OpLog::disabled());
    let line = summary(&b, &value)?;
    let profile = block_bound_check(&b).map_err(|e| CliError::Verify(e.to_string()))?;
    if let Some(path) = out {
        emit(&write_certificate(&b, &term_hash(&f)), Some(path))?;
    }
    println!("{line} blocks={} bound={} satisfied={}", profile.blocks, profile.bound, profile.satisfied);
    if !profile.satisfied {
        return Err(CliError::Verify(format!("{} blocks exceed 2k + 1 = {}", profile.blocks, profile.bound)));
    }
    Ok(())
}

pub struct PhpOptions {
    pub mode: String,
    pub diagonal: bool,
    pub seed: u64,
    pub max_exhaustive: u64,
    pub samples: usize,
    pub timings: bool,
}

fn doubling_scales(from: &Nat, to: &Nat) -> Vec<Nat> {
    let mut out = Vec::new();
    let mut n = from.clone();
    while &n <= to {
        out.push(n.clone());
        if n == Nat::default() {
            break;
        }
        n <<= 1usize;
    }
    out
}

pub fn php(term: &TermArgs, n_from: &str, n_to: &str, opts: &PhpOptions, out: Option<&Path>) -> Result<()> {
    let registry = PhpRegistry::standard();
    let strategy = registry.get(&opts.mode).ok_or_else(|| {
        let known: Vec<_> = registry.names().collect();
        CliError::Usage(format!("unknown mode `{}` (known: {})", opts.mode, known.join(", ")))
    })?;
    let program = load_program(term)?;
    let terms: Vec<(String, Term)> = match &term.term {
        Some(name) => vec![(name.clone(), resolve(term, &program)?)],
        None if !program.is_empty() => program.iter().map(|(n, t)| (n.to_string(), t.clone())).collect(),
        None => return Err(CliError::Usage("no term given (use --term or a non-empty --program)".into())),
    };
    let scales = doubling_scales(&decimal("--n-from", n_from)?, &decimal("--n-to", n_to)?);
    let ctx = PhpContext {
        max_exhaustive: opts.max_exhaustive,
        samples: opts.samples,
        seed: opts.seed,
        ..PhpContext::default()
    };
    let mut scans: Vec<(String, Term, PhpScan)> = Vec::new();
    for (name, f) in terms {
        let f = if opts.diagonal { diagonal(&f) } else { f };
        let scan = php_scan(strategy.as_ref(), &f, &scales, &ctx)?;
        scans.push((name, f, scan));
    }
    let entries: Vec<ScanEntry<'_>> =
        scans.iter().map(|(name, term, scan)| ScanEntry { name, term, scan }).collect();
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    emit(&php_report(&entries, &opts.mode, opts.seed, timestamp, opts.timings), out)
}

pub fn tau_check(m: u32, b: u32, n_from: &str, n_to: &str, closure_b: u32, out: Option<&Path>) -> Result<()> {
    if m < 3 || b < 1 {
        return Err(CliError::Usage(format!("the family needs m ≥ 3 and b ≥ 1, got m = {m}, b = {b}")));
    }
    let lengths = sample_lengths(&decimal("--n-from", n_from)?, &decimal("--n-to", n_to)?);
    let report = tau_hypothesis_check(TauFamily { m, b }, &lengths, closure_b);
    emit(&tau_report(&report), out)?;
    let threshold = report.threshold.as_ref().map_or("none in range".to_string(), |t| format!("|n| = {t}"));
    eprintln!(
        "samples={} violations={} threshold={threshold} violations-above-threshold={}",
        report.samples.len(),
        report.violations.len(),
        report.violations_above_threshold()
    );
    Ok(())
}

pub fn selftest(seed: u64) -> Result<()> {
    let mut failed = 0;
    for check in sphp_core::selftest::run(seed) {
        match check.outcome {
            Ok(()) => println!("PASS {}", check.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}: {detail}", check.name);
            }
        }
    }
    if failed > 0 {
        return Err(CliError::Verify(format!("{failed} self-test checks failed")));
    }
    Ok(())
}
