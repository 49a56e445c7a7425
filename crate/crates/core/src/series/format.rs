//! Certificate documents: JSON with canonical field order and decimal strings for numbers.

use serde::{Deserialize, Serialize};

use super::certificate::Certificate;
use super::ops::{Coefficient, PrefixSeries, Summand};
use crate::nat::{msp_u64, Nat};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed certificate document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("`{field}`: `{text}` is not a decimal number")]
    Number { field: &'static str, text: String },
    #[error("coefficient `{0}` is neither `1` nor `msp j y`")]
    Coefficient(String),
    #[error("coefficient `msp {input} …` refers to one of only {available} inputs")]
    DanglingInput { input: usize, available: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateDocument {
    pub term_hash: String,
    pub certificate: Certificate,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSummand {
    coeff: String,
    exp: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCertificate {
    #[serde(rename = "term-hash")]
    term_hash: String,
    inputs: Vec<String>,
    scale: String,
    #[serde(rename = "width-exponent")]
    width_exponent: String,
    length: String,
    delta: String,
    #[serde(rename = "P")]
    positives: Vec<RawSummand>,
    #[serde(rename = "N")]
    negatives: Vec<RawSummand>,
}

fn raw_summands(list: &[Summand]) -> Vec<RawSummand> {
    list.iter()
        .map(|s| RawSummand {
            coeff: match &s.coeff {
                Coefficient::One => "1".to_string(),
                Coefficient::Prefix(p) => format!("msp {} {}", p.input, p.shift),
            },
            exp: s.exp.to_string(),
        })
        .collect()
}

pub fn write_certificate(c: &Certificate, term_hash: &str) -> String {
    let raw = RawCertificate {
        term_hash: term_hash.to_string(),
        inputs: c.inputs.iter().map(Nat::to_string).collect(),
        scale: c.scale.to_string(),
        width_exponent: c.width_exponent.to_string(),
        length: c.length_bound.to_string(),
        delta: c.delta.to_string(),
        positives: raw_summands(&c.series.positives),
        negatives: raw_summands(&c.series.negatives),
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("plain strings serialize");
    text.push('\n');
    text
}

fn decimal<T: std::str::FromStr>(field: &'static str, text: &str) -> Result<T, FormatError> {
    let canonical = !text.is_empty() && text.bytes().all(|b| b.is_ascii_digit()) && (text == "0" || !text.starts_with('0'));
    let parsed = canonical.then(|| text.parse().ok()).flatten();
    parsed.ok_or_else(|| FormatError::Number { field, text: text.to_string() })
}

fn parse_summand(raw: &RawSummand, inputs: &[Nat]) -> Result<Summand, FormatError> {
    let exp = decimal("exp", &raw.exp)?;
    if raw.coeff == "1" {
        return Ok(Summand::one(exp));
    }
    let bad = || FormatError::Coefficient(raw.coeff.clone());
    let mut words = raw.coeff.split(' ');
    if words.next() != Some("msp") {
        return Err(bad());
    }
    let (Some(j), Some(y), None) = (words.next(), words.next(), words.next()) else {
        return Err(bad());
    };
    let (input, shift): (usize, u64) = (decimal("coeff", j)?, decimal("coeff", y)?);
    let x = inputs.get(input).ok_or(FormatError::DanglingInput { input, available: inputs.len() })?;
    Ok(Summand::prefix(input, shift, msp_u64(x, shift), exp))
}

pub fn read_certificate(text: &str) -> Result<CertificateDocument, FormatError> {
    let raw: RawCertificate = serde_json::from_str(text)?;
    let inputs = raw.inputs.iter().map(|t| decimal("inputs", t)).collect::<Result<Vec<Nat>, _>>()?;
    let parse_list = |list: &[RawSummand]| list.iter().map(|s| parse_summand(s, &inputs)).collect::<Result<Vec<_>, _>>();
    let series = PrefixSeries::new(parse_list(&raw.positives)?, parse_list(&raw.negatives)?);
    let certificate = Certificate {
        series,
        scale: decimal("scale", &raw.scale)?,
        width_exponent: decimal("width-exponent", &raw.width_exponent)?,
        length_bound: decimal("length", &raw.length)?,
        delta: decimal("delta", &raw.delta)?,
        inputs,
    };
    Ok(CertificateDocument { term_hash: raw.term_hash, certificate })
}
