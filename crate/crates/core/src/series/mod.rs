//! Prefix-series and bit-series certificates for values of `A^τ` terms.

mod certificate;
mod format;
mod ops;
mod synth;

pub use certificate::{measure, to_bit_series, validate, Certificate, Validation};
pub use format::{read_certificate, write_certificate, CertificateDocument, FormatError};
pub use ops::{
    apply_msp, apply_pad, combine_sum, eval_series, natural_bit_series, shift_exponents, signed_bit_series, BitSeries, Coefficient,
    OpKind, OpLog, OpRecord, Prefix, PrefixSeries, SeriesError, SumOp, Summand,
};
pub use synth::{synthesize, synthesize_logged, term_hash, SynthError};
