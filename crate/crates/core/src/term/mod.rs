//! Programs of the bounded-recursion algebras: syntax, evaluation and structural transforms.

mod amplify;
mod ast;
mod eval;
mod growth;
mod parse;
mod symbols;
mod transform;

pub use amplify::{amplify_eval, blockwise_substitute, AmplifyError, Amplified};
pub use ast::{AlgebraClass, Recursion, Term, TermError};
pub use eval::{eval, EvalError, Evaluator, DEFAULT_MAX_BITS};
pub use growth::{empirical_length_threshold, length_bound_poly, length_exponent, LengthExponent, Poly};
pub use parse::{parse_program, parse_program_with, parse_term, parse_term_in, ParseError, Program};
pub use symbols::{BaseSymbol, BoundRule, SymbolRegistry};
pub use transform::{bound_term, contains_symbol, diagonal};
