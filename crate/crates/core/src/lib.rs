//! Bounded recursion algebras `A^τ` over `L₂⁻`, prefix-series complexity certificates for
//! their values, and block-count analysis of the surjective weak pigeonhole principle.

pub mod blocks;
pub mod coding;
pub mod nat;
pub mod series;
pub mod term;
pub mod report;
pub mod selftest;
