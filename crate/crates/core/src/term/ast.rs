use std::fmt;
use std::sync::Arc;

use super::symbols::BaseSymbol;

/// A program of `A^τ` over the base language `L₂⁻`, with `τ` the iterated-length family.
#[derive(Clone)]
pub enum Term {
    Base(Arc<dyn BaseSymbol>),
    /// `π^arity_index`.
    Proj { index: usize, arity: usize },
    /// `outer(inner₀(x⃗), …, inner_{r-1}(x⃗))`.
    Comp { outer: Arc<Term>, inner: Vec<Term> },
    Rec(Arc<Recursion>),
}

/// `|·|_level`-bounded primitive recursion:
///
/// ```text
/// F(0, x⃗)   = base(x⃗)
/// F(i+1, x⃗) = min(step(i, x⃗, F(i, x⃗)), bound(i, x⃗))
/// f(n, x⃗)   = F(|count(n, x⃗)|_level, x⃗)
/// ```
#[derive(Clone, PartialEq)]
pub struct Recursion {
    pub level: u32,
    pub base: Term,
    pub step: Term,
    pub count: Term,
    pub bound: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("projection index {index} out of range for arity {arity}")]
    ProjectionRange { index: usize, arity: usize },
    #[error("projection arity must be at least 1")]
    NullaryProjection,
    #[error("composition: `{outer}` has arity {expected} but is applied to {found} terms")]
    CompositionWidth { outer: String, expected: usize, found: usize },
    #[error("composition: inner term {position} has arity {found}, expected {expected}")]
    CompositionArity { position: usize, expected: usize, found: usize },
    #[error("rec: level must be at least 1")]
    RecursionLevel,
    #[error("rec: {slot} has arity {found}, expected {expected}")]
    RecursionArity { slot: &'static str, expected: usize, found: usize },
    #[error("rec: {slot} must be an L2- term without recursion")]
    RecursionInBound { slot: &'static str },
}

impl Term {
    pub fn proj(index: usize, arity: usize) -> Result<Term, TermError> {
        if arity == 0 {
            return Err(TermError::NullaryProjection);
        }
        if index >= arity {
            return Err(TermError::ProjectionRange { index, arity });
        }
        Ok(Term::Proj { index, arity })
    }

    pub fn comp(outer: Term, inner: Vec<Term>) -> Result<Term, TermError> {
        if outer.arity() != inner.len() {
            return Err(TermError::CompositionWidth {
                outer: outer.to_string(),
                expected: outer.arity(),
                found: inner.len(),
            });
        }
        let expected = inner[0].arity();
        for (position, g) in inner.iter().enumerate() {
            if g.arity() != expected {
                return Err(TermError::CompositionArity { position, expected, found: g.arity() });
            }
        }
        Ok(Term::Comp { outer: Arc::new(outer), inner })
    }

    pub fn rec(level: u32, base: Term, step: Term, count: Term, bound: Term) -> Result<Term, TermError> {
        if level == 0 {
            return Err(TermError::RecursionLevel);
        }
        let p = base.arity();
        let checks = [("step", &step, p + 2), ("count", &count, p + 1), ("bound", &bound, p + 1)];
        for (slot, term, expected) in checks {
            if term.arity() != expected {
                return Err(TermError::RecursionArity { slot, expected, found: term.arity() });
            }
        }
        if count.has_recursion() {
            return Err(TermError::RecursionInBound { slot: "count" });
        }
        if bound.has_recursion() {
            return Err(TermError::RecursionInBound { slot: "bound" });
        }
        Ok(Term::Rec(Arc::new(Recursion { level, base, step, count, bound })))
    }

    pub fn arity(&self) -> usize {
        match self {
            Term::Base(sym) => sym.arity(),
            Term::Proj { arity, .. } => *arity,
            Term::Comp { inner, .. } => inner[0].arity(),
            Term::Rec(r) => r.base.arity() + 1,
        }
    }

    pub fn has_recursion(&self) -> bool {
        match self {
            Term::Base(_) | Term::Proj { .. } => false,
            Term::Comp { outer, inner } => outer.has_recursion() || inner.iter().any(Term::has_recursion),
            Term::Rec(_) => true,
        }
    }

    /// The largest `m` such that the term lies in `A^m`.
    pub fn classify(&self) -> AlgebraClass {
        match self {
            Term::Base(_) | Term::Proj { .. } => AlgebraClass::Unbounded,
            Term::Comp { outer, inner } => inner
                .iter()
                .map(Term::classify)
                .fold(outer.classify(), AlgebraClass::meet),
            Term::Rec(r) => AlgebraClass::Level(r.level)
                .meet(r.base.classify())
                .meet(r.step.classify()),
        }
    }

    /// Number of nodes; used to keep generated terms small.
    pub fn size(&self) -> usize {
        match self {
            Term::Base(_) | Term::Proj { .. } => 1,
            Term::Comp { outer, inner } => 1 + outer.size() + inner.iter().map(Term::size).sum::<usize>(),
            Term::Rec(r) => 1 + r.base.size() + r.step.size() + r.count.size() + r.bound.size(),
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Term::Base(a), Term::Base(b)) => a.name() == b.name(),
            (Term::Proj { index: i, arity: a }, Term::Proj { index: j, arity: b }) => i == j && a == b,
            (Term::Comp { outer: f, inner: gs }, Term::Comp { outer: g, inner: hs }) => f == g && gs == hs,
            (Term::Rec(a), Term::Rec(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Base(sym) => f.write_str(sym.name()),
            Term::Proj { index, arity } => write!(f, "(proj {index} {arity})"),
            Term::Comp { outer, inner } => {
                write!(f, "(comp {outer}")?;
                for g in inner {
                    write!(f, " {g}")?;
                }
                f.write_str(")")
            }
            Term::Rec(r) => write!(f, "(rec {} {} {} {} {})", r.level, r.base, r.step, r.count, r.bound),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Membership class of a term: `Level(m)` means the term lies in `A^m` (and in every `A^j`,
/// `j ≤ m`); recursion-free terms lie in every algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraClass {
    Level(u32),
    Unbounded,
}

impl AlgebraClass {
    pub fn meet(self, other: AlgebraClass) -> AlgebraClass {
        match (self, other) {
            (AlgebraClass::Unbounded, c) | (c, AlgebraClass::Unbounded) => c,
            (AlgebraClass::Level(a), AlgebraClass::Level(b)) => AlgebraClass::Level(a.min(b)),
        }
    }

    /// Whether a term of this class lies in `A^m`.
    pub fn within(self, m: u32) -> bool {
        match self {
            AlgebraClass::Unbounded => true,
            AlgebraClass::Level(level) => level >= m,
        }
    }
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraClass::Level(m) => write!(f, "A^{m}"),
            AlgebraClass::Unbounded => f.write_str("L2-"),
        }
    }
}
