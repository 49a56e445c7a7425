use super::ast::Term;
use super::symbols::{BoundRule, SymbolRegistry};

/// A monotone term without `monus` or `msp` that dominates `f` pointwise.
///
/// `∸` and `MSP` are bounded by their first argument; a recursion is bounded by
/// `u_g(x⃗) + u_r(|u_t(n, x⃗)|, x⃗)` from the bounds of its parts.
pub fn bound_term(f: &Term) -> Term {
    match f {
        Term::Base(sym) => match sym.bound_rule() {
            BoundRule::Monotone => f.clone(),
            BoundRule::Argument(i) => Term::Proj { index: i, arity: sym.arity() },
        },
        Term::Proj { .. } => f.clone(),
        Term::Comp { outer, inner } => {
            Term::comp(bound_term(outer), inner.iter().map(bound_term).collect()).expect("arity preserved")
        }
        Term::Rec(r) => {
            let reg = SymbolRegistry::standard();
            let add = Term::Base(reg.get("add").unwrap());
            let len = Term::Base(reg.get("len").unwrap());
            let arity = f.arity();
            let params: Vec<Term> = (1..arity).map(|i| Term::Proj { index: i, arity }).collect();
            let base = Term::comp(bound_term(&r.base), params.clone()).expect("arity preserved");
            let counter = Term::comp(len, vec![bound_term(&r.count)]).expect("unary");
            let mut bound_args = vec![counter];
            bound_args.extend(params);
            let cap = Term::comp(bound_term(&r.bound), bound_args).expect("arity preserved");
            Term::comp(add, vec![base, cap]).expect("binary")
        }
    }
}

/// Whether a base symbol named `name` occurs anywhere in `f`.
pub fn contains_symbol(f: &Term, name: &str) -> bool {
    match f {
        Term::Base(sym) => sym.name() == name,
        Term::Proj { .. } => false,
        Term::Comp { outer, inner } => contains_symbol(outer, name) || inner.iter().any(|g| contains_symbol(g, name)),
        Term::Rec(r) => [&r.base, &r.step, &r.count, &r.bound].into_iter().any(|t| contains_symbol(t, name)),
    }
}

/// `x ↦ f(x, …, x)`.
pub fn diagonal(f: &Term) -> Term {
    if f.arity() == 1 {
        return f.clone();
    }
    Term::comp(f.clone(), vec![Term::Proj { index: 0, arity: 1 }; f.arity()]).expect("unary inner terms")
}
