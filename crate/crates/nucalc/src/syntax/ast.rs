//! Abstract syntax: types and terms.

use std::fmt;

use super::name::{Name, NameSet};

/// Variable and binder identifiers.
pub type Ident = String;

/// The identifier reserved for the hole in program contexts. It cannot be
/// written as a variable in source (idents must start with a letter), so
/// it never collides with user code.
pub const HOLE: &str = "@";

/// Simple types: booleans, names, and functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Bool,
    Name,
    Arrow(Box<Type>, Box<Type>),
}

impl Type {
    pub fn arrow(domain: Type, codomain: Type) -> Type {
        Type::Arrow(Box::new(domain), Box::new(codomain))
    }

    /// Ground types are `B` and `N`.
    pub fn is_ground(&self) -> bool {
        matches!(self, Type::Bool | Type::Name)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Bool => write!(f, "B"),
            Type::Name => write!(f, "N"),
            Type::Arrow(d, c) => {
                // arrow is right-associative, so only the domain needs parens
                if matches!(**d, Type::Arrow(..)) {
                    write!(f, "({d}) -> {c}")
                } else {
                    write!(f, "{d} -> {c}")
                }
            }
        }
    }
}

/// Terms of the calculus. Binders carry the surface identifier; parsing
/// renames binders apart, so within one parsed term no two binders share
/// an identifier and no binder shadows a free variable.
///
/// `NameLit` never appears in source programs. Name atoms enter a term
/// when the driver binds declared public names, when evaluation allocates
/// fresh ones, and when the normalizer probes functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Ident),
    NameLit(Name),
    True,
    False,
    Eq(Box<Term>, Box<Term>),
    If(Box<Term>, Box<Term>, Box<Term>),
    Lam(Ident, Type, Box<Term>),
    App(Box<Term>, Box<Term>),
    Nu(Ident, Box<Term>),
}

impl Term {
    pub fn var(x: impl Into<Ident>) -> Term {
        Term::Var(x.into())
    }

    pub fn name(n: Name) -> Term {
        Term::NameLit(n)
    }

    pub fn eq(l: Term, r: Term) -> Term {
        Term::Eq(Box::new(l), Box::new(r))
    }

    pub fn ite(c: Term, t: Term, e: Term) -> Term {
        Term::If(Box::new(c), Box::new(t), Box::new(e))
    }

    pub fn lam(x: impl Into<Ident>, ty: Type, body: Term) -> Term {
        Term::Lam(x.into(), ty, Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn nu(x: impl Into<Ident>, body: Term) -> Term {
        Term::Nu(x.into(), Box::new(body))
    }

    /// Values are canonical forms: booleans, name atoms, and abstractions.
    pub fn is_value(&self) -> bool {
        matches!(
            self,
            Term::True | Term::False | Term::NameLit(_) | Term::Lam(..)
        )
    }

    /// Free name atoms, in first-occurrence order (leftmost-outermost).
    pub fn free_names(&self) -> NameSet {
        fn walk(t: &Term, out: &mut NameSet) {
            match t {
                Term::NameLit(n) => {
                    let _ = out.insert(*n);
                }
                Term::Var(_) | Term::True | Term::False => {}
                Term::Eq(l, r) | Term::App(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                Term::If(c, t1, t2) => {
                    walk(c, out);
                    walk(t1, out);
                    walk(t2, out);
                }
                Term::Lam(_, _, b) | Term::Nu(_, b) => walk(b, out),
            }
        }
        let mut out = NameSet::new();
        walk(self, &mut out);
        out
    }

    /// Free variable identifiers, in first-occurrence order.
    pub fn free_vars(&self) -> Vec<Ident> {
        fn walk(t: &Term, bound: &mut Vec<Ident>, out: &mut Vec<Ident>) {
            match t {
                Term::Var(x) => {
                    if !bound.contains(x) && !out.contains(x) {
                        out.push(x.clone());
                    }
                }
                Term::NameLit(_) | Term::True | Term::False => {}
                Term::Eq(l, r) | Term::App(l, r) => {
                    walk(l, bound, out);
                    walk(r, bound, out);
                }
                Term::If(c, t1, t2) => {
                    walk(c, bound, out);
                    walk(t1, bound, out);
                    walk(t2, bound, out);
                }
                Term::Lam(x, _, b) | Term::Nu(x, b) => {
                    bound.push(x.clone());
                    walk(b, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every identifier mentioned anywhere in the term, free or binding.
    pub fn ident_universe(&self) -> Vec<Ident> {
        fn walk(t: &Term, out: &mut Vec<Ident>) {
            let mut push = |x: &Ident| {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            };
            match t {
                Term::Var(x) => push(x),
                Term::NameLit(_) | Term::True | Term::False => {}
                Term::Eq(l, r) | Term::App(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                Term::If(c, t1, t2) => {
                    walk(c, out);
                    walk(t1, out);
                    walk(t2, out);
                }
                Term::Lam(x, _, b) | Term::Nu(x, b) => {
                    push(x);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_display_uses_minimal_parens() {
        let nb = Type::arrow(Type::Name, Type::Bool);
        assert_eq!(nb.to_string(), "N -> B");
        let nested = Type::arrow(nb.clone(), Type::Bool);
        assert_eq!(nested.to_string(), "(N -> B) -> B");
        let right = Type::arrow(Type::Bool, Type::arrow(Type::Name, Type::Name));
        assert_eq!(right.to_string(), "B -> N -> N");
    }

    #[test]
    fn free_names_in_first_occurrence_order() {
        let a = Name::fresh("a");
        let b = Name::fresh("b");
        let t = Term::eq(
            Term::name(b),
            Term::app(Term::lam("x", Type::Name, Term::var("x")), Term::name(a)),
        );
        assert_eq!(t.free_names().as_slice(), &[b, a]);
    }

    #[test]
    fn free_vars_skip_bound_occurrences() {
        let t = Term::lam(
            "x",
            Type::Name,
            Term::eq(Term::var("x"), Term::var("y")),
        );
        assert_eq!(t.free_vars(), vec!["y".to_string()]);
    }
}
