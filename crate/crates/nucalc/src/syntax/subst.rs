//! Substitution, name binding, and context plugging.

use super::ast::{Ident, Term, HOLE};
use super::name::Name;

/// Capture-free substitution of `v` for the free variable `x` in `t`.
///
/// Evaluation and normalization only ever substitute closed values (and
/// name atoms), so no binder in `t` can capture a variable of `v`; the
/// shadow check below still stops at an inner binder reusing `x`, which
/// keeps the function correct on arbitrary input terms.
pub fn substitute(t: &Term, x: &str, v: &Term) -> Term {
    match t {
        Term::Var(y) => {
            if y == x {
                v.clone()
            } else {
                t.clone()
            }
        }
        Term::NameLit(_) | Term::True | Term::False => t.clone(),
        Term::Eq(l, r) => Term::eq(substitute(l, x, v), substitute(r, x, v)),
        Term::App(f, a) => Term::app(substitute(f, x, v), substitute(a, x, v)),
        Term::If(c, t1, t2) => Term::ite(
            substitute(c, x, v),
            substitute(t1, x, v),
            substitute(t2, x, v),
        ),
        Term::Lam(y, ty, b) => {
            if y == x {
                t.clone()
            } else {
                Term::Lam(y.clone(), ty.clone(), Box::new(substitute(b, x, v)))
            }
        }
        Term::Nu(y, b) => {
            if y == x {
                t.clone()
            } else {
                Term::Nu(y.clone(), Box::new(substitute(b, x, v)))
            }
        }
    }
}

/// Replaces every occurrence of the atom `n` with `v`. Atoms are not
/// identifiers, so no binder can shadow them; the caller is responsible
/// for `v`'s variables when substituting under binders (the normalizer
/// picks binder names that cannot collide).
pub fn substitute_name(t: &Term, n: Name, v: &Term) -> Term {
    match t {
        Term::NameLit(m) => {
            if *m == n {
                v.clone()
            } else {
                t.clone()
            }
        }
        Term::Var(_) | Term::True | Term::False => t.clone(),
        Term::Eq(l, r) => Term::eq(substitute_name(l, n, v), substitute_name(r, n, v)),
        Term::App(f, a) => Term::app(substitute_name(f, n, v), substitute_name(a, n, v)),
        Term::If(c, t1, t2) => Term::ite(
            substitute_name(c, n, v),
            substitute_name(t1, n, v),
            substitute_name(t2, n, v),
        ),
        Term::Lam(y, ty, b) => Term::Lam(y.clone(), ty.clone(), Box::new(substitute_name(b, n, v))),
        Term::Nu(y, b) => Term::Nu(y.clone(), Box::new(substitute_name(b, n, v))),
    }
}

/// Replaces each listed free variable with a name atom. The driver uses
/// this to realize `--public` declarations.
pub fn bind_names(t: &Term, bindings: &[(Ident, Name)]) -> Term {
    let mut out = t.clone();
    for (x, n) in bindings {
        out = substitute(&out, x, &Term::NameLit(*n));
    }
    out
}

/// Fills every hole of a context with `m`, verbatim. Binders of the
/// context capture free variables of `m`; that capture is the point of a
/// context.
pub fn plug(ctx: &Term, m: &Term) -> Term {
    substitute(ctx, HOLE, m)
}

/// Number of hole occurrences in a context.
pub fn count_holes(ctx: &Term) -> usize {
    match ctx {
        Term::Var(x) => usize::from(x == HOLE),
        Term::NameLit(_) | Term::True | Term::False => 0,
        Term::Eq(l, r) | Term::App(l, r) => count_holes(l) + count_holes(r),
        Term::If(c, t1, t2) => count_holes(c) + count_holes(t1) + count_holes(t2),
        Term::Lam(_, _, b) | Term::Nu(_, b) => count_holes(b),
    }
}
