//! Alpha-equivalence of terms, modulo a partial bijection on name atoms.

use crate::span::Span;

use super::ast::Term;

/// True when `a` and `b` are equal up to renaming of bound variables,
/// with free name atoms identified through `bijection`: an atom `n` on the
/// left matches exactly the atom paired with it. Atoms outside the
/// bijection match nothing, so callers must pair up every free atom they
/// intend to identify (the identity span works for plain alpha-equality).
/// Free variables must agree literally, and lambda annotations must match.
pub fn alpha_eq(a: &Term, b: &Term, bijection: &Span) -> bool {
    fn walk(a: &Term, b: &Term, scope: &mut Vec<(String, String)>, bij: &Span) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => {
                // innermost binding wins on either side
                let lx = scope.iter().rev().position(|(l, _)| l == x);
                let ly = scope.iter().rev().position(|(_, r)| r == y);
                match (lx, ly) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (Term::NameLit(m), Term::NameLit(n)) => bij.contains_pair(*m, *n),
            (Term::True, Term::True) | (Term::False, Term::False) => true,
            (Term::Eq(l1, r1), Term::Eq(l2, r2)) => {
                walk(l1, l2, scope, bij) && walk(r1, r2, scope, bij)
            }
            (Term::App(f1, a1), Term::App(f2, a2)) => {
                walk(f1, f2, scope, bij) && walk(a1, a2, scope, bij)
            }
            (Term::If(c1, t1, e1), Term::If(c2, t2, e2)) => {
                walk(c1, c2, scope, bij) && walk(t1, t2, scope, bij) && walk(e1, e2, scope, bij)
            }
            (Term::Lam(x, tx, bx), Term::Lam(y, ty, by)) => {
                if tx != ty {
                    return false;
                }
                scope.push((x.clone(), y.clone()));
                let ok = walk(bx, by, scope, bij);
                scope.pop();
                ok
            }
            (Term::Nu(x, bx), Term::Nu(y, by)) => {
                scope.push((x.clone(), y.clone()));
                let ok = walk(bx, by, scope, bij);
                scope.pop();
                ok
            }
            _ => false,
        }
    }
    walk(a, b, &mut Vec::new(), bijection)
}

/// Alpha-equality with every shared free atom mapped to itself.
pub fn alpha_eq_id(a: &Term, b: &Term) -> bool {
    let atoms = a
        .free_names()
        .iter()
        .chain(b.free_names().iter())
        .collect();
    alpha_eq(a, b, &Span::identity(&atoms))
}

#[cfg(test)]
mod tests {
    use super::super::ast::Type;
    use super::super::name::{Name, NameSet};
    use super::super::parse::parse_term;
    use super::*;

    #[test]
    fn bound_variable_names_do_not_matter() {
        let a = parse_term("\\x:N. nu n. x == n").unwrap();
        let b = parse_term("\\y:N. nu m. y == m").unwrap();
        assert!(alpha_eq_id(&a, &b));
    }

    #[test]
    fn free_variables_must_agree_literally() {
        let a = parse_term("x").unwrap();
        let b = parse_term("y").unwrap();
        assert!(!alpha_eq_id(&a, &b));
    }

    #[test]
    fn annotations_matter() {
        let a = parse_term("\\x:B. x").unwrap();
        let b = parse_term("\\x:N. x").unwrap();
        assert!(!alpha_eq_id(&a, &b));
    }

    #[test]
    fn binding_structure_matters() {
        let a = parse_term("\\x:N. \\y:N. x").unwrap();
        let b = parse_term("\\x:N. \\y:N. y").unwrap();
        assert!(!alpha_eq_id(&a, &b));
    }

    #[test]
    fn atoms_match_through_the_bijection_only() {
        let m = Name::fresh("m");
        let n = Name::fresh("n");
        let a = Term::lam("x", Type::Name, Term::eq(Term::var("x"), Term::name(m)));
        let b = Term::lam("x", Type::Name, Term::eq(Term::var("x"), Term::name(n)));
        assert!(!alpha_eq_id(&a, &b));
        let bij = Span::from_pairs([(m, n)]).unwrap();
        assert!(alpha_eq(&a, &b, &bij));
        // an unlisted atom matches nothing, not even itself
        assert!(!alpha_eq(&a, &a, &bij));
        assert!(alpha_eq(&a, &a, &Span::identity(&NameSet::singleton(m))));
    }

    #[test]
    fn shadowing_resolves_to_the_innermost_binder() {
        let a = parse_term("\\x:N. \\y:N. y").unwrap();
        let b = Term::lam(
            "x",
            Type::Name,
            Term::lam("x", Type::Name, Term::var("x")),
        );
        assert!(alpha_eq_id(&a, &b));
    }
}
