//! Test support: a seeded generator of well-typed programs and a
//! brute-force oracle for the logical relation.
//!
//! The oracle deliberately shares no machinery with [`crate::logrel`]
//! beyond the evaluator (which supplies the dynamics both definitions
//! quantify over). It enumerates partial bijections by naive recursion
//! rather than by size-ordered combination walking, and it probes
//! name-typed arguments with two fresh span extensions instead of one,
//! so a too-small probe set in the main decider would show up as a
//! disagreement on random corpora.
//!
//! Nothing in here is part of the library's public contract; it exists
//! so integration and property tests can cross-check the deciders.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eval::evaluate;
use crate::syntax::{Ident, Name, NameSet, Term, Type};
use crate::Span;

/// A seeded generator of closed, well-typed terms (closed up to the
/// ambient atoms it is given). Same seed, same terms.
pub struct TermGen {
    rng: ChaCha8Rng,
    publics: Vec<Name>,
    counter: u64,
}

impl TermGen {
    pub fn new(seed: u64, publics: &NameSet) -> TermGen {
        TermGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            publics: publics.iter().collect(),
            counter: 0,
        }
    }

    /// A term of type `ty` with recursion depth at most `depth`.
    pub fn term(&mut self, ty: &Type, depth: usize) -> Term {
        let mut scope = Vec::new();
        self.go(ty, depth, &mut scope)
    }

    fn fresh_ident(&mut self, base: &str) -> Ident {
        self.counter += 1;
        format!("{base}{}", self.counter)
    }

    fn vars_of(&self, ty: &Type, scope: &[(Ident, Type)]) -> Vec<Ident> {
        scope
            .iter()
            .filter(|(_, t)| t == ty)
            .map(|(x, _)| x.clone())
            .collect()
    }

    fn pick<T: Clone>(&mut self, xs: &[T]) -> T {
        xs[self.rng.random_range(0..xs.len())].clone()
    }

    fn go(&mut self, ty: &Type, depth: usize, scope: &mut Vec<(Ident, Type)>) -> Term {
        if depth == 0 {
            return self.leaf(ty, scope);
        }
        match ty {
            Type::Bool => match self.rng.random_range(0..10u32) {
                0 => Term::True,
                1 => Term::False,
                2..=4 => {
                    let l = self.go(&Type::Name, depth - 1, scope);
                    let r = self.go(&Type::Name, depth - 1, scope);
                    Term::eq(l, r)
                }
                5..=6 => self.ite(ty, depth, scope),
                7 => self.nu(ty, depth, scope),
                _ => self.app(ty, depth, scope),
            },
            Type::Name => match self.rng.random_range(0..8u32) {
                0..=2 => self.leaf(ty, scope),
                3..=4 => self.ite(ty, depth, scope),
                5 => self.nu(ty, depth, scope),
                _ => self.app(ty, depth, scope),
            },
            Type::Arrow(a, b) => match self.rng.random_range(0..6u32) {
                0..=2 => self.lam(a, b, depth, scope),
                3 => self.ite(ty, depth, scope),
                4 => self.nu(ty, depth, scope),
                _ => self.lam(a, b, depth, scope),
            },
        }
    }

    fn leaf(&mut self, ty: &Type, scope: &mut Vec<(Ident, Type)>) -> Term {
        match ty {
            Type::Bool => {
                let mut opts: Vec<Term> = vec![Term::True, Term::False];
                opts.extend(self.vars_of(ty, scope).into_iter().map(Term::var));
                self.pick(&opts)
            }
            Type::Name => {
                let mut opts: Vec<Term> =
                    self.publics.iter().map(|n| Term::NameLit(*n)).collect();
                opts.extend(self.vars_of(ty, scope).into_iter().map(Term::var));
                if opts.is_empty() {
                    let q = self.fresh_ident("q");
                    return Term::nu(&q, Term::var(&q));
                }
                self.pick(&opts)
            }
            Type::Arrow(a, b) => self.lam(a, b, 0, scope),
        }
    }

    fn lam(&mut self, a: &Type, b: &Type, depth: usize, scope: &mut Vec<(Ident, Type)>) -> Term {
        let x = self.fresh_ident("x");
        scope.push((x.clone(), a.clone()));
        let body = self.go(b, depth.saturating_sub(1), scope);
        scope.pop();
        Term::lam(&x, a.clone(), body)
    }

    fn ite(&mut self, ty: &Type, depth: usize, scope: &mut Vec<(Ident, Type)>) -> Term {
        let c = self.go(&Type::Bool, depth - 1, scope);
        let t = self.go(ty, depth - 1, scope);
        let e = self.go(ty, depth - 1, scope);
        Term::ite(c, t, e)
    }

    fn nu(&mut self, ty: &Type, depth: usize, scope: &mut Vec<(Ident, Type)>) -> Term {
        let n = self.fresh_ident("n");
        scope.push((n.clone(), Type::Name));
        let body = self.go(ty, depth - 1, scope);
        scope.pop();
        Term::nu(&n, body)
    }

    fn app(&mut self, ty: &Type, depth: usize, scope: &mut Vec<(Ident, Type)>) -> Term {
        // keep domains ground so every generated type stays first order
        let dom = if self.rng.random_range(0..2u32) == 0 {
            Type::Bool
        } else {
            Type::Name
        };
        let fun = self.go(&Type::arrow(dom.clone(), ty.clone()), depth - 1, scope);
        let arg = self.go(&dom, depth - 1, scope);
        Term::app(fun, arg)
    }
}

/// The first-order types random corpora draw from.
pub fn corpus_types() -> Vec<Type> {
    let b = Type::Bool;
    let n = Type::Name;
    vec![
        b.clone(),
        n.clone(),
        Type::arrow(n.clone(), b.clone()),
        Type::arrow(b.clone(), n.clone()),
        Type::arrow(n.clone(), n.clone()),
        Type::arrow(b.clone(), b.clone()),
        Type::arrow(n.clone(), Type::arrow(n.clone(), b.clone())),
    ]
}

/// Brute-force logical relation at first-order type. Panics on stuck or
/// diverging evaluation, which closed well-typed corpus terms never hit.
pub fn oracle_related(l: &Term, r: &Term, span: &Span, ty: &Type) -> bool {
    oracle_expr(l, r, span, ty)
}

fn oracle_expr(l: &Term, r: &Term, span: &Span, ty: &Type) -> bool {
    let lo = evaluate(l, crate::eval::DEFAULT_FUEL).expect("oracle: left side failed to evaluate");
    let ro = evaluate(r, crate::eval::DEFAULT_FUEL).expect("oracle: right side failed to evaluate");
    let lg: Vec<Name> = lo.generated.iter().collect();
    let rg: Vec<Name> = ro.generated.iter().collect();
    all_bijections(&lg, &rg).into_iter().any(|pairs| {
        let mut s = span.clone();
        for (a, b) in pairs {
            match s.insert(a, b) {
                Ok(()) => {}
                Err(_) => return false,
            }
        }
        oracle_value(&lo.value, &ro.value, &s, ty)
    })
}

fn oracle_value(l: &Term, r: &Term, span: &Span, ty: &Type) -> bool {
    match ty {
        Type::Bool => l == r && matches!(l, Term::True | Term::False),
        Type::Name => match (l, r) {
            (Term::NameLit(a), Term::NameLit(b)) => span.contains_pair(*a, *b),
            _ => false,
        },
        Type::Arrow(a, b) => match a.as_ref() {
            Type::Bool => [Term::True, Term::False].iter().all(|arg| {
                oracle_expr(
                    &Term::app(l.clone(), arg.clone()),
                    &Term::app(r.clone(), arg.clone()),
                    span,
                    b,
                )
            }),
            Type::Name => {
                let mut probes: Vec<(Name, Name, Span)> = span
                    .iter()
                    .map(|(x, y)| (x, y, span.clone()))
                    .collect();
                // two fresh diagonal extensions, one atom deeper than the
                // decider under test uses
                let mut ext = span.clone();
                for _ in 0..2 {
                    let c = Name::fresh("c");
                    ext.insert(c, c).expect("fresh atom collided with span");
                    probes.push((c, c, ext.clone()));
                }
                probes.into_iter().all(|(x, y, s)| {
                    oracle_expr(
                        &Term::app(l.clone(), Term::NameLit(x)),
                        &Term::app(r.clone(), Term::NameLit(y)),
                        &s,
                        b,
                    )
                })
            }
            Type::Arrow(..) => unreachable!("oracle only handles first-order types"),
        },
    }
}

/// Every partial bijection between the two name lists, by naive
/// recursion on the left list: the head either stays unpaired or pairs
/// with each remaining right name.
fn all_bijections(left: &[Name], right: &[Name]) -> Vec<Vec<(Name, Name)>> {
    match left.split_first() {
        None => vec![Vec::new()],
        Some((&h, rest)) => {
            let mut out = all_bijections(rest, right);
            for (k, &r) in right.iter().enumerate() {
                let mut remaining = right.to_vec();
                remaining.remove(k);
                for mut s in all_bijections(rest, &remaining) {
                    s.push((h, r));
                    out.push(s);
                }
            }
            out
        }
    }
}
