//! A logical relation deciding contextual equivalence at first-order
//! types.
//!
//! Two expressions are related over a span (a partial bijection between
//! the name sets each side may mention) when they evaluate to values that
//! are related after pairing up some of the freshly generated names:
//!
//! * booleans are related when equal;
//! * name atoms are related when the span pairs them;
//! * functions are related when every pair of related arguments, over any
//!   extension of the span by fresh pairs, yields related bodies.
//!
//! At first-order types the function clause reduces to finitely many
//! probes. A ground argument is either a boolean constant or a name, and
//! a name argument related across the two sides is either one of the
//! span's pairs (no extension needed) or a pair of names fresh on both
//! sides. All both-fresh pairs are interchangeable: a permutation of
//! atoms fixing the span carries any one of them to any other and the
//! relation is invariant under such permutations, so a single fresh atom,
//! paired with itself, stands in for every fresh pair. A span extension
//! can never relate a fresh name to an already-known one (injectivity),
//! so these probes are exhaustive:
//!
//! * at `B`: arguments `true` and `false`;
//! * at `N`: each pair already in the span, plus one globally fresh atom
//!   substituted on both sides and adjoined to the span.
//!
//! Deeper arrows repeat the expansion, one fresh atom per `N` layer. The
//! brute-force oracle in [`crate::testing`] cross-checks this reduction
//! on randomized corpora.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::combinatorics::partial_bijections;
use crate::eval::{evaluate, EvalError};
use crate::span::Span;
use crate::syntax::{pretty, substitute, Name, NameSet, Term, Type};
use crate::typecheck::first_order;
use crate::Budget;

/// Default bound on the private name set a leak search will enumerate;
/// the search is exponential in this count.
pub const DEFAULT_MAX_PRIV: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelError {
    #[error("type {ty} is not first-order; the relation is only decided at first-order types")]
    NotFirstOrder { ty: Type },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("ill-formed query: {0}")]
    IllFormed(String),
}

/// A relatedness question: are `left` and `right`, of type `ty`, related
/// over `span`? Callers must ensure both sides are closed, well-typed at
/// `ty`, and mention only names on their side of the span.
#[derive(Clone, Debug)]
pub struct RelQuery {
    pub span: Span,
    pub ty: Type,
    pub left: Term,
    pub right: Term,
}

/// One probe step applied on the way to a counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Probe {
    Bool(bool),
    NamePair { left: Name, right: Name, fresh: bool },
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probe::Bool(b) => write!(f, "{b}"),
            Probe::NamePair { left, right, fresh } => {
                if *fresh {
                    write!(f, "a fresh name {left}")
                } else if left == right && left.label() == right.label() {
                    write!(f, "{left}")
                } else {
                    write!(f, "{left} ~ {right}")
                }
            }
        }
    }
}

/// A failed probe sequence: applying the two sides to these arguments, in
/// order, produced the unrelated outcome described by `detail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub probes: Vec<Probe>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.probes.is_empty() {
            write!(f, "applied to ")?;
            for (i, p) in self.probes.iter().enumerate() {
                if i > 0 {
                    write!(f, ", then ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ": ")?;
        }
        write!(f, "{}", self.detail)
    }
}

/// Outcome of a detailed relatedness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelOutcome {
    Related,
    NotRelated(Counterexample),
}

/// Decides the logical relation. Errors with `NotFirstOrder` when the
/// query type has a functional argument anywhere.
pub fn related(query: &RelQuery, budget: &Budget) -> Result<bool, RelError> {
    Ok(matches!(related_detailed(query, budget)?, RelOutcome::Related))
}

/// Like [`related`], but a negative answer carries the failing probe
/// sequence.
pub fn related_detailed(query: &RelQuery, budget: &Budget) -> Result<RelOutcome, RelError> {
    if !first_order(&query.ty) {
        return Err(RelError::NotFirstOrder {
            ty: query.ty.clone(),
        });
    }
    let mut decider = Decider {
        budget: *budget,
        memo: HashMap::new(),
    };
    Ok(
        match decider.rel_expr(&query.span, &query.ty, &query.left, &query.right)? {
            Ok(()) => RelOutcome::Related,
            Err(cex) => RelOutcome::NotRelated(cex),
        },
    )
}

/// Is `t` related to itself over the identity span on `public`? This is
/// the safety predicate of the normalization procedure: it fails exactly
/// when `t` uses a name outside `public` in an observable way.
pub fn self_related(public: &NameSet, t: &Term, ty: &Type, budget: &Budget) -> Result<bool, RelError> {
    related(
        &RelQuery {
            span: Span::identity(public),
            ty: ty.clone(),
            left: t.clone(),
            right: t.clone(),
        },
        budget,
    )
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LeakError {
    #[error(
        "leak search over {privates} private names needs {subsets} relatedness checks; \
         the bound is {bound} names (raise max_priv to force it)"
    )]
    ExponentialBlowup {
        privates: usize,
        subsets: u128,
        bound: usize,
    },
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error("no subset of the private names makes the value self-related; the input was not safe")]
    NoSafeSubset,
}

/// The least subset `u` of `private` whose disclosure makes `value`
/// self-related over `public + u`. The subsets are searched in ascending
/// cardinality (ties broken by the order of `private`), so the first hit
/// is minimal; the self-relation is closed under intersections of
/// revealed sets, which makes that minimal subset the least one.
///
/// Precondition: `value` is a value, self-related over `public + private`
/// (so the full subset always succeeds).
pub fn leak(
    value: &Term,
    public: &NameSet,
    private: &NameSet,
    ty: &Type,
    budget: &Budget,
) -> Result<NameSet, LeakError> {
    if private.len() > budget.max_priv {
        return Err(LeakError::ExponentialBlowup {
            privates: private.len(),
            subsets: 1u128 << private.len().min(127),
            bound: budget.max_priv,
        });
    }
    for u in private.subsets_by_size() {
        let revealed = public
            .oplus(&u)
            .map_err(|e| RelError::IllFormed(format!("public and private sets overlap: {e}")))?;
        if self_related(&revealed, value, ty, budget)? {
            return Ok(u);
        }
    }
    Err(LeakError::NoSafeSubset)
}

type MemoKey = (Term, Term, Vec<(Name, Name)>, Type);

struct Decider {
    budget: Budget,
    memo: HashMap<MemoKey, Result<(), Counterexample>>,
}

impl Decider {
    fn rel_expr(
        &mut self,
        span: &Span,
        ty: &Type,
        left: &Term,
        right: &Term,
    ) -> Result<Result<(), Counterexample>, RelError> {
        let key: MemoKey = (left.clone(), right.clone(), span.sorted_pairs(), ty.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let out = self.rel_expr_uncached(span, ty, left, right)?;
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn rel_expr_uncached(
        &mut self,
        span: &Span,
        ty: &Type,
        left: &Term,
        right: &Term,
    ) -> Result<Result<(), Counterexample>, RelError> {
        let r1 = evaluate(left, self.budget.fuel)?;
        let r2 = evaluate(right, self.budget.fuel)?;
        let g1: Vec<Name> = r1.generated.iter().collect();
        let g2: Vec<Name> = r2.generated.iter().collect();
        let mut first_failure: Option<Counterexample> = None;
        let mut tried = 0usize;
        for ext in partial_bijections(&g1, &g2) {
            tried += 1;
            let extended = span
                .oplus(&ext)
                .expect("freshly generated atoms cannot collide with the span");
            match self.rel_value(&extended, ty, &r1.value, &r2.value)? {
                Ok(()) => return Ok(Ok(())),
                Err(cex) => {
                    if first_failure.is_none() {
                        first_failure = Some(cex);
                    }
                }
            }
        }
        let mut cex = first_failure.expect("at least the empty extension is always tried");
        if tried > 1 {
            cex.detail = format!(
                "{} (no pairing of the generated names helps; {} tried)",
                cex.detail, tried
            );
        }
        Ok(Err(cex))
    }

    fn rel_value(
        &mut self,
        span: &Span,
        ty: &Type,
        left: &Term,
        right: &Term,
    ) -> Result<Result<(), Counterexample>, RelError> {
        match ty {
            Type::Bool => match (left, right) {
                (Term::True, Term::True) | (Term::False, Term::False) => Ok(Ok(())),
                (Term::True | Term::False, Term::True | Term::False) => Ok(Err(Counterexample {
                    probes: Vec::new(),
                    detail: format!(
                        "left yields {} but right yields {}",
                        pretty(left),
                        pretty(right)
                    ),
                })),
                _ => Err(RelError::IllFormed(format!(
                    "non-boolean values at type B: {} vs {}",
                    pretty(left),
                    pretty(right)
                ))),
            },
            Type::Name => match (left, right) {
                (Term::NameLit(m), Term::NameLit(n)) => {
                    if span.contains_pair(*m, *n) {
                        Ok(Ok(()))
                    } else {
                        Ok(Err(Counterexample {
                            probes: Vec::new(),
                            detail: format!(
                                "left yields name {m:?} and right yields {n:?}, \
                                 which the span does not pair"
                            ),
                        }))
                    }
                }
                _ => Err(RelError::IllFormed(format!(
                    "non-name values at type N: {} vs {}",
                    pretty(left),
                    pretty(right)
                ))),
            },
            Type::Arrow(dom, cod) => {
                let (x1, b1, x2, b2) = match (left, right) {
                    (Term::Lam(x1, _, b1), Term::Lam(x2, _, b2)) => (x1, b1, x2, b2),
                    _ => {
                        return Err(RelError::IllFormed(format!(
                            "non-function values at type {ty}: {} vs {}",
                            pretty(left),
                            pretty(right)
                        )))
                    }
                };
                match **dom {
                    Type::Bool => {
                        for arg in [Term::True, Term::False] {
                            let l = substitute(b1, x1, &arg);
                            let r = substitute(b2, x2, &arg);
                            if let Err(mut cex) = self.rel_expr(span, cod, &l, &r)? {
                                cex.probes.insert(0, Probe::Bool(arg == Term::True));
                                return Ok(Err(cex));
                            }
                        }
                        Ok(Ok(()))
                    }
                    Type::Name => {
                        for (m, n) in span.iter() {
                            let l = substitute(b1, x1, &Term::NameLit(m));
                            let r = substitute(b2, x2, &Term::NameLit(n));
                            if let Err(mut cex) = self.rel_expr(span, cod, &l, &r)? {
                                cex.probes.insert(
                                    0,
                                    Probe::NamePair {
                                        left: m,
                                        right: n,
                                        fresh: false,
                                    },
                                );
                                return Ok(Err(cex));
                            }
                        }
                        let fresh = Name::fresh(&format!("{x1}'"));
                        let extended = span
                            .oplus(&Span::from_pairs([(fresh, fresh)]).unwrap())
                            .expect("a fresh atom cannot collide with the span");
                        let l = substitute(b1, x1, &Term::NameLit(fresh));
                        let r = substitute(b2, x2, &Term::NameLit(fresh));
                        if let Err(mut cex) = self.rel_expr(&extended, cod, &l, &r)? {
                            cex.probes.insert(
                                0,
                                Probe::NamePair {
                                    left: fresh,
                                    right: fresh,
                                    fresh: true,
                                },
                            );
                            return Ok(Err(cex));
                        }
                        Ok(Ok(()))
                    }
                    Type::Arrow(..) => Err(RelError::NotFirstOrder { ty: ty.clone() }),
                }
            }
        }
    }
}
