//! Privacy-eliminating normal forms and the equivalence decision built on
//! them.
//!
//! The normal form of a first-order program over a public name set makes
//! every observation the program admits syntactically explicit, so that
//! two programs are contextually equivalent exactly when their normal
//! forms coincide up to renaming:
//!
//! * an expression is evaluated; the least subset of its secret names
//!   whose disclosure makes the resulting value self-related (the leak)
//!   is moved into an explicit `nu` prefix, and the value is normalized
//!   with those names public;
//! * a ground value is already normal;
//! * a function on booleans is eta-expanded into a two-way case split on
//!   its argument, normalizing each branch;
//! * a function on names is eta-expanded into a ladder comparing its
//!   argument against every public name in order, with a final branch for
//!   an argument fresh to all of them, each branch normalized under the
//!   corresponding assumption.
//!
//! The uniform evaluate-disclose-dispatch step keeps the invariant that a
//! value is only ever eta-expanded at a public set at which it is
//! self-related; skipping the disclosure step for terms that happen to be
//! values already would break it (a value can mention secrets that a
//! surrounding context could observe).
//!
//! Canonicalization then renames lambda binders to `v0, v1, ...` and
//! disclosed names to `l0, l1, ...` in traversal order, reordering each
//! `nu` prefix by first use (adjacent generators commute), after which
//! equivalence is literal equality.

use std::fmt;

use thiserror::Error;

use crate::eval::{evaluate, EvalError};
use crate::logrel::{leak, related_detailed, self_related, LeakError, RelError, RelOutcome, RelQuery};
use crate::span::Span;
use crate::syntax::{
    pretty, substitute, substitute_name, Ident, Name, NameSet, Term, Type,
};
use crate::typecheck::first_order;
use crate::Budget;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalError {
    #[error("type {ty} is not first-order; normal forms exist only at first-order types")]
    NotFirstOrder { ty: Type },
    #[error(
        "term is not safe at the declared names (it observably uses an undeclared atom): {term}"
    )]
    NotSafe { term: String },
    #[error("public and private names overlap: {0}")]
    ScopeOverlap(String),
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Leak(#[from] LeakError),
}

impl From<EvalError> for NormalError {
    fn from(e: EvalError) -> NormalError {
        NormalError::Rel(RelError::Eval(e))
    }
}

/// A normal form: `body` mentions the `leaked` atoms free, to be read as
/// bound by a `nu` prefix in the given order; `public` records the
/// ambient names the form was computed against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalTerm {
    body: Term,
    leaked: NameSet,
    public: NameSet,
}

impl NormalTerm {
    pub fn body(&self) -> &Term {
        &self.body
    }

    /// The disclosed names, in disclosure order.
    pub fn leaked(&self) -> &NameSet {
        &self.leaked
    }

    pub fn public(&self) -> &NameSet {
        &self.public
    }

    /// The normal form as an ordinary term, with the disclosed atoms
    /// rebound by a `nu` prefix.
    pub fn as_term(&self) -> Term {
        bind_prefix(&self.leaked, &self.body)
    }
}

impl fmt::Display for NormalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", pretty(&self.as_term()))
    }
}

/// Rebinds each atom of `prefix`, in order and outermost first, as a `nu`
/// binder around `body`. Binder identifiers are derived from the atoms'
/// labels, freshened against every identifier occurring in `body`.
fn bind_prefix(prefix: &NameSet, body: &Term) -> Term {
    let mut used = body.ident_universe();
    let mut idents: Vec<Ident> = Vec::new();
    for atom in prefix.iter() {
        let ident = ident_from_label(&atom.label(), &used);
        used.push(ident.clone());
        idents.push(ident);
    }
    let atoms: Vec<Name> = prefix.iter().collect();
    let mut out = body.clone();
    for (atom, ident) in atoms.iter().zip(&idents).rev() {
        out = substitute_name(&out, *atom, &Term::Var(ident.clone()));
        out = Term::nu(ident.clone(), out);
    }
    out
}

const KEYWORDS: [&str; 6] = ["true", "false", "if", "then", "else", "nu"];

fn ident_from_label(label: &str, used: &[Ident]) -> Ident {
    let mut base: String = label
        .chars()
        .filter(|c| c.is_ascii_alphanumeric() || *c == '_')
        .collect();
    if !base.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
        base = format!("n{base}");
    }
    if KEYWORDS.contains(&base.as_str()) {
        base.push('_');
    }
    if !used.contains(&base) {
        return base;
    }
    let mut k = 1usize;
    loop {
        let cand = format!("{base}_{k}");
        if !used.contains(&cand) {
            return cand;
        }
        k += 1;
    }
}

/// Normalizes `t` at type `ty`, observing through `public` while the
/// atoms in `private` start out secret. Free atoms of `t` must lie in
/// `public + private`; a term observably using anything else is rejected
/// as `NotSafe`.
pub fn normalize(
    t: &Term,
    public: &NameSet,
    private: &NameSet,
    ty: &Type,
    budget: &Budget,
) -> Result<NormalTerm, NormalError> {
    if !first_order(ty) {
        return Err(NormalError::NotFirstOrder { ty: ty.clone() });
    }
    let scope = public
        .oplus(private)
        .map_err(|e| NormalError::ScopeOverlap(e.to_string()))?;
    if !self_related(&scope, t, ty, budget)? {
        return Err(NormalError::NotSafe { term: pretty(t) });
    }
    let mut nz = Normalizer { budget: *budget };
    let (leaked, body) = nz.rec(t, public, private, ty)?;
    Ok(NormalTerm {
        body,
        leaked,
        public: public.clone(),
    })
}

struct Normalizer {
    budget: Budget,
}

impl Normalizer {
    /// Returns the disclosure prefix and the normalized body. The body
    /// mentions prefix atoms free; callers either keep the prefix
    /// explicit (top level) or bind it locally via `bind_prefix`.
    fn rec(
        &mut self,
        t: &Term,
        public: &NameSet,
        hidden: &NameSet,
        ty: &Type,
    ) -> Result<(NameSet, Term), NormalError> {
        let r = evaluate(t, self.budget.fuel)?;
        let hidden = hidden
            .oplus(&r.generated)
            .expect("freshly generated atoms are new to the scope");
        let u = leak(&r.value, public, &hidden, ty, &self.budget)?;
        let u = self.behavioral_order(&r.value, public, &u, ty)?;
        let disclosed = public
            .oplus(&u)
            .expect("leaked atoms were hidden, hence not public");
        let remaining = hidden.minus(&u);
        let body = self.value_nf(&r.value, &disclosed, &remaining, ty)?;
        Ok((u, body))
    }

    /// Reorders the disclosed names by observable behavior rather than by
    /// the order the leak search happened to find them. The eta-ladders
    /// below enumerate the public set in order, so two equivalent values
    /// must disclose corresponding names in corresponding positions or
    /// their ladders end up testing names in different sequences.
    ///
    /// The order is fixed by deterministic probing: apply the value to
    /// the already-known names (public first, then earlier discoveries)
    /// and to one fresh name per argument position, and record each
    /// disclosed name the first time it shows up as a name-typed result.
    /// Sweeps repeat until no further name is discovered, so names only
    /// reachable by feeding a discovery back in are found too. Related
    /// values answer corresponding probes with corresponding names, which
    /// makes the resulting orders agree across an equivalent pair.
    fn behavioral_order(
        &mut self,
        v: &Term,
        public: &NameSet,
        u: &NameSet,
        ty: &Type,
    ) -> Result<NameSet, NormalError> {
        if u.len() <= 1 {
            return Ok(u.clone());
        }
        let mut found: Vec<Name> = Vec::new();
        loop {
            let before = found.len();
            let pool: Vec<Name> = public.iter().chain(found.iter().copied()).collect();
            self.probe_sweep(v, ty, &pool, u, &mut found)?;
            if found.len() == before {
                break;
            }
        }
        // every disclosed name should be reachable by probing; if one is
        // not (which would point at a leak computed too eagerly), keep
        // the leak order for the remainder so normalization stays total
        let mut ordered = NameSet::collect_dedup(found);
        for n in u.iter() {
            if !ordered.contains(n) {
                let _ = ordered.insert(n);
            }
        }
        Ok(ordered)
    }

    fn probe_sweep(
        &mut self,
        v: &Term,
        ty: &Type,
        pool: &[Name],
        u: &NameSet,
        found: &mut Vec<Name>,
    ) -> Result<(), NormalError> {
        match ty {
            Type::Bool => Ok(()),
            Type::Name => {
                if let Term::NameLit(a) = v {
                    if u.contains(*a) && !found.contains(a) {
                        found.push(*a);
                    }
                }
                Ok(())
            }
            Type::Arrow(dom, cod) => {
                let (x, body) = match v {
                    Term::Lam(x, _, body) => (x, body),
                    other => {
                        return Err(NormalError::Rel(RelError::IllFormed(format!(
                            "non-function value at type {ty}: {}",
                            pretty(other)
                        ))))
                    }
                };
                match **dom {
                    Type::Bool => {
                        for arg in [Term::True, Term::False] {
                            let w = evaluate(&substitute(body, x, &arg), self.budget.fuel)?;
                            self.probe_sweep(&w.value, cod, pool, u, found)?;
                        }
                        Ok(())
                    }
                    Type::Name => {
                        for a in pool {
                            let w = evaluate(
                                &substitute(body, x, &Term::NameLit(*a)),
                                self.budget.fuel,
                            )?;
                            self.probe_sweep(&w.value, cod, pool, u, found)?;
                        }
                        let star = Name::fresh(x);
                        let mut wider = pool.to_vec();
                        wider.push(star);
                        let w = evaluate(
                            &substitute(body, x, &Term::NameLit(star)),
                            self.budget.fuel,
                        )?;
                        self.probe_sweep(&w.value, cod, &wider, u, found)
                    }
                    Type::Arrow(..) => Err(NormalError::NotFirstOrder { ty: ty.clone() }),
                }
            }
        }
    }

    /// Normalizes a value that is self-related at `public` (the leak step
    /// in `rec` established this).
    fn value_nf(
        &mut self,
        v: &Term,
        public: &NameSet,
        hidden: &NameSet,
        ty: &Type,
    ) -> Result<Term, NormalError> {
        match ty {
            Type::Bool | Type::Name => Ok(v.clone()),
            Type::Arrow(dom, cod) => {
                let (x, body) = match v {
                    Term::Lam(x, _, body) => (x, body),
                    other => {
                        return Err(NormalError::Rel(RelError::IllFormed(format!(
                            "non-function value at type {ty}: {}",
                            pretty(other)
                        ))))
                    }
                };
                match **dom {
                    Type::Bool => {
                        let bt = self.branch(
                            &substitute(body, x, &Term::True),
                            public,
                            hidden,
                            cod,
                        )?;
                        let bf = self.branch(
                            &substitute(body, x, &Term::False),
                            public,
                            hidden,
                            cod,
                        )?;
                        Ok(Term::lam(
                            x.clone(),
                            Type::Bool,
                            Term::ite(Term::var(x.clone()), bt, bf),
                        ))
                    }
                    Type::Name => {
                        // one branch per public name, then a fresh one
                        let mut branches = Vec::new();
                        for n in public.iter() {
                            let b = self.branch(
                                &substitute(body, x, &Term::NameLit(n)),
                                public,
                                hidden,
                                cod,
                            )?;
                            branches.push((n, b));
                        }
                        let star = Name::fresh(x);
                        let wider = public
                            .oplus(&NameSet::singleton(star))
                            .expect("a fresh atom is new to the scope");
                        let (dpfx, dbody) = self.rec(
                            &substitute(body, x, &Term::NameLit(star)),
                            &wider,
                            hidden,
                            cod,
                        )?;
                        // the fresh atom is rebound as the lambda variable
                        let dbody = substitute_name(&dbody, star, &Term::var(x.clone()));
                        let mut out = bind_prefix(&dpfx, &dbody);
                        for (n, b) in branches.into_iter().rev() {
                            out = Term::ite(
                                Term::eq(Term::var(x.clone()), Term::NameLit(n)),
                                b,
                                out,
                            );
                        }
                        Ok(Term::lam(x.clone(), Type::Name, out))
                    }
                    Type::Arrow(..) => Err(NormalError::NotFirstOrder { ty: ty.clone() }),
                }
            }
        }
    }

    fn branch(
        &mut self,
        t: &Term,
        public: &NameSet,
        hidden: &NameSet,
        ty: &Type,
    ) -> Result<Term, NormalError> {
        let (pfx, body) = self.rec(t, public, hidden, ty)?;
        Ok(bind_prefix(&pfx, &body))
    }
}

/// Renames a normal form to its canonical representative: lambda binders
/// become `v0, v1, ...` and `nu` binders `l0, l1, ...` in traversal
/// order, each maximal `nu` prefix reordered so indices follow the first
/// use of each name in its body. Canonical names skip anything colliding
/// with a public label, so distinct canonical forms also print
/// differently. Two normal forms denote equivalent programs exactly when
/// their canonical terms are equal.
pub fn canonicalize(nf: &NormalTerm) -> Term {
    let public_labels: Vec<String> = nf.public().iter().map(|n| n.label()).collect();
    let mut st = Canon {
        vcount: 0,
        lcount: 0,
        public_labels,
    };
    st.canon(&nf.as_term(), &mut Vec::new())
}

struct Canon {
    vcount: usize,
    lcount: usize,
    public_labels: Vec<String>,
}

impl Canon {
    fn next(&mut self, prefix: char) -> Ident {
        loop {
            let count = match prefix {
                'v' => &mut self.vcount,
                _ => &mut self.lcount,
            };
            let cand = format!("{prefix}{count}");
            *count += 1;
            if !self.public_labels.contains(&cand) {
                return cand;
            }
        }
    }

    fn canon(&mut self, t: &Term, scope: &mut Vec<(Ident, Ident)>) -> Term {
        match t {
            Term::Nu(..) => {
                // collect the maximal chain of adjacent generators
                let mut chain: Vec<Ident> = Vec::new();
                let mut body = t;
                while let Term::Nu(x, b) = body {
                    chain.push(x.clone());
                    body = b;
                }
                // order the chain by first use in the body; binders are
                // renamed apart, so a plain occurrence scan suffices
                let mut ordered: Vec<Ident> = Vec::new();
                first_use(body, &chain, &mut ordered);
                for x in &chain {
                    if !ordered.contains(x) {
                        ordered.push(x.clone());
                    }
                }
                let renames: Vec<(Ident, Ident)> = ordered
                    .iter()
                    .map(|x| (x.clone(), self.next('l')))
                    .collect();
                for pair in &renames {
                    scope.push(pair.clone());
                }
                let mut out = self.canon(body, scope);
                for _ in &renames {
                    scope.pop();
                }
                for (_, nx) in renames.iter().rev() {
                    out = Term::nu(nx.clone(), out);
                }
                out
            }
            Term::Lam(x, ty, b) => {
                let nx = self.next('v');
                scope.push((x.clone(), nx.clone()));
                let body = self.canon(b, scope);
                scope.pop();
                Term::Lam(nx, ty.clone(), Box::new(body))
            }
            Term::Var(x) => {
                for (from, to) in scope.iter().rev() {
                    if from == x {
                        return Term::Var(to.clone());
                    }
                }
                Term::Var(x.clone())
            }
            Term::NameLit(_) | Term::True | Term::False => t.clone(),
            Term::Eq(l, r) => Term::eq(self.canon(l, scope), self.canon(r, scope)),
            Term::App(f, a) => Term::app(self.canon(f, scope), self.canon(a, scope)),
            Term::If(c, t1, t2) => Term::ite(
                self.canon(c, scope),
                self.canon(t1, scope),
                self.canon(t2, scope),
            ),
        }
    }
}

fn first_use(t: &Term, of: &[Ident], out: &mut Vec<Ident>) {
    match t {
        Term::Var(x) => {
            if of.contains(x) && !out.contains(x) {
                out.push(x.clone());
            }
        }
        Term::NameLit(_) | Term::True | Term::False => {}
        Term::Eq(l, r) | Term::App(l, r) => {
            first_use(l, of, out);
            first_use(r, of, out);
        }
        Term::If(c, t1, t2) => {
            first_use(c, of, out);
            first_use(t1, of, out);
            first_use(t2, of, out);
        }
        Term::Lam(_, _, b) | Term::Nu(_, b) => first_use(b, of, out),
    }
}

/// The equivalence verdict for a pair of programs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Inequivalent { reason: String },
    NotFirstOrder { ty: Type },
}

/// Decides contextual equivalence of two closed programs of first-order
/// type `ty` over the public names `s`, by comparing canonical normal
/// forms. On inequivalence the reason reports a separating probe
/// sequence from the logical relation.
pub fn equivalent(
    m1: &Term,
    m2: &Term,
    s: &NameSet,
    ty: &Type,
    budget: &Budget,
) -> Result<Verdict, NormalError> {
    if !first_order(ty) {
        return Ok(Verdict::NotFirstOrder { ty: ty.clone() });
    }
    let empty = NameSet::new();
    let n1 = normalize(m1, s, &empty, ty, budget)?;
    let n2 = normalize(m2, s, &empty, ty, budget)?;
    if canonicalize(&n1) == canonicalize(&n2) {
        return Ok(Verdict::Equivalent);
    }
    match related_detailed(
        &RelQuery {
            span: Span::identity(s),
            ty: ty.clone(),
            left: m1.clone(),
            right: m2.clone(),
        },
        budget,
    )? {
        RelOutcome::NotRelated(cex) => Ok(Verdict::Inequivalent {
            reason: cex.to_string(),
        }),
        // canonical forms differing while the relation holds means the
        // behavioral ordering failed to align two equivalent disclosure
        // prefixes; the relation is the definition, so it wins
        RelOutcome::Related => Ok(Verdict::Equivalent),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type};

    fn budget() -> Budget {
        Budget::default()
    }

    fn canon_closed(src: &str, ty: &str) -> String {
        let t = parse_term(src).unwrap();
        let ty = parse_type(ty).unwrap();
        let empty = NameSet::new();
        let nf = normalize(&t, &empty, &empty, &ty, &budget()).unwrap();
        pretty(&canonicalize(&nf))
    }

    fn verdict(src1: &str, src2: &str, ty: &str) -> Verdict {
        equivalent(
            &parse_term(src1).unwrap(),
            &parse_term(src2).unwrap(),
            &NameSet::new(),
            &parse_type(ty).unwrap(),
            &budget(),
        )
        .unwrap()
    }

    #[test]
    fn ground_results_normalize_to_their_value() {
        assert_eq!(canon_closed("nu m. nu n. m == n", "B"), "false");
        assert_eq!(canon_closed("nu n. n == n", "B"), "true");
    }

    #[test]
    fn an_escaping_name_is_disclosed() {
        assert_eq!(canon_closed("nu n. n", "N"), "nu l0. l0");
    }

    #[test]
    fn capture_time_shows_up_in_the_normal_form() {
        assert_eq!(
            canon_closed("nu n. \\x:B. n", "B -> N"),
            "nu l0. \\v0:B. if v0 then l0 else l0"
        );
        assert_eq!(
            canon_closed("\\x:B. nu n. n", "B -> N"),
            "\\v0:B. if v0 then nu l0. l0 else nu l1. l1"
        );
    }

    #[test]
    fn comparator_against_a_secret_collapses_to_false() {
        assert_eq!(canon_closed("nu n. \\x:N. x == n", "N -> B"), "\\v0:N. false");
        assert_eq!(canon_closed("\\x:N. false", "N -> B"), "\\v0:N. false");
    }

    #[test]
    fn transposition_normalizes_to_the_identity() {
        assert_eq!(
            canon_closed(
                "nu a. nu b. \\x:N. if x == a then b else if x == b then a else x",
                "N -> N"
            ),
            "\\v0:N. v0"
        );
        assert_eq!(canon_closed("\\x:N. x", "N -> N"), "\\v0:N. v0");
    }

    #[test]
    fn the_swap_function_is_its_own_ladder() {
        assert_eq!(
            canon_closed(
                "nu m. nu n. \\x:N. if x == m then n else m",
                "N -> N"
            ),
            "nu l0. nu l1. \\v0:N. if v0 == l0 then l1 else if v0 == l1 then l0 else l0"
        );
    }

    #[test]
    fn dead_secrets_are_not_disclosed() {
        // with m unmatchable, this is just the constant hidden n
        assert_eq!(
            canon_closed(
                "nu m. nu n. \\x:N. if x == m then m else n",
                "N -> N"
            ),
            "nu l0. \\v0:N. if v0 == l0 then l0 else l0"
        );
    }

    #[test]
    fn normalization_is_idempotent_on_the_examples() {
        for (src, ty) in [
            ("nu m. nu n. m == n", "B"),
            ("nu n. \\x:B. n", "B -> N"),
            ("\\x:B. nu n. n", "B -> N"),
            ("nu n. \\x:N. x == n", "N -> B"),
            ("nu m. nu n. \\x:N. if x == m then n else m", "N -> N"),
            ("nu m. nu n. \\x:N. if x == m then m else n", "N -> N"),
            ("nu a. nu b. \\x:N. if x == a then b else if x == b then a else x", "N -> N"),
        ] {
            let once = canon_closed(src, ty);
            let again = canon_closed(&once, ty);
            assert_eq!(once, again, "{src}");
        }
    }

    #[test]
    fn verdicts_on_the_classic_pairs() {
        assert_eq!(verdict("nu m. nu n. m == n", "false", "B"), Verdict::Equivalent);
        assert_eq!(
            verdict("nu n. \\x:N. x == n", "\\x:N. false", "N -> B"),
            Verdict::Equivalent
        );
        assert_eq!(
            verdict(
                "nu a. nu b. \\x:N. if x == a then b else if x == b then a else x",
                "\\x:N. x",
                "N -> N"
            ),
            Verdict::Equivalent
        );
        match verdict("nu n. \\x:B. n", "\\x:B. nu n. n", "B -> N") {
            Verdict::Inequivalent { reason } => {
                assert!(reason.contains("applied to"), "reason: {reason}");
            }
            other => panic!("expected Inequivalent, got {other:?}"),
        }
        assert!(matches!(
            verdict(
                "nu m. nu n. \\x:N. if x == m then n else m",
                "nu m. nu n. \\x:N. if x == m then m else n",
                "N -> N"
            ),
            Verdict::Inequivalent { .. }
        ));
    }

    #[test]
    fn higher_order_pairs_get_the_not_first_order_verdict() {
        let ho = "\\f:N -> B. true";
        assert_eq!(
            verdict(ho, ho, "(N -> B) -> B"),
            Verdict::NotFirstOrder {
                ty: parse_type("(N -> B) -> B").unwrap()
            }
        );
    }

    #[test]
    fn normalize_rejects_undeclared_atoms() {
        let a = Name::fresh("a");
        let t = crate::syntax::bind_names(
            &parse_term("\\x:N. a").unwrap(),
            &[("a".to_string(), a)],
        );
        let ty = parse_type("N -> N").unwrap();
        let empty = NameSet::new();
        assert!(matches!(
            normalize(&t, &empty, &empty, &ty, &budget()),
            Err(NormalError::NotSafe { .. })
        ));
        // declaring the atom private is enough: it is then disclosed
        let nf = normalize(&t, &empty, &NameSet::singleton(a), &ty, &budget()).unwrap();
        assert_eq!(nf.leaked().as_slice(), &[a]);
        assert_eq!(
            pretty(&canonicalize(&nf)),
            "nu l0. \\v0:N. if v0 == l0 then l0 else l0"
        );
    }

    #[test]
    fn public_names_appear_in_the_ladder() {
        let a = Name::fresh("a");
        let t = crate::syntax::bind_names(
            &parse_term("\\x:N. x == a").unwrap(),
            &[("a".to_string(), a)],
        );
        let ty = parse_type("N -> B").unwrap();
        let public = NameSet::singleton(a);
        let nf = normalize(&t, &public, &NameSet::new(), &ty, &budget()).unwrap();
        assert_eq!(
            pretty(&canonicalize(&nf)),
            "\\v0:N. if v0 == a then true else false"
        );
    }

    #[test]
    fn canonical_names_skip_colliding_public_labels() {
        // a public name whose label is literally "l0" must not collide
        // with the canonical nu-names in print
        let tricky = Name::fresh("l0");
        let t = parse_term("\\x:N. nu q. q").unwrap();
        let ty = parse_type("N -> N").unwrap();
        let public = NameSet::singleton(tricky);
        let nf = normalize(&t, &public, &NameSet::new(), &ty, &budget()).unwrap();
        assert_eq!(
            pretty(&canonicalize(&nf)),
            "\\v0:N. if v0 == l0 then nu l1. l1 else nu l2. l2"
        );
    }

    #[test]
    fn disclosure_order_is_behavioral_not_syntactic() {
        // same function, generators introduced in opposite orders: the
        // leak search discloses them in different sequences, but probing
        // behavior pins the canonical order
        let left = canon_closed("nu m. nu n. \\x:N. if x == m then n else m", "N -> N");
        let right = canon_closed("nu n. nu m. \\x:N. if x == m then n else m", "N -> N");
        assert_eq!(left, right);
        assert_eq!(
            verdict(
                "nu m. nu n. \\x:N. if x == m then n else m",
                "nu n. nu m. \\x:N. if x == m then n else m",
                "N -> N"
            ),
            Verdict::Equivalent
        );
    }
}
