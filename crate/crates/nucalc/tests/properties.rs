//! Randomized properties over seeded corpora. Each property draws a
//! generator seed, a corpus type, and a depth bound from proptest, then
//! builds terms with [`nucalc::testing::TermGen`], so failures shrink to
//! a reproducible (seed, type, depth) triple.

use nucalc::eval::{evaluate, results_match, DEFAULT_FUEL};
use nucalc::logrel::{leak, related, RelQuery};
use nucalc::normal::{canonicalize, equivalent, normalize, Verdict};
use nucalc::syntax::{alpha_eq_id, parse_term, pretty};
use nucalc::testing::{corpus_types, oracle_related, TermGen};
use nucalc::typecheck::{first_order, infer, Context};
use nucalc::{Budget, Name, NameSet, Span, Term, Type};
use proptest::prelude::*;

fn publics(k: usize) -> NameSet {
    ["a", "b"][..k].iter().map(|l| Name::fresh(l)).collect()
}

fn gen_pair(seed: u64, ty_idx: usize, depth: usize, k: usize) -> (Term, Term, Type, NameSet) {
    let ty = corpus_types()[ty_idx % corpus_types().len()].clone();
    let s = publics(k);
    let mut g = TermGen::new(seed, &s);
    let l = g.term(&ty, depth);
    let r = g.term(&ty, depth);
    (l, r, ty, s)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    /// Printing then reparsing gives the same term up to binder names.
    #[test]
    fn pretty_parse_round_trip(seed in any::<u64>(), ty_idx in 0usize..7, depth in 0usize..5) {
        // no ambient atoms: atom labels would reparse as variables
        let (t, _, _, _) = gen_pair(seed, ty_idx, depth, 0);
        let back = parse_term(&pretty(&t)).unwrap();
        prop_assert!(alpha_eq_id(&t, &back), "{} reparsed as {}", pretty(&t), pretty(&back));
    }

    /// Closed well-typed programs evaluate within fuel, deterministically
    /// up to the identity of fresh atoms, and the result re-evaluates to
    /// itself generating nothing.
    #[test]
    fn evaluation_terminates_and_is_deterministic(seed in any::<u64>(), ty_idx in 0usize..7, depth in 0usize..7) {
        let (t, _, _, s) = gen_pair(seed, ty_idx, depth, 2);
        let r1 = evaluate(&t, DEFAULT_FUEL).unwrap();
        let r2 = evaluate(&t, DEFAULT_FUEL).unwrap();
        prop_assert!(results_match(&r1, &r2));
        prop_assert!(r1.value.is_value());
        let again = evaluate(&r1.value, DEFAULT_FUEL).unwrap();
        prop_assert!(again.generated.is_empty());
        prop_assert_eq!(again.value, r1.value.clone());
        // fresh atoms never collide with the ambient ones
        for n in r1.generated.iter() {
            prop_assert!(!s.contains(n));
        }
    }

    /// Evaluation preserves the inferred type (fresh atoms enter the
    /// name context).
    #[test]
    fn subject_reduction(seed in any::<u64>(), ty_idx in 0usize..7, depth in 0usize..5) {
        let (t, _, ty, s) = gen_pair(seed, ty_idx, depth, 2);
        prop_assert_eq!(infer(&Context::new(s.clone()), &t), Ok(ty.clone()));
        let r = evaluate(&t, DEFAULT_FUEL).unwrap();
        let ctx = Context::new(s.oplus(&r.generated).unwrap());
        prop_assert_eq!(infer(&ctx, &r.value), Ok(ty));
    }

    /// The span-indexed decider agrees with the brute-force oracle on
    /// random pairs over the identity span.
    #[test]
    fn decider_agrees_with_oracle(seed in any::<u64>(), ty_idx in 0usize..7, depth in 0usize..4, k in 0usize..3) {
        let (l, r, ty, s) = gen_pair(seed, ty_idx, depth, k);
        let q = RelQuery { span: Span::identity(&s), ty: ty.clone(), left: l.clone(), right: r.clone() };
        let got = related(&q, &Budget::default()).unwrap();
        let want = oracle_related(&l, &r, &Span::identity(&s), &ty);
        prop_assert_eq!(got, want, "left {} right {}", pretty(&l), pretty(&r));
    }

    /// Everything is related to itself over the identity span: the
    /// relation really is reflexive on well-typed programs, which is what
    /// entitles `normalize` to treat an unrelated input as out of scope.
    #[test]
    fn relation_is_reflexive(seed in any::<u64>(), ty_idx in 0usize..7, depth in 0usize..4) {
        let (t, _, ty, s) = gen_pair(seed, ty_idx, depth, 2);
        let q = RelQuery { span: Span::identity(&s), ty, left: t.clone(), right: t.clone() };
        prop_assert!(related(&q, &Budget::default()).unwrap(), "{}", pretty(&t));
    }

    /// `leak` returns a revealing set (per the oracle) none of whose
    /// strict subsets reveals.
    #[test]
    fn leak_is_least_by_the_oracle(seed in any::<u64>(), ty_idx in 0usize..7, depth in 0usize..4) {
        let (t, _, ty, s) = gen_pair(seed, ty_idx, depth, 1);
        let r = evaluate(&t, DEFAULT_FUEL).unwrap();
        let hidden = r.generated.clone();
        let u = leak(&r.value, &s, &hidden, &ty, &Budget::default()).unwrap();
        let self_rel = |revealed: &NameSet| {
            let span = Span::identity(&s.oplus(revealed).unwrap());
            oracle_related(&r.value, &r.value, &span, &ty)
        };
        prop_assert!(self_rel(&u), "leak of {} not revealing", pretty(&r.value));
        for smaller in hidden.subsets_by_size() {
            if smaller.len() >= u.len() {
                break;
            }
            prop_assert!(!self_rel(&smaller),
                "leak {} of {} is not least: {} suffices", u, pretty(&r.value), smaller);
        }
    }

    /// Normal forms are sound (related to the original), grammatical, and
    /// canonically idempotent.
    #[test]
    fn normal_forms_are_sound_and_stable(seed in any::<u64>(), ty_idx in 0usize..7, depth in 0usize..4, k in 0usize..3) {
        let (t, _, ty, s) = gen_pair(seed, ty_idx, depth, k);
        let empty = NameSet::new();
        let nf = normalize(&t, &s, &empty, &ty, &Budget::default()).unwrap();
        let q = RelQuery {
            span: Span::identity(&s),
            ty: ty.clone(),
            left: t.clone(),
            right: nf.as_term(),
        };
        prop_assert!(related(&q, &Budget::default()).unwrap(),
            "{} lost behavior at {}", pretty(&t), &nf);
        prop_assert!(conforms(&nf.as_term(), &ty, &s), "ill-formed normal form {}", &nf);
        let c1 = pretty(&canonicalize(&nf));
        let nf2 = normalize(&parse_term_with(&c1, &s), &s, &empty, &ty, &Budget::default()).unwrap();
        prop_assert_eq!(&c1, &pretty(&canonicalize(&nf2)), "normalization not idempotent");
    }

    /// The canonical-form decision agrees with the brute-force relation.
    #[test]
    fn equivalence_verdicts_agree_with_oracle(seed in any::<u64>(), ty_idx in 0usize..7, depth in 0usize..4, k in 0usize..3) {
        let (l, r, ty, s) = gen_pair(seed, ty_idx, depth, k);
        let verdict = equivalent(&l, &r, &s, &ty, &Budget::default()).unwrap();
        let want = oracle_related(&l, &r, &Span::identity(&s), &ty);
        match verdict {
            Verdict::Equivalent => prop_assert!(want, "false equivalence: {} vs {}", pretty(&l), pretty(&r)),
            Verdict::Inequivalent { reason } => prop_assert!(!want,
                "false inequivalence of {} vs {}: {}", pretty(&l), pretty(&r), reason),
            Verdict::NotFirstOrder { .. } => prop_assert!(false, "corpus types are first order"),
        }
    }

    /// Two canonical forms are textually equal exactly when the programs
    /// are related: on this corpus the behavioral disclosure ordering
    /// fully aligns equivalent programs.
    #[test]
    fn canonical_forms_separate_exactly(seed in any::<u64>(), ty_idx in 0usize..7, depth in 0usize..4, k in 0usize..3) {
        let (l, r, ty, s) = gen_pair(seed, ty_idx, depth, k);
        let empty = NameSet::new();
        let cl = pretty(&canonicalize(&normalize(&l, &s, &empty, &ty, &Budget::default()).unwrap()));
        let cr = pretty(&canonicalize(&normalize(&r, &s, &empty, &ty, &Budget::default()).unwrap()));
        let want = oracle_related(&l, &r, &Span::identity(&s), &ty);
        prop_assert_eq!(cl == cr, want, "{} vs {} gave {} vs {}", pretty(&l), pretty(&r), cl, cr);
    }
}

/// Reparses a canonical form whose free identifiers are public atom
/// labels, rebinding those labels to the original atoms.
fn parse_term_with(src: &str, s: &NameSet) -> Term {
    let t = parse_term(src).unwrap();
    let binds: Vec<(String, Name)> = s.iter().map(|n| (n.label(), n)).collect();
    nucalc::syntax::bind_names(&t, &binds)
}

/// Structural grammar check for normal forms: a `nu` prefix over a value
/// layout determined by the type, with name-indexed ladders in `N`
/// argument positions and boolean splits in `B` positions.
fn conforms(t: &Term, ty: &Type, publics: &NameSet) -> bool {
    assert!(first_order(ty), "checker only covers first-order types");
    let mut body = t;
    let mut bound: Vec<String> = Vec::new();
    while let Term::Nu(x, inner) = body {
        bound.push(x.clone());
        body = inner;
    }
    value_conforms(body, ty, publics, &bound)
}

fn is_name_ref(t: &Term, publics: &NameSet, bound: &[String]) -> bool {
    match t {
        Term::NameLit(n) => publics.contains(*n),
        Term::Var(x) => bound.iter().any(|y| y == x),
        _ => false,
    }
}

fn value_conforms(t: &Term, ty: &Type, publics: &NameSet, bound: &[String]) -> bool {
    match ty {
        Type::Bool => matches!(t, Term::True | Term::False),
        Type::Name => is_name_ref(t, publics, bound),
        Type::Arrow(a, b) => {
            let Term::Lam(x, dom, body) = t else { return false };
            if dom != a.as_ref() {
                return false;
            }
            match a.as_ref() {
                Type::Bool => {
                    let Term::If(c, bt, bf) = body.as_ref() else { return false };
                    **c == Term::var(x)
                        && branch_conforms(bt, b, publics, bound)
                        && branch_conforms(bf, b, publics, bound)
                }
                Type::Name => {
                    let mut bound = bound.to_vec();
                    bound.push(x.clone());
                    ladder_conforms(body, x, b, publics, &bound)
                }
                Type::Arrow(..) => false,
            }
        }
    }
}

/// `if x == n1 then NF else if x == n2 then NF else ... NF`
fn ladder_conforms(t: &Term, x: &str, res: &Type, publics: &NameSet, bound: &[String]) -> bool {
    match t {
        Term::If(c, bt, bf) if matches!(c.as_ref(), Term::Eq(..)) => {
            let Term::Eq(l, r) = c.as_ref() else { unreachable!() };
            **l == Term::var(x)
                && is_name_ref(r, publics, bound)
                && branch_conforms(bt, res, publics, bound)
                && ladder_conforms(bf, x, res, publics, bound)
        }
        _ => branch_conforms(t, res, publics, bound),
    }
}

fn branch_conforms(t: &Term, ty: &Type, publics: &NameSet, bound: &[String]) -> bool {
    let mut body = t;
    let mut bound = bound.to_vec();
    while let Term::Nu(x, inner) = body {
        bound.push(x.clone());
        body = inner;
    }
    value_conforms(body, ty, publics, &bound)
}
