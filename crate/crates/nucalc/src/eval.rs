//! Big-step evaluation.
//!
//! Evaluation of a closed, well-typed term produces a value together with
//! the list of names generated along the way, in generation order. Values
//! (booleans, name atoms, lambdas) evaluate to themselves and generate
//! nothing. `nu n. M` allocates a fresh atom, substitutes it for `n`, and
//! records it; an application evaluates the function, then the argument,
//! then the substituted body, concatenating the generated names in that
//! order. Fresh atoms come from the global supply, so they are distinct
//! from every atom already in scope.
//!
//! The calculus is terminating, so fuel exists only to bound runaway
//! inputs (and bugs); the default is generous.

use thiserror::Error;

use crate::span::Span;
use crate::syntax::{alpha_eq, pretty, substitute, Name, NameSet, Term};

/// Default step budget, ample for any reasonable program.
pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("evaluation exhausted its fuel")]
    FuelExhausted,
    #[error("evaluation stuck: {0}")]
    Stuck(String),
}

/// The outcome of evaluating a term: freshly generated names (in
/// generation order) and the final value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub generated: NameSet,
    pub value: Term,
}

/// Evaluates a closed, well-typed term. Open terms or ill-typed
/// applications surface as `Stuck` with a description of the offending
/// redex.
pub fn evaluate(t: &Term, fuel: u64) -> Result<EvalResult, EvalError> {
    let mut st = Evaluator { fuel };
    let mut generated = NameSet::new();
    let value = st.eval(t, &mut generated)?;
    Ok(EvalResult { generated, value })
}

struct Evaluator {
    fuel: u64,
}

impl Evaluator {
    fn eval(&mut self, t: &Term, generated: &mut NameSet) -> Result<Term, EvalError> {
        if self.fuel == 0 {
            return Err(EvalError::FuelExhausted);
        }
        self.fuel -= 1;
        match t {
            Term::True | Term::False | Term::NameLit(_) | Term::Lam(..) => Ok(t.clone()),
            Term::Var(x) => Err(EvalError::Stuck(format!("unbound variable '{x}'"))),
            Term::Nu(x, body) => {
                let n = Name::fresh(x);
                generated
                    .insert(n)
                    .expect("fresh atoms are globally unique");
                self.eval(&substitute(body, x, &Term::NameLit(n)), generated)
            }
            Term::Eq(l, r) => {
                let vl = self.name_of(l, generated)?;
                let vr = self.name_of(r, generated)?;
                Ok(if vl == vr { Term::True } else { Term::False })
            }
            Term::If(c, t1, t2) => match self.eval(c, generated)? {
                Term::True => self.eval(t1, generated),
                Term::False => self.eval(t2, generated),
                other => Err(EvalError::Stuck(format!(
                    "if-condition evaluated to non-boolean {}",
                    pretty(&other)
                ))),
            },
            Term::App(f, a) => {
                let vf = self.eval(f, generated)?;
                let va = self.eval(a, generated)?;
                match vf {
                    Term::Lam(x, _, body) => self.eval(&substitute(&body, &x, &va), generated),
                    other => Err(EvalError::Stuck(format!(
                        "application of non-function {}",
                        pretty(&other)
                    ))),
                }
            }
        }
    }

    fn name_of(&mut self, t: &Term, generated: &mut NameSet) -> Result<Name, EvalError> {
        match self.eval(t, generated)? {
            Term::NameLit(n) => Ok(n),
            other => Err(EvalError::Stuck(format!(
                "'==' applied to non-name {}",
                pretty(&other)
            ))),
        }
    }
}

/// Checks that two evaluation results agree up to a renaming of their
/// generated names: some bijection between the generated sets must make
/// the values alpha-equal, with names from the surrounding scope held
/// fixed. Two runs of the same program always satisfy this.
///
/// The aligned bijection (i-th generated name to i-th generated name) is
/// tried first and almost always suffices; otherwise all bijections are
/// searched, which is feasible for the small generated sets produced by
/// realistic programs.
pub fn results_match(r1: &EvalResult, r2: &EvalResult) -> bool {
    if r1.generated.len() != r2.generated.len() {
        return false;
    }
    let ambient1 = r1.value.free_names().minus(&r1.generated);
    let ambient2 = r2.value.free_names().minus(&r2.generated);
    if !ambient1.same_names(&ambient2) {
        return false;
    }
    let base = Span::identity(&ambient1);
    let g1: Vec<Name> = r1.generated.iter().collect();
    let g2: Vec<Name> = r2.generated.iter().collect();

    let check = |perm: &[Name]| -> bool {
        let mut span = base.clone();
        for (l, r) in g1.iter().zip(perm) {
            if span.insert(*l, *r).is_err() {
                return false;
            }
        }
        alpha_eq(&r1.value, &r2.value, &span)
    };

    if check(&g2) {
        return true;
    }
    crate::combinatorics::permutations(&g2)
        .iter()
        .any(|p| check(p))
}
