//! A randomized semantics for name generation, with Monte Carlo drivers.
//!
//! Names are interpreted as points of the real unit interval: `nu n. M`
//! draws an independent uniform sample from `[0, 1)` and name equality
//! compares the sampled reals exactly (bit equality on `f64`). The
//! interval is atomless, so two independent draws collide with
//! probability `2^-53` per pair; a million draws stay distinct with
//! probability well above `1 - 1e-6`. Since fresh-name semantics only
//! ever observes equality of names, any atomless distribution would do;
//! the unit interval is the convenient standard choice.
//!
//! Ambient names (the `--public` atoms of a program) are also random
//! names: each trial draws a real for every ambient atom up front, in
//! name-set order, before evaluating.
//!
//! An ambient predicate is an opaque constant of type `N -> B` given by a
//! threshold: `p n` holds when the real behind `n` is below the
//! threshold. Predicates let a boolean observation depend on a name in a
//! way no program of the calculus itself can.
//!
//! Every trial derives its own random stream from `(seed, trial index)`,
//! so reports are reproducible bit for bit, independent of platform and
//! of how trials are scheduled. Trial successes are simply counted, so
//! trials could run in any order or in parallel without changing the
//! report.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::syntax::{plug, pretty, substitute, Ident, Name, NameSet, Term};

#[derive(Debug, Error, PartialEq)]
pub enum RandError {
    #[error("evaluation exhausted its fuel")]
    FuelExhausted,
    #[error("evaluation stuck: {0}")]
    Stuck(String),
    #[error("program of type B evaluated to non-boolean {0}")]
    NotBoolean(String),
    #[error("predicate threshold must lie strictly between 0 and 1, got {0}")]
    BadThreshold(f64),
    #[error("trial count must be positive")]
    NoTrials,
}

/// An opaque name predicate `N -> B`: holds on a name exactly when the
/// real sampled for that name is below `threshold`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientPredicate {
    name: Ident,
    threshold: f64,
}

impl AmbientPredicate {
    pub fn new(name: impl Into<Ident>, threshold: f64) -> Result<AmbientPredicate, RandError> {
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(RandError::BadThreshold(threshold));
        }
        Ok(AmbientPredicate {
            name: name.into(),
            threshold,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

/// The value of one randomized run, along with every name drawn: ambient
/// atoms first, then generated ones in generation order.
#[derive(Clone, Debug, PartialEq)]
pub struct RandOutcome {
    pub value: Term,
    pub draws: Vec<(Name, f64)>,
}

/// The random stream for one trial. Distinct `(seed, trial)` pairs give
/// independent streams, and the derivation is platform-independent.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Runs `t` once under the randomized semantics. Ambient atoms get their
/// draws first (in `ambient` order); predicate names evaluate as opaque
/// function values.
pub fn rand_eval(
    t: &Term,
    ambient: &NameSet,
    predicates: &[AmbientPredicate],
    rng: &mut ChaCha8Rng,
    fuel: u64,
) -> Result<RandOutcome, RandError> {
    let mut st = REval {
        fuel,
        rng,
        table: HashMap::new(),
        draws: Vec::new(),
        predicates,
    };
    for n in ambient.iter() {
        st.draw(n);
    }
    let value = st.eval(t)?;
    Ok(RandOutcome {
        value,
        draws: st.draws,
    })
}

struct REval<'a> {
    fuel: u64,
    rng: &'a mut ChaCha8Rng,
    table: HashMap<Name, f64>,
    draws: Vec<(Name, f64)>,
    predicates: &'a [AmbientPredicate],
}

impl REval<'_> {
    fn draw(&mut self, n: Name) {
        let r: f64 = self.rng.random();
        self.table.insert(n, r);
        self.draws.push((n, r));
    }

    fn real_of(&self, n: Name) -> Result<f64, RandError> {
        self.table.get(&n).copied().ok_or_else(|| {
            RandError::Stuck(format!("name {n:?} was never drawn (not ambient, not generated)"))
        })
    }

    fn is_predicate(&self, x: &str) -> Option<f64> {
        self.predicates
            .iter()
            .find(|p| p.name == x)
            .map(|p| p.threshold)
    }

    fn eval(&mut self, t: &Term) -> Result<Term, RandError> {
        if self.fuel == 0 {
            return Err(RandError::FuelExhausted);
        }
        self.fuel -= 1;
        match t {
            Term::True | Term::False | Term::NameLit(_) | Term::Lam(..) => Ok(t.clone()),
            Term::Var(x) => {
                if self.is_predicate(x).is_some() {
                    Ok(t.clone())
                } else {
                    Err(RandError::Stuck(format!("unbound variable '{x}'")))
                }
            }
            Term::Nu(x, body) => {
                let n = Name::fresh(x);
                self.draw(n);
                self.eval(&substitute(body, x, &Term::NameLit(n)))
            }
            Term::Eq(l, r) => {
                let rl = self.real_arg(l)?;
                let rr = self.real_arg(r)?;
                // exact comparison: distinct draws are distinct reals
                Ok(if rl == rr { Term::True } else { Term::False })
            }
            Term::If(c, t1, t2) => match self.eval(c)? {
                Term::True => self.eval(t1),
                Term::False => self.eval(t2),
                other => Err(RandError::Stuck(format!(
                    "if-condition evaluated to non-boolean {}",
                    pretty(&other)
                ))),
            },
            Term::App(f, a) => {
                let vf = self.eval(f)?;
                let va = self.eval(a)?;
                match vf {
                    Term::Lam(x, _, body) => self.eval(&substitute(&body, &x, &va)),
                    Term::Var(p) => {
                        let theta = self.is_predicate(&p).ok_or_else(|| {
                            RandError::Stuck(format!("application of unbound variable '{p}'"))
                        })?;
                        match va {
                            Term::NameLit(n) => Ok(if self.real_of(n)? < theta {
                                Term::True
                            } else {
                                Term::False
                            }),
                            other => Err(RandError::Stuck(format!(
                                "predicate '{p}' applied to non-name {}",
                                pretty(&other)
                            ))),
                        }
                    }
                    other => Err(RandError::Stuck(format!(
                        "application of non-function {}",
                        pretty(&other)
                    ))),
                }
            }
        }
    }

    fn real_arg(&mut self, t: &Term) -> Result<f64, RandError> {
        match self.eval(t)? {
            Term::NameLit(n) => self.real_of(n),
            other => Err(RandError::Stuck(format!(
                "'==' applied to non-name {}",
                pretty(&other)
            ))),
        }
    }
}

/// A Monte Carlo report. Serializes in this field order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub seed: u64,
}

/// Estimates the probability that the boolean program `t` evaluates to
/// `true` under the randomized semantics, over independently seeded
/// trials. The report is a deterministic function of the inputs.
pub fn estimate(
    t: &Term,
    ambient: &NameSet,
    predicates: &[AmbientPredicate],
    trials: u64,
    seed: u64,
    fuel: u64,
) -> Result<SampleReport, RandError> {
    if trials == 0 {
        return Err(RandError::NoTrials);
    }
    let mut successes = 0u64;
    for i in 0..trials {
        let mut rng = trial_rng(seed, i);
        let out = rand_eval(t, ambient, predicates, &mut rng, fuel)?;
        match out.value {
            Term::True => successes += 1,
            Term::False => {}
            other => return Err(RandError::NotBoolean(pretty(&other))),
        }
    }
    let p = successes as f64 / trials as f64;
    let std_error = (p * (1.0 - p) / trials as f64).sqrt();
    Ok(SampleReport {
        trials,
        successes,
        estimate: p,
        std_error,
        seed,
    })
}

/// The outcome of a distinguishing experiment: per-side reports plus the
/// separation call.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Separation {
    pub left: SampleReport,
    pub right: SampleReport,
    pub separated: bool,
}

/// Plugs the two programs into the context and estimates both sides,
/// the right side on a distinct seed stream. The sides are declared
/// separated when the estimates differ by more than four combined
/// standard errors; equivalent programs have identical success
/// distributions, so separation is statistical evidence of inequivalence
/// (never proof of equivalence).
#[allow(clippy::too_many_arguments)]
pub fn distinguish(
    m1: &Term,
    m2: &Term,
    ctx: &Term,
    ambient: &NameSet,
    predicates: &[AmbientPredicate],
    trials: u64,
    seed: u64,
    fuel: u64,
) -> Result<Separation, RandError> {
    let left = estimate(&plug(ctx, m1), ambient, predicates, trials, seed, fuel)?;
    let right = estimate(
        &plug(ctx, m2),
        ambient,
        predicates,
        trials,
        seed.wrapping_add(1),
        fuel,
    )?;
    let gap = (left.estimate - right.estimate).abs();
    let separated = gap > 4.0 * (left.std_error + right.std_error);
    Ok(Separation {
        left,
        right,
        separated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::DEFAULT_FUEL;
    use crate::syntax::{bind_names, parse_context, parse_term};

    fn est(src: &str, trials: u64, seed: u64) -> SampleReport {
        estimate(
            &parse_term(src).unwrap(),
            &NameSet::new(),
            &[],
            trials,
            seed,
            DEFAULT_FUEL,
        )
        .unwrap()
    }

    #[test]
    fn two_fresh_names_are_never_equal() {
        let r = est("nu m. nu n. m == n", 10_000, 7);
        assert_eq!(r.successes, 0);
        assert_eq!(r.estimate, 0.0);
        assert_eq!(r.std_error, 0.0);
    }

    #[test]
    fn a_name_always_equals_itself() {
        let r = est("nu n. n == n", 1_000, 11);
        assert_eq!(r.estimate, 1.0);
    }

    #[test]
    fn reports_are_deterministic_given_the_seed() {
        let a = est("nu m. nu n. m == n", 500, 42);
        let b = est("nu m. nu n. m == n", 500, 42);
        assert_eq!(a, b);
        // and different seeds give different draw sequences
        let mut r1 = trial_rng(42, 0);
        let mut r2 = trial_rng(43, 0);
        let x: f64 = r1.random();
        let y: f64 = r2.random();
        assert_ne!(x.to_bits(), y.to_bits());
    }

    #[test]
    fn a_million_draws_stay_distinct() {
        let mut rng = trial_rng(2026, 0);
        let mut seen = std::collections::HashSet::with_capacity(1 << 20);
        for _ in 0..1_000_000u32 {
            let r: f64 = rng.random();
            assert!((0.0..1.0).contains(&r));
            assert!(seen.insert(r.to_bits()), "collision in uniform draws");
        }
    }

    #[test]
    fn ambient_names_are_drawn_and_distinct_from_fresh_ones() {
        let a = Name::fresh("a");
        let t = bind_names(
            &parse_term("nu n. n == a").unwrap(),
            &[("a".to_string(), a)],
        );
        let r = estimate(
            &t,
            &NameSet::singleton(a),
            &[],
            5_000,
            3,
            DEFAULT_FUEL,
        )
        .unwrap();
        assert_eq!(r.estimate, 0.0);
    }

    #[test]
    fn predicates_hold_with_their_threshold_probability() {
        let p = AmbientPredicate::new("step", 0.5).unwrap();
        let t = parse_term("nu n. step n").unwrap();
        let r = estimate(&t, &NameSet::new(), &[p], 10_000, 42, DEFAULT_FUEL).unwrap();
        assert!((r.estimate - 0.5).abs() < 0.02, "estimate {}", r.estimate);
        assert!(matches!(
            AmbientPredicate::new("step", 1.0),
            Err(RandError::BadThreshold(_))
        ));
    }

    #[test]
    fn capture_vs_regeneration_separates_under_the_call_twice_context() {
        let ctx = parse_context("(\\f:B -> N. (f true) == (f true)) @").unwrap();
        let m1 = parse_term("nu n. \\x:B. n").unwrap();
        let m2 = parse_term("\\x:B. nu n. n").unwrap();
        for seed in [1u64, 77, 4096] {
            let sep = distinguish(
                &m1,
                &m2,
                &ctx,
                &NameSet::new(),
                &[],
                2_000,
                seed,
                DEFAULT_FUEL,
            )
            .unwrap();
            assert_eq!(sep.left.estimate, 1.0, "seed {seed}");
            assert_eq!(sep.right.estimate, 0.0, "seed {seed}");
            assert!(sep.separated, "seed {seed}");
        }
    }

    #[test]
    fn equivalent_programs_do_not_separate() {
        let ctx = parse_context("(\\g:N -> B. nu m. g m) @").unwrap();
        let m1 = parse_term("nu n. \\x:N. x == n").unwrap();
        let m2 = parse_term("\\x:N. false").unwrap();
        let sep = distinguish(
            &m1,
            &m2,
            &ctx,
            &NameSet::new(),
            &[],
            2_000,
            9,
            DEFAULT_FUEL,
        )
        .unwrap();
        assert!(!sep.separated);
        assert_eq!(sep.left.estimate, 0.0);
        assert_eq!(sep.right.estimate, 0.0);
    }

    #[test]
    fn sample_report_serializes_in_contract_order() {
        let r = SampleReport {
            trials: 4,
            successes: 2,
            estimate: 0.5,
            std_error: 0.25,
            seed: 9,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            "{\"trials\":4,\"successes\":2,\"estimate\":0.5,\"std_error\":0.25,\"seed\":9}"
        );
    }

    #[test]
    fn zero_trials_is_an_error() {
        assert!(matches!(
            estimate(
                &parse_term("true").unwrap(),
                &NameSet::new(),
                &[],
                0,
                1,
                DEFAULT_FUEL
            ),
            Err(RandError::NoTrials)
        ));
    }
}
