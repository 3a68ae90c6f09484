//! A workbench for a tiny calculus of fresh names: the simply typed
//! lambda calculus over booleans and an abstract type of names, extended
//! with a generator `nu n. M` that binds a fresh name in `M`.
//!
//! The crate provides
//!
//! * [`syntax`]: terms, types, parsing, printing, substitution;
//! * [`typecheck`]: simple type inference and the first-order check;
//! * [`eval`]: the big-step operational semantics with fuel;
//! * [`logrel`]: a logical relation deciding contextual equivalence at
//!   first-order types, plus the least-leak computation;
//! * [`normal`]: privacy-eliminating normal forms and the equivalence
//!   decision procedure built on them;
//! * [`randsem`]: a randomized semantics in which a fresh name is an
//!   independent uniform draw from `[0, 1)`, with Monte Carlo drivers;
//! * [`testing`]: a seeded corpus generator and a brute-force oracle for
//!   the logical relation, used to cross-check the decision procedures.

mod combinatorics;
pub mod eval;
pub mod logrel;
pub mod normal;
pub mod randsem;
pub mod span;
pub mod syntax;
pub mod testing;
pub mod typecheck;

pub use span::{Span, SpanError};
pub use syntax::{Name, NameSet, Term, Type};

/// Resource limits shared by the decision procedures.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Evaluation steps before `FuelExhausted`.
    pub fuel: u64,
    /// Largest private name set the leak search will enumerate.
    pub max_priv: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            fuel: eval::DEFAULT_FUEL,
            max_priv: logrel::DEFAULT_MAX_PRIV,
        }
    }
}
