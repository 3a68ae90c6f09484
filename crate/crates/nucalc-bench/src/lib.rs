//! Shared fixtures for the benchmark suite.

use nucalc::syntax::parse_term;
use nucalc::Term;

/// The call-twice program: already in normal form, two private names.
pub fn call_twice() -> Term {
    parse_term("nu m. nu n. \\x:N. if x == m then n else m").unwrap()
}

/// Privacy: a fresh-name comparator that collapses to constant false.
pub fn privacy() -> Term {
    parse_term("nu n. \\x:N. x == n").unwrap()
}

/// The second-order agreement tester applied to an ambient predicate.
pub fn second_order_applied() -> Term {
    parse_term(
        "(nu a. nu b. \\f:N -> B. if f a then f b else if f b then false else true) step",
    )
    .unwrap()
}

/// A deeper expression mixing generation, application, and comparison.
pub fn mixed_expression() -> Term {
    parse_term(
        "(\\h:N -> N. nu z. (h (h z)) == (h z)) (nu m. nu n. \\x:N. if x == m then n else m)",
    )
    .unwrap()
}
