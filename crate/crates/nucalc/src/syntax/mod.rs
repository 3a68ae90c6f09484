//! Surface syntax: terms, types, names, parsing, printing, substitution.

mod alpha;
mod ast;
mod name;
mod parse;
mod pretty;
mod subst;

pub use alpha::{alpha_eq, alpha_eq_id};
pub use ast::{Ident, Term, Type, HOLE};
pub use name::{Name, NameSet, NameSetError};
pub use parse::{parse_context, parse_term, parse_type, rename_apart, ParseError};
pub use pretty::pretty;
pub use subst::{bind_names, count_holes, plug, substitute, substitute_name};
