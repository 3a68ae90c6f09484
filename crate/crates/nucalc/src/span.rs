//! Partial bijections between name sets.

use std::fmt;

use thiserror::Error;

use crate::syntax::{Name, NameSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpanError {
    #[error("pair ({left}, {right}) breaks injectivity: {side} name already mapped")]
    NotInjective {
        left: String,
        right: String,
        side: &'static str,
    },
}

/// A partial bijection between two name sets: a set of pairs in which no
/// left name and no right name occurs twice. Pairs keep insertion order,
/// which makes enumeration and printing deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pairs: Vec<(Name, Name)>,
}

impl Span {
    pub fn empty() -> Span {
        Span { pairs: Vec::new() }
    }

    /// The identity span on `s`, relating every name to itself.
    pub fn identity(s: &NameSet) -> Span {
        Span {
            pairs: s.iter().map(|n| (n, n)).collect(),
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Name, Name)>>(iter: I) -> Result<Span, SpanError> {
        let mut span = Span::empty();
        for (l, r) in iter {
            span.insert(l, r)?;
        }
        Ok(span)
    }

    /// Adds one pair, erroring if either side is already mapped.
    pub fn insert(&mut self, left: Name, right: Name) -> Result<(), SpanError> {
        if self.pairs.iter().any(|&(l, _)| l == left) {
            return Err(SpanError::NotInjective {
                left: left.to_string(),
                right: right.to_string(),
                side: "left",
            });
        }
        if self.pairs.iter().any(|&(_, r)| r == right) {
            return Err(SpanError::NotInjective {
                left: left.to_string(),
                right: right.to_string(),
                side: "right",
            });
        }
        self.pairs.push((left, right));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Name, Name)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn contains_pair(&self, left: Name, right: Name) -> bool {
        self.pairs.contains(&(left, right))
    }

    pub fn lookup_left(&self, left: Name) -> Option<Name> {
        self.pairs.iter().find(|&&(l, _)| l == left).map(|&(_, r)| r)
    }

    pub fn lookup_right(&self, right: Name) -> Option<Name> {
        self.pairs.iter().find(|&&(_, r)| r == right).map(|&(l, _)| l)
    }

    pub fn left_names(&self) -> NameSet {
        self.pairs.iter().map(|&(l, _)| l).collect()
    }

    pub fn right_names(&self) -> NameSet {
        self.pairs.iter().map(|&(_, r)| r).collect()
    }

    /// Relational composition: `(a, c)` is in the result when `(a, b)` is
    /// here and `(b, c)` is in `other`. The composite of partial
    /// bijections is again one.
    pub fn compose(&self, other: &Span) -> Span {
        Span {
            pairs: self
                .pairs
                .iter()
                .filter_map(|&(a, b)| other.lookup_left(b).map(|c| (a, c)))
                .collect(),
        }
    }

    /// The converse bijection, with left and right swapped.
    pub fn inverse(&self) -> Span {
        Span {
            pairs: self.pairs.iter().map(|&(l, r)| (r, l)).collect(),
        }
    }

    /// Keeps the pairs whose left name lies in `u`.
    pub fn restrict(&self, u: &NameSet) -> Span {
        Span {
            pairs: self
                .pairs
                .iter()
                .copied()
                .filter(|&(l, _)| u.contains(l))
                .collect(),
        }
    }

    /// Disjoint union: the operands must share no left name and no right
    /// name. This is the span analogue of adjoining freshly generated
    /// names to a public name set.
    pub fn oplus(&self, other: &Span) -> Result<Span, SpanError> {
        let mut out = self.clone();
        for (l, r) in other.iter() {
            out.insert(l, r)?;
        }
        Ok(out)
    }

    /// Pairs sorted by atom ids, for use as a deterministic map key.
    pub fn sorted_pairs(&self) -> Vec<(Name, Name)> {
        let mut pairs = self.pairs.clone();
        pairs.sort();
        pairs
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (l, r)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l} ~ {r}")?;
        }
        write!(f, "}}")
    }
}
