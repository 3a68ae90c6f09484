//! Name atoms and finite name sets.
//!
//! A [`Name`] is an opaque atom drawn from a global monotone supply, so a
//! fresh atom is distinct from every atom allocated before it anywhere in
//! the process. Atoms carry a display label purely for printing; identity
//! is the numeric id alone.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

static SUPPLY: AtomicU64 = AtomicU64::new(0);

fn labels() -> &'static Mutex<HashMap<u64, String>> {
    static LABELS: OnceLock<Mutex<HashMap<u64, String>>> = OnceLock::new();
    LABELS.get_or_init(|| Mutex::new(HashMap::new()))
}

/// An atomic name. Equality, ordering, and hashing use only the atom id;
/// the label recorded at allocation is display metadata.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(u64);

impl Name {
    /// Allocates a fresh atom, greater than every atom allocated so far.
    pub fn fresh(label: &str) -> Name {
        let id = SUPPLY.fetch_add(1, Ordering::Relaxed);
        if !label.is_empty() {
            labels().lock().unwrap().insert(id, label.to_string());
        }
        Name(id)
    }

    /// The raw atom id. Useful only for diagnostics.
    pub fn id(&self) -> u64 {
        self.0
    }

    /// The label given at allocation, or a synthetic `a{id}` fallback.
    pub fn label(&self) -> String {
        labels()
            .lock()
            .unwrap()
            .get(&self.0)
            .cloned()
            .unwrap_or_else(|| format!("a{}", self.0))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.label(), self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NameSetError {
    #[error("name sets are not disjoint: both contain {name}")]
    NotDisjoint { name: String },
    #[error("duplicate name {name} in name set")]
    Duplicate { name: String },
}

/// A finite, duplicate-free set of names. Iteration order is insertion
/// order, which doubles as the set's canonical order everywhere a
/// deterministic traversal is needed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NameSet {
    names: Vec<Name>,
}

impl NameSet {
    pub fn new() -> NameSet {
        NameSet { names: Vec::new() }
    }

    pub fn singleton(n: Name) -> NameSet {
        NameSet { names: vec![n] }
    }

    /// Builds a set from an iterator, erroring on duplicates.
    pub fn from_names<I: IntoIterator<Item = Name>>(iter: I) -> Result<NameSet, NameSetError> {
        let mut set = NameSet::new();
        for n in iter {
            set.insert(n)?;
        }
        Ok(set)
    }

    /// Builds a set from an iterator, silently dropping repeats.
    pub fn collect_dedup<I: IntoIterator<Item = Name>>(iter: I) -> NameSet {
        let mut set = NameSet::new();
        for n in iter {
            let _ = set.insert(n);
        }
        set
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, n: Name) -> bool {
        self.names.contains(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = Name> + '_ {
        self.names.iter().copied()
    }

    pub fn as_slice(&self) -> &[Name] {
        &self.names
    }

    /// Inserts a name at the end, erroring if already present.
    pub fn insert(&mut self, n: Name) -> Result<(), NameSetError> {
        if self.contains(n) {
            return Err(NameSetError::Duplicate {
                name: n.to_string(),
            });
        }
        self.names.push(n);
        Ok(())
    }

    /// Disjoint union. The operands must share no name; order is
    /// `self` first, then `other`.
    pub fn oplus(&self, other: &NameSet) -> Result<NameSet, NameSetError> {
        let mut out = self.clone();
        for n in other.iter() {
            if out.contains(n) {
                return Err(NameSetError::NotDisjoint {
                    name: n.to_string(),
                });
            }
            out.names.push(n);
        }
        Ok(out)
    }

    /// Set difference, keeping `self`'s order.
    pub fn minus(&self, other: &NameSet) -> NameSet {
        NameSet {
            names: self
                .names
                .iter()
                .copied()
                .filter(|n| !other.contains(*n))
                .collect(),
        }
    }

    /// True when the two sets contain the same names, in any order.
    pub fn same_names(&self, other: &NameSet) -> bool {
        self.len() == other.len() && self.iter().all(|n| other.contains(n))
    }

    /// All subsets, grouped by ascending cardinality; within one
    /// cardinality, subsets follow the set's own order (earlier members
    /// vary slowest). The empty set comes first, the full set last.
    pub fn subsets_by_size(&self) -> Vec<NameSet> {
        fn next_combination(idx: &mut [usize], n: usize) -> bool {
            let k = idx.len();
            let mut i = k;
            while i > 0 {
                i -= 1;
                if idx[i] < i + n - k {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    return true;
                }
            }
            false
        }
        let n = self.names.len();
        let mut out = Vec::new();
        for k in 0..=n {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                out.push(NameSet {
                    names: idx.iter().map(|&i| self.names[i]).collect(),
                });
                if !next_combination(&mut idx, n) {
                    break;
                }
            }
        }
        out
    }
}

impl fmt::Display for NameSet {
    /// Renders as `{m, n}`. Names sharing a label are disambiguated with
    /// `#k` suffixes so the rendering stays injective per call.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (i, n) in self.names.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let label = n.label();
            let count = seen.entry(label.clone()).or_insert(0);
            if *count == 0 {
                write!(f, "{label}")?;
            } else {
                write!(f, "{label}#{count}")?;
            }
            *count += 1;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Name> for NameSet {
    /// Collects with silent deduplication; use [`NameSet::from_names`] to
    /// surface duplicates instead.
    fn from_iter<I: IntoIterator<Item = Name>>(iter: I) -> NameSet {
        NameSet::collect_dedup(iter)
    }
}
