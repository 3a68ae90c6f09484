//! Pretty printer. Output re-parses to an alpha-equal term and uses the
//! minimum parentheses the grammar allows.

use std::collections::HashMap;
use std::fmt::Write;

use super::ast::Term;
use super::name::Name;

// precedence levels, loosest to tightest
const LVL_TERM: u8 = 0; // lambda, nu, if
const LVL_EQ: u8 = 1;
const LVL_APP: u8 = 2;
const LVL_ATOM: u8 = 3;

/// Renders a term. Name atoms print as their labels; when two distinct
/// atoms in the same term share a label, later ones get a `#k` suffix so
/// the rendering distinguishes them (such terms contain literal atoms and
/// are not meant to re-parse).
pub fn pretty(t: &Term) -> String {
    let mut names: HashMap<Name, String> = HashMap::new();
    let mut used: HashMap<String, usize> = HashMap::new();
    for n in t.free_names().iter() {
        let label = n.label();
        let count = used.entry(label.clone()).or_insert(0);
        let shown = if *count == 0 {
            label.clone()
        } else {
            format!("{label}#{count}")
        };
        *count += 1;
        names.insert(n, shown);
    }
    let mut out = String::new();
    go(t, LVL_TERM, &names, &mut out);
    out
}

fn go(t: &Term, lvl: u8, names: &HashMap<Name, String>, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::NameLit(n) => match names.get(n) {
            Some(shown) => out.push_str(shown),
            None => {
                let _ = write!(out, "{n}");
            }
        },
        Term::True => out.push_str("true"),
        Term::False => out.push_str("false"),
        Term::Eq(l, r) => paren(lvl > LVL_EQ, out, |out| {
            go(l, LVL_APP, names, out);
            out.push_str(" == ");
            go(r, LVL_APP, names, out);
        }),
        Term::App(f, a) => paren(lvl > LVL_APP, out, |out| {
            go(f, LVL_APP, names, out);
            out.push(' ');
            go(a, LVL_ATOM, names, out);
        }),
        Term::If(c, t1, t2) => paren(lvl > LVL_TERM, out, |out| {
            out.push_str("if ");
            go(c, LVL_TERM, names, out);
            out.push_str(" then ");
            go(t1, LVL_TERM, names, out);
            out.push_str(" else ");
            go(t2, LVL_TERM, names, out);
        }),
        Term::Lam(x, ty, b) => paren(lvl > LVL_TERM, out, |out| {
            let _ = write!(out, "\\{x}:{ty}. ");
            go(b, LVL_TERM, names, out);
        }),
        Term::Nu(x, b) => paren(lvl > LVL_TERM, out, |out| {
            let _ = write!(out, "nu {x}. ");
            go(b, LVL_TERM, names, out);
        }),
    }
}

fn paren(needed: bool, out: &mut String, body: impl FnOnce(&mut String)) {
    if needed {
        out.push('(');
        body(out);
        out.push(')');
    } else {
        body(out);
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", pretty(self))
    }
}
