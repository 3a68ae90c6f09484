//! Simple type inference.
//!
//! Terms carry full annotations on lambda binders, so types are inferred
//! bottom-up with no unification. A context supplies the types of free
//! variables (used by drivers for ambient predicates) and the set of name
//! atoms allowed to occur.

use thiserror::Error;

use crate::syntax::{pretty, Ident, NameSet, Term, Type};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound variable '{ident}' in {location}")]
    UnboundVariable { ident: Ident, location: String },
    #[error("unknown name atom '{name}' in {location}")]
    UnknownName { name: String, location: String },
    #[error("type mismatch in {location}: expected {expected}, found {found}")]
    TypeMismatch {
        expected: Type,
        found: Type,
        location: String,
    },
    #[error("not a function in {location}: found {found}")]
    NotAFunction { found: Type, location: String },
}

/// Typing context: variable bindings plus the ambient name set.
#[derive(Clone, Debug, Default)]
pub struct Context {
    vars: Vec<(Ident, Type)>,
    names: NameSet,
}

impl Context {
    pub fn new(names: NameSet) -> Context {
        Context {
            vars: Vec::new(),
            names,
        }
    }

    /// Adds a free-variable binding (e.g. an ambient predicate).
    pub fn with_var(mut self, x: impl Into<Ident>, ty: Type) -> Context {
        self.vars.push((x.into(), ty));
        self
    }

    pub fn names(&self) -> &NameSet {
        &self.names
    }

    fn lookup(&self, x: &str) -> Option<&Type> {
        self.vars
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, ty)| ty)
    }
}

/// Infers the type of `t` under `ctx`, or reports the leftmost error.
/// Error locations quote the offending subterm.
pub fn infer(ctx: &Context, t: &Term) -> Result<Type, TypeError> {
    let mut ctx = ctx.clone();
    go(&mut ctx, t)
}

fn go(ctx: &mut Context, t: &Term) -> Result<Type, TypeError> {
    match t {
        Term::Var(x) => match ctx.lookup(x) {
            Some(ty) => Ok(ty.clone()),
            None => Err(TypeError::UnboundVariable {
                ident: x.clone(),
                location: pretty(t),
            }),
        },
        Term::NameLit(n) => {
            if ctx.names.contains(*n) {
                Ok(Type::Name)
            } else {
                Err(TypeError::UnknownName {
                    name: n.to_string(),
                    location: pretty(t),
                })
            }
        }
        Term::True | Term::False => Ok(Type::Bool),
        Term::Eq(l, r) => {
            let tl = go(ctx, l)?;
            if tl != Type::Name {
                return Err(TypeError::TypeMismatch {
                    expected: Type::Name,
                    found: tl,
                    location: pretty(l),
                });
            }
            let tr = go(ctx, r)?;
            if tr != Type::Name {
                return Err(TypeError::TypeMismatch {
                    expected: Type::Name,
                    found: tr,
                    location: pretty(r),
                });
            }
            Ok(Type::Bool)
        }
        Term::If(c, t1, t2) => {
            let tc = go(ctx, c)?;
            if tc != Type::Bool {
                return Err(TypeError::TypeMismatch {
                    expected: Type::Bool,
                    found: tc,
                    location: pretty(c),
                });
            }
            let tt = go(ctx, t1)?;
            let te = go(ctx, t2)?;
            if tt != te {
                return Err(TypeError::TypeMismatch {
                    expected: tt,
                    found: te,
                    location: pretty(t2),
                });
            }
            Ok(tt)
        }
        Term::Lam(x, ty, body) => {
            ctx.vars.push((x.clone(), ty.clone()));
            let tb = go(ctx, body)?;
            ctx.vars.pop();
            Ok(Type::arrow(ty.clone(), tb))
        }
        Term::App(f, a) => {
            let tf = go(ctx, f)?;
            let (dom, cod) = match tf {
                Type::Arrow(d, c) => (*d, *c),
                other => {
                    return Err(TypeError::NotAFunction {
                        found: other,
                        location: pretty(f),
                    })
                }
            };
            let ta = go(ctx, a)?;
            if ta != dom {
                return Err(TypeError::TypeMismatch {
                    expected: dom,
                    found: ta,
                    location: pretty(a),
                });
            }
            Ok(cod)
        }
        Term::Nu(x, body) => {
            ctx.vars.push((x.clone(), Type::Name));
            let tb = go(ctx, body)?;
            ctx.vars.pop();
            Ok(tb)
        }
    }
}

/// First-order types are `t1 -> t2 -> ... -> tn` with every `ti` ground;
/// this includes the ground types themselves. `(N -> B) -> B` is not
/// first-order because its domain is a function type.
pub fn first_order(ty: &Type) -> bool {
    match ty {
        Type::Bool | Type::Name => true,
        Type::Arrow(dom, cod) => dom.is_ground() && first_order(cod),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{bind_names, parse_term, parse_type, Name};

    fn infer_closed(src: &str) -> Result<Type, TypeError> {
        infer(&Context::default(), &parse_term(src).unwrap())
    }

    #[test]
    fn infers_the_fresh_name_comparator() {
        assert_eq!(
            infer_closed("nu n. \\x:N. x == n").unwrap(),
            parse_type("N -> B").unwrap()
        );
    }

    #[test]
    fn eq_requires_name_operands() {
        let err = infer_closed("\\x:B. x == x").unwrap_err();
        assert_eq!(
            err,
            TypeError::TypeMismatch {
                expected: Type::Name,
                found: Type::Bool,
                location: "x".to_string(),
            }
        );
    }

    #[test]
    fn nu_body_can_have_any_type() {
        assert_eq!(
            infer_closed("nu n. \\f:N -> B. f n").unwrap(),
            parse_type("(N -> B) -> B").unwrap()
        );
        assert_eq!(infer_closed("nu n. true").unwrap(), Type::Bool);
    }

    #[test]
    fn if_branches_must_agree() {
        let err = infer_closed("nu n. if true then n else false").unwrap_err();
        assert!(matches!(err, TypeError::TypeMismatch { .. }));
    }

    #[test]
    fn application_checks_the_argument() {
        let err = infer_closed("(\\x:N. x) true").unwrap_err();
        assert_eq!(
            err,
            TypeError::TypeMismatch {
                expected: Type::Name,
                found: Type::Bool,
                location: "true".to_string(),
            }
        );
        let err = infer_closed("true false").unwrap_err();
        assert!(matches!(err, TypeError::NotAFunction { .. }));
    }

    #[test]
    fn unbound_variables_are_reported() {
        assert_eq!(
            infer_closed("x").unwrap_err(),
            TypeError::UnboundVariable {
                ident: "x".to_string(),
                location: "x".to_string(),
            }
        );
    }

    #[test]
    fn name_atoms_must_be_ambient() {
        let a = Name::fresh("a");
        let t = bind_names(&parse_term("a == a").unwrap(), &[("a".to_string(), a)]);
        assert!(matches!(
            infer(&Context::default(), &t),
            Err(TypeError::UnknownName { .. })
        ));
        assert_eq!(
            infer(&Context::new(NameSet::singleton(a)), &t).unwrap(),
            Type::Bool
        );
    }

    #[test]
    fn context_variables_type_ambient_predicates() {
        let ctx = Context::default().with_var("step", parse_type("N -> B").unwrap());
        let t = parse_term("nu n. step n").unwrap();
        assert_eq!(infer(&ctx, &t).unwrap(), Type::Bool);
    }

    #[test]
    fn first_order_covers_ground_and_ground_chains() {
        for (src, expect) in [
            ("B", true),
            ("N", true),
            ("N -> B", true),
            ("B -> N -> N", true),
            ("(N -> B) -> B", false),
            ("N -> (N -> B) -> B", false),
        ] {
            assert_eq!(first_order(&parse_type(src).unwrap()), expect, "{src}");
        }
    }
}
