//! Lexer and recursive-descent parser for the surface syntax.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! term    := '\' IDENT ':' type '.' term
//!          | 'nu' IDENT '.' term
//!          | 'if' term 'then' term 'else' term
//!          | eqexpr
//! eqexpr  := appexpr ('==' appexpr)?        -- non-associative
//! appexpr := atom atom*                     -- left-associative
//! atom    := 'true' | 'false' | IDENT | '@' | '(' term ')'
//! type    := ('B' | 'N' | '(' type ')') ('->' type)?
//! ```
//!
//! `--` starts a comment running to end of line. The `@` atom is accepted
//! only by [`parse_context`]. Parsing ends with a freshening pass that
//! renames binders apart, so no two binders in the returned term share an
//! identifier and no binder shadows a free variable.

use thiserror::Error;

use super::ast::{Ident, Term, Type, HOLE};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at line {line}, column {col}")]
    UnexpectedChar { ch: char, line: usize, col: usize },
    #[error("expected {expected}, found {found} at line {line}, column {col}")]
    UnexpectedToken {
        expected: String,
        found: String,
        line: usize,
        col: usize,
    },
    #[error("expected {expected}, found end of input")]
    UnexpectedEof { expected: String },
    #[error("hole '@' is only allowed in contexts (line {line}, column {col})")]
    HoleOutsideContext { line: usize, col: usize },
    #[error("keyword {kw:?} cannot be used as a variable (line {line}, column {col})")]
    KeywordAsIdent {
        kw: String,
        line: usize,
        col: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lambda,
    Dot,
    Colon,
    LParen,
    RParen,
    Arrow,
    EqEq,
    At,
    True,
    False,
    If,
    Then,
    Else,
    Nu,
    Ident(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Lambda => "'\\'".into(),
            Tok::Dot => "'.'".into(),
            Tok::Colon => "':'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::EqEq => "'=='".into(),
            Tok::At => "'@'".into(),
            Tok::True => "'true'".into(),
            Tok::False => "'false'".into(),
            Tok::If => "'if'".into(),
            Tok::Then => "'then'".into(),
            Tok::Else => "'else'".into(),
            Tok::Nu => "'nu'".into(),
            Tok::Ident(s) => format!("identifier {s:?}"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;
    while let Some(&ch) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars>,
                        line: &mut usize,
                        col: &mut usize| {
            let c = chars.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        match ch {
            c if c.is_whitespace() => {
                bump(&mut chars, &mut line, &mut col);
            }
            '\\' => {
                bump(&mut chars, &mut line, &mut col);
                out.push(Spanned {
                    tok: Tok::Lambda,
                    line: tline,
                    col: tcol,
                });
            }
            '.' => {
                bump(&mut chars, &mut line, &mut col);
                out.push(Spanned {
                    tok: Tok::Dot,
                    line: tline,
                    col: tcol,
                });
            }
            ':' => {
                bump(&mut chars, &mut line, &mut col);
                out.push(Spanned {
                    tok: Tok::Colon,
                    line: tline,
                    col: tcol,
                });
            }
            '(' => {
                bump(&mut chars, &mut line, &mut col);
                out.push(Spanned {
                    tok: Tok::LParen,
                    line: tline,
                    col: tcol,
                });
            }
            ')' => {
                bump(&mut chars, &mut line, &mut col);
                out.push(Spanned {
                    tok: Tok::RParen,
                    line: tline,
                    col: tcol,
                });
            }
            '@' => {
                bump(&mut chars, &mut line, &mut col);
                out.push(Spanned {
                    tok: Tok::At,
                    line: tline,
                    col: tcol,
                });
            }
            '-' => {
                bump(&mut chars, &mut line, &mut col);
                match chars.peek() {
                    Some('>') => {
                        bump(&mut chars, &mut line, &mut col);
                        out.push(Spanned {
                            tok: Tok::Arrow,
                            line: tline,
                            col: tcol,
                        });
                    }
                    Some('-') => {
                        // comment: skip to end of line
                        while let Some(&c) = chars.peek() {
                            if c == '\n' {
                                break;
                            }
                            bump(&mut chars, &mut line, &mut col);
                        }
                    }
                    _ => {
                        return Err(ParseError::UnexpectedChar {
                            ch: '-',
                            line: tline,
                            col: tcol,
                        })
                    }
                }
            }
            '=' => {
                bump(&mut chars, &mut line, &mut col);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars, &mut line, &mut col);
                    out.push(Spanned {
                        tok: Tok::EqEq,
                        line: tline,
                        col: tcol,
                    });
                } else {
                    return Err(ParseError::UnexpectedChar {
                        ch: '=',
                        line: tline,
                        col: tcol,
                    });
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(bump(&mut chars, &mut line, &mut col));
                    } else {
                        break;
                    }
                }
                let tok = match ident.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "if" => Tok::If,
                    "then" => Tok::Then,
                    "else" => Tok::Else,
                    "nu" => Tok::Nu,
                    _ => Tok::Ident(ident),
                };
                out.push(Spanned {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
            c => {
                return Err(ParseError::UnexpectedChar {
                    ch: c,
                    line: tline,
                    col: tcol,
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    allow_hole: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> Result<Spanned, ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| ParseError::UnexpectedEof {
                expected: expected.to_string(),
            })?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        let t = self.next(expected)?;
        if t.tok == tok {
            Ok(())
        } else {
            Err(ParseError::UnexpectedToken {
                expected: expected.to_string(),
                found: t.tok.describe(),
                line: t.line,
                col: t.col,
            })
        }
    }

    fn ident(&mut self) -> Result<Ident, ParseError> {
        let t = self.next("an identifier")?;
        match t.tok {
            Tok::Ident(s) => Ok(s),
            Tok::True | Tok::False | Tok::If | Tok::Then | Tok::Else | Tok::Nu => {
                Err(ParseError::KeywordAsIdent {
                    kw: t.tok.describe(),
                    line: t.line,
                    col: t.col,
                })
            }
            other => Err(ParseError::UnexpectedToken {
                expected: "an identifier".to_string(),
                found: other.describe(),
                line: t.line,
                col: t.col,
            }),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().map(|s| s.tok.clone()) {
            Some(Tok::Lambda) => {
                self.pos += 1;
                let x = self.ident()?;
                self.expect(Tok::Colon, "':' after lambda binder")?;
                let ty = self.ty()?;
                self.expect(Tok::Dot, "'.' after lambda type")?;
                let body = self.term()?;
                Ok(Term::lam(x, ty, body))
            }
            Some(Tok::Nu) => {
                self.pos += 1;
                let x = self.ident()?;
                self.expect(Tok::Dot, "'.' after nu binder")?;
                let body = self.term()?;
                Ok(Term::nu(x, body))
            }
            Some(Tok::If) => {
                self.pos += 1;
                let c = self.term()?;
                self.expect(Tok::Then, "'then'")?;
                let t = self.term()?;
                self.expect(Tok::Else, "'else'")?;
                let e = self.term()?;
                Ok(Term::ite(c, t, e))
            }
            _ => self.eqexpr(),
        }
    }

    fn eqexpr(&mut self) -> Result<Term, ParseError> {
        let l = self.appexpr()?;
        if let Some(s) = self.peek() {
            if s.tok == Tok::EqEq {
                self.pos += 1;
                let r = self.appexpr()?;
                // '==' is non-associative: a second one is a parse error
                if let Some(s2) = self.peek() {
                    if s2.tok == Tok::EqEq {
                        return Err(ParseError::UnexpectedToken {
                            expected: "'==' is non-associative; parenthesize one comparison"
                                .to_string(),
                            found: s2.tok.describe(),
                            line: s2.line,
                            col: s2.col,
                        });
                    }
                }
                return Ok(Term::eq(l, r));
            }
        }
        Ok(l)
    }

    fn appexpr(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while let Some(s) = self.peek() {
            match s.tok {
                Tok::True | Tok::False | Tok::Ident(_) | Tok::LParen | Tok::At => {
                    let a = self.atom()?;
                    t = Term::app(t, a);
                }
                _ => break,
            }
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let s = self.next("a term")?;
        match s.tok {
            Tok::True => Ok(Term::True),
            Tok::False => Ok(Term::False),
            Tok::Ident(x) => Ok(Term::Var(x)),
            Tok::At => {
                if self.allow_hole {
                    Ok(Term::Var(HOLE.to_string()))
                } else {
                    Err(ParseError::HoleOutsideContext {
                        line: s.line,
                        col: s.col,
                    })
                }
            }
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            other => Err(ParseError::UnexpectedToken {
                expected: "a term".to_string(),
                found: other.describe(),
                line: s.line,
                col: s.col,
            }),
        }
    }

    fn ty(&mut self) -> Result<Type, ParseError> {
        let s = self.next("a type")?;
        let head = match s.tok {
            Tok::Ident(ref x) if x == "B" => Type::Bool,
            Tok::Ident(ref x) if x == "N" => Type::Name,
            Tok::LParen => {
                let t = self.ty()?;
                self.expect(Tok::RParen, "')'")?;
                t
            }
            other => {
                return Err(ParseError::UnexpectedToken {
                    expected: "a type ('B', 'N', or parenthesized)".to_string(),
                    found: other.describe(),
                    line: s.line,
                    col: s.col,
                })
            }
        };
        if let Some(s) = self.peek() {
            if s.tok == Tok::Arrow {
                self.pos += 1;
                let cod = self.ty()?;
                return Ok(Type::arrow(head, cod));
            }
        }
        Ok(head)
    }
}

fn parse_with(src: &str, allow_hole: bool) -> Result<Term, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        allow_hole,
    };
    let t = p.term()?;
    if let Some(s) = p.peek() {
        return Err(ParseError::UnexpectedToken {
            expected: "end of input".to_string(),
            found: s.tok.describe(),
            line: s.line,
            col: s.col,
        });
    }
    Ok(rename_apart(&t))
}

/// Parses a program. The hole token `@` is rejected.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_with(src, false)
}

/// Parses a program context, in which `@` marks the hole.
pub fn parse_context(src: &str) -> Result<Term, ParseError> {
    parse_with(src, true)
}

/// Parses a type in isolation (used by drivers and tests).
pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        allow_hole: false,
    };
    let t = p.ty()?;
    if let Some(s) = p.peek() {
        return Err(ParseError::UnexpectedToken {
            expected: "end of input".to_string(),
            found: s.tok.describe(),
            line: s.line,
            col: s.col,
        });
    }
    Ok(t)
}

/// Renames binders so that all binders in the term are pairwise distinct
/// and distinct from every free variable. A binder keeps its surface name
/// when that name is not already taken; otherwise it becomes `name_k` for
/// the smallest k avoiding every identifier seen so far.
pub fn rename_apart(t: &Term) -> Term {
    fn freshen(base: &str, used: &mut Vec<Ident>) -> Ident {
        let mut k = 1usize;
        loop {
            let cand = format!("{base}_{k}");
            if !used.contains(&cand) {
                used.push(cand.clone());
                return cand;
            }
            k += 1;
        }
    }
    fn walk(t: &Term, scope: &mut Vec<(Ident, Ident)>, used: &mut Vec<Ident>) -> Term {
        match t {
            Term::Var(x) => {
                for (from, to) in scope.iter().rev() {
                    if from == x {
                        return Term::Var(to.clone());
                    }
                }
                Term::Var(x.clone())
            }
            Term::NameLit(n) => Term::NameLit(*n),
            Term::True => Term::True,
            Term::False => Term::False,
            Term::Eq(l, r) => Term::eq(walk(l, scope, used), walk(r, scope, used)),
            Term::App(f, a) => Term::app(walk(f, scope, used), walk(a, scope, used)),
            Term::If(c, t1, t2) => Term::ite(
                walk(c, scope, used),
                walk(t1, scope, used),
                walk(t2, scope, used),
            ),
            Term::Lam(x, ty, b) => {
                let nx = if used.iter().any(|u| u == x) {
                    freshen(x, used)
                } else {
                    used.push(x.clone());
                    x.clone()
                };
                scope.push((x.clone(), nx.clone()));
                let body = walk(b, scope, used);
                scope.pop();
                Term::Lam(nx, ty.clone(), Box::new(body))
            }
            Term::Nu(x, b) => {
                let nx = if used.iter().any(|u| u == x) {
                    freshen(x, used)
                } else {
                    used.push(x.clone());
                    x.clone()
                };
                scope.push((x.clone(), nx.clone()));
                let body = walk(b, scope, used);
                scope.pop();
                Term::Nu(nx, Box::new(body))
            }
        }
    }
    let mut used = t.free_vars();
    walk(t, &mut Vec::new(), &mut used)
}
