//! Concrete syntax.
//!
//! ```text
//! term  ::= lam | app
//! lam   ::= ("\" | "λ") ident "." term
//! app   ::= atom+                  (left-associative)
//! atom  ::= ident | "(" term ")"
//! ident ::= [A-Za-z][A-Za-z0-9_']*
//! ```

use thiserror::Error;

use super::{PreTerm, Term};
use crate::var::{Names, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Lambda,
    Dot,
    LParen,
    RParen,
    Ident(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Lambda => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), line: 1, column: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
                self.bump();
            }
            let (line, column) = (self.line, self.column);
            let Some(&c) = self.chars.peek() else {
                out.push((Tok::Eof, line, column));
                return Ok(out);
            };
            let tok = match c {
                '\\' | 'λ' => {
                    self.bump();
                    Tok::Lambda
                }
                '.' => {
                    self.bump();
                    Tok::Dot
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                c if c.is_ascii_alphabetic() => {
                    let mut s = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                            s.push(c);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(s)
                }
                other => {
                    return Err(ParseError { line, column, message: format!("unexpected character `{other}`") });
                }
            };
            out.push((tok, line, column));
        }
    }
}

struct Parser<'n> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    names: &'n mut Names,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn error(&self, message: String) -> ParseError {
        let (_, line, column) = self.toks[self.pos];
        ParseError { line, column, message }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", want.describe(), self.peek().describe())))
        }
    }

    fn ident(&mut self) -> Result<Var, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let v = self.names.intern(&s).map_err(|m| self.error(m))?;
                self.pos += 1;
                Ok(v)
            }
            other => Err(self.error(format!("expected identifier, found {}", other.describe()))),
        }
    }

    fn term(&mut self) -> Result<PreTerm, ParseError> {
        if *self.peek() == Tok::Lambda {
            self.pos += 1;
            let x = self.ident()?;
            self.expect(Tok::Dot)?;
            let body = self.term()?;
            return Ok(PreTerm::Lam(x, Box::new(body)));
        }
        let mut acc = self.atom()?;
        while matches!(self.peek(), Tok::Ident(_) | Tok::LParen) {
            let arg = self.atom()?;
            acc = PreTerm::App(Box::new(acc), Box::new(arg));
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<PreTerm, ParseError> {
        match self.peek() {
            Tok::Ident(_) => Ok(PreTerm::Var(self.ident()?)),
            Tok::LParen => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => Err(self.error(format!("expected a term, found {}", other.describe()))),
        }
    }
}

/// Parses with a fresh interning session.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_with(text, &mut Names::new())
}

/// Parses, interning identifiers into `names`.
pub fn parse_term_with(text: &str, names: &mut Names) -> Result<Term, ParseError> {
    names.reserve_from(text);
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, pos: 0, names };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(format!("unexpected {} after term", p.peek().describe())));
    }
    Ok(Term::from_pre(t))
}

/// Prints the stored representative; binders keep their names.
pub fn print_term(t: &Term, names: &Names) -> String {
    let mut out = String::new();
    write_term(t.repr(), names, &mut out);
    out
}

fn write_term(p: &PreTerm, names: &Names, out: &mut String) {
    match p {
        PreTerm::Lam(x, b) => {
            out.push('\\');
            out.push_str(&names.name(*x));
            out.push_str(". ");
            write_term(b, names, out);
        }
        PreTerm::App(f, a) => {
            match **f {
                PreTerm::Lam(..) => paren(f, names, out),
                _ => write_term(f, names, out),
            }
            out.push(' ');
            match **a {
                PreTerm::Var(_) => write_term(a, names, out),
                _ => paren(a, names, out),
            }
        }
        PreTerm::Var(v) => out.push_str(&names.name(*v)),
    }
}

fn paren(p: &PreTerm, names: &Names, out: &mut String) {
    out.push('(');
    write_term(p, names, out);
    out.push(')');
}
