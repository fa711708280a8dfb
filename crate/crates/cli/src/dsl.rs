//! Parser for construction expressions such as `join(T(2,3),prism(simplex(2),3))`.

use ehrhart_core::ConstructionExpr as E;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of expression")]
    Eof,
    #[error("unexpected '{found}' at position {pos}")]
    Unexpected { found: char, pos: usize },
    #[error("unknown construction '{0}'")]
    UnknownName(String),
    #[error("{name} takes {expected}")]
    Arity { name: String, expected: &'static str },
    #[error("number out of range at position {0}")]
    Number(usize),
    #[error("trailing input at position {0}")]
    Trailing(usize),
}

#[derive(Debug)]
enum Arg {
    Num(u64),
    Expr(E),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(ParseError::Unexpected { found: x as char, pos: self.pos }),
            None => Err(ParseError::Eof),
        }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && pred(self.src[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice")
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let pos = self.pos;
                let digits = self.take_while(|c| c.is_ascii_digit());
                digits.parse().map(Arg::Num).map_err(|_| ParseError::Number(pos))
            }
            _ => self.expr().map(Arg::Expr),
        }
    }

    fn expr(&mut self) -> Result<E, ParseError> {
        let pos = match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => self.pos,
            Some(c) => return Err(ParseError::Unexpected { found: c as char, pos: self.pos }),
            None => return Err(ParseError::Eof),
        };
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
        debug_assert!(!name.is_empty(), "identifier at {pos}");
        self.expect(b'(')?;
        let mut args = vec![self.arg()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            args.push(self.arg()?);
        }
        self.expect(b')')?;
        build(name, args)
    }
}

fn build(name: &str, args: Vec<Arg>) -> Result<E, ParseError> {
    let arity = |expected| ParseError::Arity { name: name.to_string(), expected };
    let dim = |n: u64| usize::try_from(n).map_err(|_| ParseError::Number(0));
    let mut it = args.into_iter();
    let (a, b) = (it.next(), it.next());
    if it.next().is_some() {
        return Err(arity("at most two arguments"));
    }
    use Arg::{Expr, Num};
    Ok(match (name, a, b) {
        ("T", Some(Num(m)), Some(Num(d))) => E::T { m, d: dim(d)? },
        ("S", Some(Num(m)), Some(Num(d))) => E::S { m, d: dim(d)? },
        ("crossodd", Some(Num(l)), Some(Num(d))) => E::CrossOdd { l, d: dim(d)? },
        ("box", Some(Num(l)), Some(Num(d))) => E::Box { l, d: dim(d)? },
        ("T" | "S", ..) => return Err(arity("(m, d)")),
        ("crossodd" | "box", ..) => return Err(arity("(l, d)")),
        ("simplex", Some(Num(d)), None) => E::StdSimplex(dim(d)?),
        ("unitcube", Some(Num(d)), None) => E::UnitCube(dim(d)?),
        ("symcube", Some(Num(d)), None) => E::SymCube(dim(d)?),
        ("cross", Some(Num(d)), None) => E::CrossPolytope(dim(d)?),
        ("simplex" | "unitcube" | "symcube" | "cross", ..) => return Err(arity("(d)")),
        ("join", Some(Expr(p)), Some(Expr(q))) => E::join(p, q),
        ("join", ..) => return Err(arity("two expressions")),
        ("prism", Some(Expr(p)), Some(Num(m))) => E::prism(p, m),
        ("prism", ..) => return Err(arity("(expression, m)")),
        ("dilate", Some(Expr(p)), Some(Num(k))) => E::dilate(p, k),
        ("dilate", ..) => return Err(arity("(expression, k)")),
        ("pyr", Some(Expr(p)), None) => E::pyramid(p),
        ("pyr", ..) => return Err(arity("one expression")),
        _ => return Err(ParseError::UnknownName(name.to_string())),
    })
}

pub fn parse(src: &str) -> Result<E, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(_) => Err(ParseError::Trailing(p.pos)),
    }
}
