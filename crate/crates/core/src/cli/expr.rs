//! Tangle expressions: `NAME(args)` for zoo constructors and
//! `compose(outer, inner_1, ..., inner_r)`, which substitutes `inner_i`
//! into box `i` of `outer`; `_` leaves a box alone.

use std::fmt;

use thiserror::Error;

use crate::tangle::{Colour, PlanarTangle, TangleError};
use crate::zoo;

/// Allowed argument counts per constructor.
const CONSTRUCTORS: &[(&str, &[usize])] = &[
    ("ER", &[2]),
    ("I", &[1, 2]),
    ("IZeroMinus", &[0]),
    ("EL", &[1]),
    ("Unit", &[1]),
    ("E", &[1]),
    ("TR", &[1]),
    ("TRL", &[1]),
    ("C", &[1]),
    ("R", &[1]),
    ("M", &[1, 3]),
    ("T", &[2]),
    ("W", &[2]),
    ("Wstar", &[2, 3]),
    ("SH", &[1, 2]),
    ("Q", &[1, 2]),
    ("Qstar", &[1, 2]),
    ("K", &[2]),
    ("Kstar", &[2]),
    ("L", &[2]),
    ("Zgen", &[1]),
    ("ZgenRecover", &[2]),
    ("AnnularCapRight", &[2]),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: unknown constructor `{name}`")]
    UnknownConstructor { pos: Pos, name: String },
    #[error("{pos}: `{name}` takes {expected} arguments, got {found}")]
    Arity { pos: Pos, name: String, expected: String, found: usize },
    #[error("{pos}: bad parameters for `{name}`: {msg}")]
    Parameter { pos: Pos, name: String, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TangleExpression {
    Constructor { name: String, args: Vec<Colour>, pos: Pos },
    Compose { outer: Box<TangleExpression>, inner: Vec<Option<TangleExpression>>, pos: Pos },
}

impl fmt::Display for TangleExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleExpression::Constructor { name, args, .. } => {
                let a: Vec<String> = args.iter().map(|c| c.to_string()).collect();
                write!(f, "{name}({})", a.join(","))
            }
            TangleExpression::Compose { outer, inner, .. } => {
                write!(f, "compose({outer}")?;
                for e in inner {
                    match e {
                        Some(e) => write!(f, ", {e}")?,
                        None => write!(f, ", _")?,
                    }
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{pos}: {source}")]
pub struct BuildError {
    pub pos: Pos,
    pub source: TangleError,
}

impl TangleExpression {
    pub fn build(&self) -> Result<PlanarTangle, BuildError> {
        match self {
            TangleExpression::Constructor { name, args, pos } => {
                zoo::build(name, args).map_err(|source| BuildError { pos: *pos, source })
            }
            TangleExpression::Compose { outer, inner, pos } => {
                let o = outer.build()?;
                let built: Vec<(usize, PlanarTangle)> = inner
                    .iter()
                    .enumerate()
                    .filter_map(|(i, e)| e.as_ref().map(|e| e.build().map(|t| (i + 1, t))))
                    .collect::<Result<_, _>>()?;
                let assign: Vec<(usize, &PlanarTangle)> = built.iter().map(|(i, t)| (*i, t)).collect();
                o.compose(&assign).map_err(|source| BuildError { pos: *pos, source })
            }
        }
    }
}

struct Parser {
    chars: Vec<char>,
    i: usize,
}

impl Parser {
    fn pos_at(&self, i: usize) -> Pos {
        let mut pos = Pos { line: 1, col: 1 };
        for &c in &self.chars[..i.min(self.chars.len())] {
            if c == '\n' {
                pos.line += 1;
                pos.col = 1;
            } else {
                pos.col += 1;
            }
        }
        pos
    }

    fn pos(&self) -> Pos {
        self.pos_at(self.i)
    }

    fn skip_ws(&mut self) {
        while self.i < self.chars.len() && self.chars[self.i].is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).copied()
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.i += 1;
                Ok(())
            }
            Some(d) => self.syntax(format!("expected `{c}`, found `{d}`")),
            None => self.syntax(format!("expected `{c}`, found end of input")),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.chars.len() && (self.chars[self.i].is_ascii_alphanumeric() || self.chars[self.i] == '_') {
            self.i += 1;
        }
        if start == self.i {
            return match self.chars.get(self.i) {
                Some(c) => self.syntax(format!("expected a name, found `{c}`")),
                None => self.syntax("expected a name, found end of input"),
            };
        }
        Ok(self.chars[start..self.i].iter().collect())
    }

    fn colour(&mut self) -> Result<Colour, ParseError> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.chars.len() && (self.chars[self.i].is_ascii_digit() || "+-".contains(self.chars[self.i])) {
            self.i += 1;
        }
        let text: String = self.chars[start..self.i].iter().collect();
        text.parse::<Colour>().map_err(|_| ParseError::Syntax {
            pos: self.pos_at(start),
            msg: if text.is_empty() { "expected a colour".into() } else { format!("bad colour `{text}`") },
        })
    }

    fn expr(&mut self) -> Result<TangleExpression, ParseError> {
        self.skip_ws();
        let pos = self.pos();
        let name = self.ident()?;
        self.expect('(')?;
        if name == "compose" {
            let outer = self.expr()?;
            let mut inner = Vec::new();
            while self.peek() == Some(',') {
                self.i += 1;
                if self.peek() == Some('_') {
                    self.i += 1;
                    inner.push(None);
                } else {
                    inner.push(Some(self.expr()?));
                }
            }
            self.expect(')')?;
            return Ok(TangleExpression::Compose { outer: Box::new(outer), inner, pos });
        }
        let arities = CONSTRUCTORS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, a)| *a)
            .ok_or_else(|| ParseError::UnknownConstructor { pos, name: name.clone() })?;
        let mut args = Vec::new();
        if self.peek() != Some(')') {
            args.push(self.colour()?);
            while self.peek() == Some(',') {
                self.i += 1;
                args.push(self.colour()?);
            }
        }
        self.expect(')')?;
        if !arities.contains(&args.len()) {
            let expected = arities.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" or ");
            return Err(ParseError::Arity { pos, name, expected, found: args.len() });
        }
        if let Err(e) = zoo::build(&name, &args) {
            return Err(ParseError::Parameter { pos, name, msg: e.to_string() });
        }
        Ok(TangleExpression::Constructor { name, args, pos })
    }
}

/// Parse one expression; whitespace (including newlines) is ignored.
pub fn parse_expression(text: &str) -> Result<TangleExpression, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), i: 0 };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(c) => p.syntax(format!("unexpected `{c}` after expression")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_and_compose() {
        let e = parse_expression("I(2,1)").unwrap();
        assert_eq!(e.build().unwrap(), zoo::inclusion(2, 1).unwrap());
        let e = parse_expression("compose(M(3,3,3), T(3,2), I(2,0))").unwrap();
        assert!(matches!(&e, TangleExpression::Compose { inner, .. } if inner.len() == 2));
        // I(2,0) has colour 2, box 2 of M(3,3,3) has colour 3.
        assert!(e.build().is_err());
        let e = parse_expression(" compose( M(3,3,3),\n _ , T(3,2) )").unwrap();
        let direct = zoo::mult(3, 3, 3).unwrap().compose(&[(2, &zoo::t(Colour::n(3), 2).unwrap())]).unwrap();
        assert_eq!(e.build().unwrap(), direct);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_expression("M(1,1,5)"), Err(ParseError::Parameter { .. })));
        match parse_expression("compose(I(2,1),\n  Foo(1))") {
            Err(ParseError::UnknownConstructor { pos, name }) => {
                assert_eq!((pos.line, pos.col, name.as_str()), (2, 3, "Foo"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression("E(1,2)"), Err(ParseError::Arity { found: 2, .. })));
        match parse_expression("I(2,1") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!((pos.line, pos.col), (1, 6)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression("I(2,1) x"), Err(ParseError::Syntax { .. })));
        assert!(parse_expression("ER(0+,1)").is_ok());
        assert!(matches!(parse_expression("T(q,1)"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn round_trip_by_code() {
        for text in ["M(2,3,3)", "compose(M(2,2,2), E(2), T(2,1))", "ER(0-,2)", "Zgen(2)"] {
            let t = parse_expression(text).unwrap().build().unwrap();
            let again = PlanarTangle::from_json_str(&t.to_json_string()).unwrap();
            assert_eq!(again.canonical_code(), t.canonical_code());
            let reparsed = parse_expression(&parse_expression(text).unwrap().to_string()).unwrap().build().unwrap();
            assert_eq!(reparsed.canonical_code(), t.canonical_code());
        }
    }
}
