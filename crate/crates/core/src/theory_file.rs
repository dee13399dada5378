//! Line-oriented theory files.
//!
//! ```text
//! # comment
//! domain a b c
//! pred P/1 = { (a) (b) }
//! fun f/2 = { (a,b)->c (b,a)->c }
//! const k = a
//! let NAME := <formula>
//! ```
//!
//! One directive per line; `#` starts a comment. All `let` names are
//! declared before any formula is parsed, so bindings may refer to each
//! other in any order. The first `let` is the designated default sentence.

use std::path::Path;

use crate::error::{Error, Pos, Result};
use crate::model::{Theory, TheoryBuilder};
use crate::syntax::expand_sugar;
use crate::syntax::parse::parse_formula_at;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Punct(&'static str),
    Eol,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eol => "end of line".into(),
        }
    }
}

const PUNCT: [&str; 9] = ["->", ":=", "{", "}", "(", ")", ",", "/", "="];

struct Line<'a> {
    text: &'a str,
    line: usize,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Line<'a> {
    /// Tokenizes a directive line up to (not including) any formula text.
    fn new(text: &'a str, line: usize) -> Result<Self> {
        let mut toks = Vec::new();
        let mut i = 0;
        while i < text.len() {
            let rest = &text[i..];
            let c = rest.chars().next().unwrap();
            if c.is_whitespace() {
                i += c.len_utf8();
            } else if is_ident_char(c) {
                let len = rest.find(|d: char| !is_ident_char(d)).unwrap_or(rest.len());
                toks.push((Tok::Ident(rest[..len].to_string()), i));
                i += len;
            } else if let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) {
                toks.push((Tok::Punct(p), i));
                i += p.len();
                if *p == ":=" {
                    break;
                }
            } else {
                return Err(Error::Syntax {
                    pos: Pos { line, col: char_col(text, i) },
                    expected: vec!["a directive token".into()],
                    found: format!("`{c}`"),
                });
            }
        }
        let end = match toks.last() {
            Some((Tok::Punct(":="), at)) => at + 2,
            _ => text.len(),
        };
        toks.push((Tok::Eol, end));
        Ok(Line { text, line, toks, at: 0 })
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: char_col(self.text, self.toks[self.at].1) }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn err(&self, expected: &str) -> Error {
        Error::Syntax { pos: self.pos(), expected: vec![expected.into()], found: self.peek().describe() }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.at += 1;
                Ok((s, pos))
            }
            _ => Err(self.err("identifier")),
        }
    }

    fn eat(&mut self, p: &str) -> bool {
        if matches!(self.peek(), Tok::Punct(q) if *q == p) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> Result<()> {
        if self.eat(p) {
            Ok(())
        } else {
            Err(self.err(&format!("`{p}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let pos = self.pos();
        let (s, _) = self.ident()?;
        s.parse().map_err(|_| Error::Syntax {
            pos,
            expected: vec!["an arity".into()],
            found: format!("`{s}`"),
        })
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Eol => Ok(()),
            _ => Err(self.err("end of line")),
        }
    }

    /// `( a, b, ... )`
    fn tuple(&mut self) -> Result<Vec<String>> {
        self.expect("(")?;
        let mut out = Vec::new();
        if self.eat(")") {
            return Ok(out);
        }
        loop {
            out.push(self.ident()?.0);
            if self.eat(")") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    /// Byte offset of the formula text after `:=`.
    fn rest_offset(&self) -> usize {
        self.toks.last().map(|(_, at)| *at).unwrap_or(self.text.len())
    }
}

fn char_col(text: &str, byte: usize) -> usize {
    text[..byte.min(text.len())].chars().count() + 1
}

fn at(pos: Pos, err: Error) -> Error {
    match err {
        e @ (Error::Syntax { .. } | Error::UnknownSymbol { .. } | Error::ArityMismatch { .. }) => e,
        e => Error::At { pos, err: Box::new(e) },
    }
}

struct PendingLet {
    name: String,
    pos: Pos,
    text: String,
    origin: Pos,
}

/// Parses theory file text.
pub fn parse_theory(src: &str) -> Result<Theory> {
    let mut b = TheoryBuilder::new();
    let mut lets = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let text = raw.find('#').map_or(raw, |k| &raw[..k]);
        if text.trim().is_empty() {
            continue;
        }
        let mut l = Line::new(text, line_no)?;
        let (kw, kw_pos) = l.ident()?;
        match kw.as_str() {
            "domain" => {
                while let Tok::Ident(_) = l.peek() {
                    let (e, pos) = l.ident()?;
                    b.domain_element(&e).map_err(|err| at(pos, err))?;
                }
                l.end()?;
            }
            "pred" => {
                let pos = l.pos();
                let name = if l.eat("=") { "=".to_string() } else { l.ident()?.0 };
                l.expect("/")?;
                let arity = l.number()?;
                let tuples = if l.eat("=") {
                    l.expect("{")?;
                    let mut tuples = Vec::new();
                    while !l.eat("}") {
                        tuples.push(l.tuple()?);
                    }
                    tuples
                } else {
                    Vec::new()
                };
                l.end()?;
                b.predicate(&name, arity, tuples).map_err(|err| at(pos, err))?;
            }
            "fun" => {
                let (name, pos) = l.ident()?;
                l.expect("/")?;
                let arity = l.number()?;
                l.expect("=")?;
                l.expect("{")?;
                let mut table = Vec::new();
                while !l.eat("}") {
                    let args = l.tuple()?;
                    l.expect("->")?;
                    table.push((args, l.ident()?.0));
                }
                l.end()?;
                b.function(&name, arity, table).map_err(|err| at(pos, err))?;
            }
            "const" => {
                let (name, pos) = l.ident()?;
                l.expect("=")?;
                let (elem, _) = l.ident()?;
                l.end()?;
                b.constant(&name, &elem).map_err(|err| at(pos, err))?;
            }
            "let" => {
                let (name, pos) = l.ident()?;
                l.expect(":=")?;
                b.sentence_constant(&name).map_err(|err| at(pos, err))?;
                let off = l.rest_offset();
                lets.push(PendingLet {
                    name,
                    pos,
                    text: text[off..].to_string(),
                    origin: Pos { line: line_no, col: char_col(text, off) },
                });
            }
            _ => {
                return Err(Error::Syntax {
                    pos: kw_pos,
                    expected: vec!["`domain`, `pred`, `fun`, `const` or `let`".into()],
                    found: format!("`{kw}`"),
                })
            }
        }
    }
    for l in lets {
        let f = parse_formula_at(&l.text, b.signature(), l.origin)?;
        b.bind(&l.name, expand_sugar(&f)).map_err(|err| at(l.pos, err))?;
    }
    b.build()
}

/// Reads and parses a theory file. Errors are prefixed with the path.
pub fn load_theory(path: impl AsRef<Path>) -> Result<Theory> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|source| Error::Io { path: shown.clone(), source })?;
    parse_theory(&src).map_err(|err| Error::InFile { path: shown, err: Box::new(err) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Formula, Term};

    #[test]
    fn full_format() {
        let th = parse_theory(
            "# numbers\n\
             domain 0 1 2\n\
             pred =/2 = { (0,0) (1,1) (2,2) }\n\
             pred l/0 = {}\n\
             pred Z/1\n\
             fun s/1 = { (0)->1 (1)->2 (2)->2 }\n\
             const one = 1   # trailing comment\n\
             let A := T(B) & s(0) = one\n\
             let B := ~T(A)\n",
        )
        .unwrap();
        assert_eq!(th.domain(), ["0", "1", "2"]);
        assert_eq!(th.bindings().map(|(n, _)| n).collect::<Vec<_>>(), ["A", "B"]);
        assert_eq!(th.binding("A").unwrap().to_string(), "T(B) & s(0) = one");
        assert_eq!(th.default_sentence(), th.binding("A").unwrap());
        assert_eq!(th.constant_value("one"), Some("1"));
    }

    #[test]
    fn strong_liar_binding() {
        let th = parse_theory("let LL := ~T(LL)").unwrap();
        assert_eq!(
            th.binding("LL").unwrap(),
            &Formula::not(Formula::Truth(Term::SentConst("LL".into())))
        );
    }

    #[test]
    fn reserved_and_duplicate_names() {
        let e = parse_theory("pred T/1").unwrap_err();
        assert!(matches!(e, Error::At { pos: Pos { line: 1, col: 6 }, ref err } if matches!(**err, Error::Reserved(_))));
        let e = parse_theory("domain a\nlet a := l()").unwrap_err();
        assert!(matches!(e, Error::At { pos: Pos { line: 2, col: 5 }, ref err } if matches!(**err, Error::DuplicateDeclaration(_))));
    }

    #[test]
    fn formula_errors_carry_file_positions() {
        let e = parse_theory("pred l/0\n\nlet C :=  T(C) -> bot()").unwrap_err();
        match e {
            Error::UnknownSymbol { name, pos } => {
                assert_eq!(name, "bot");
                assert_eq!(pos, Pos { line: 3, col: 19 });
            }
            other => panic!("{other:?}"),
        }
        let e = parse_theory("domain a\nconst k = ").unwrap_err();
        assert!(matches!(e, Error::Syntax { pos: Pos { line: 2, col: 11 }, .. }), "{e:?}");
        let e = parse_theory("domain a\nfrobnicate").unwrap_err();
        assert!(matches!(e, Error::Syntax { pos: Pos { line: 2, col: 1 }, .. }));
    }

    #[test]
    fn invalid_contents() {
        assert!(matches!(parse_theory("domain a\npred P/1 = { (b) }"), Err(Error::InvalidTheory(_))));
        assert!(matches!(parse_theory("domain a\nfun f/1 = { }"), Err(Error::InvalidTheory(_))));
        assert!(parse_theory("pred P/x").is_err());
    }

    #[test]
    fn missing_file() {
        assert!(matches!(load_theory("/nonexistent/x.th"), Err(Error::Io { .. })));
    }
}
