use crate::error::{Error, Pos, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    Eq,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`<->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits `src` into tokens. `origin` is the position of the first character,
/// so formulas embedded in a theory file report file coordinates.
pub(crate) fn tokenize(src: &str, origin: Pos) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut line = origin.line;
    let mut col = origin.col;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if is_ident_char(c) {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !is_ident_char(d) {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        chars.next();
        col += 1;
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '~' => Tok::Tilde,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '=' => Tok::Eq,
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                col += 1;
                Tok::Arrow
            }
            '<' => {
                let ok = chars.next() == Some('-') && chars.next() == Some('>');
                col += 2;
                if !ok {
                    return Err(Error::Syntax {
                        pos,
                        expected: vec!["`<->`".into()],
                        found: "`<`".into(),
                    });
                }
                Tok::DoubleArrow
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    expected: vec!["a token".into()],
                    found: format!("`{other}`"),
                })
            }
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_and_positions() {
        let toks = tokenize("a <-> b -> ~c", Pos { line: 1, col: 1 }).unwrap();
        let kinds: Vec<_> = toks.iter().map(|(t, _)| t.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("a".into()),
                Tok::DoubleArrow,
                Tok::Ident("b".into()),
                Tok::Arrow,
                Tok::Tilde,
                Tok::Ident("c".into()),
                Tok::Eof
            ]
        );
        assert_eq!(toks[2].1, Pos { line: 1, col: 7 });
    }

    #[test]
    fn stray_character_is_reported() {
        let err = tokenize("P(a) $ Q", Pos { line: 3, col: 10 }).unwrap_err();
        match err {
            Error::Syntax { pos, .. } => assert_eq!(pos, Pos { line: 3, col: 15 }),
            e => panic!("unexpected {e:?}"),
        }
    }
}
