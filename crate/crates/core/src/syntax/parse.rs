//! Recursive-descent parser for the concrete syntax.
//!
//! ```text
//! formula  ::= iff
//! iff      ::= imp ( "<->" imp )*              left associative
//! imp      ::= or ( "->" imp )?                right associative
//! or       ::= and ( "|" and )*
//! and      ::= unary ( "&" unary )*
//! unary    ::= "~" unary | quant | atom | "(" formula ")"
//! quant    ::= ( "forall" | "exists" ) IDENT "." formula
//! atom     ::= ( "T" | "S" | "F" | "U" | "D" ) "(" term ")"
//!            | PRED "(" [ term ( "," term )* ] ")"
//!            | term "=" term
//! term     ::= "[" formula "]" | FUN "(" term ( "," term )* ")" | IDENT
//! ```
//!
//! A quantifier's scope extends as far right as possible. Bare identifiers in
//! term position resolve, in order, to a bound variable, a sentence constant,
//! or a constant/domain element.

use super::lexer::{tokenize, Tok};
use super::{expand_sugar, BinOp, Quantifier, Sentence, SurfaceFormula, SurfaceTerm};
use crate::error::{Error, Pos, Result};
use crate::model::Signature;

/// Parses `text` into a surface formula. Every symbol must be declared in
/// `sig`; free variables are rejected as unknown symbols.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<SurfaceFormula> {
    parse_formula_at(text, sig, Pos { line: 1, col: 1 })
}

/// Parses and expands a sentence.
pub fn parse_sentence(text: &str, sig: &Signature) -> Result<Sentence> {
    parse_formula(text, sig).map(|f| expand_sugar(&f))
}

pub(crate) fn parse_formula_at(text: &str, sig: &Signature, origin: Pos) -> Result<SurfaceFormula> {
    let toks = tokenize(text, origin)?;
    let mut p = Parser { toks, at: 0, sig, bound: Vec::new() };
    let f = p.formula()?;
    p.expect(Tok::Eof)?;
    Ok(f)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    sig: &'a Signature,
    bound: Vec<String>,
}

const SPECIAL: [&str; 5] = ["T", "S", "F", "U", "D"];

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.fail(&[&t.describe()])
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            _ => self.fail(&["an identifier"]),
        }
    }

    fn formula(&mut self) -> Result<SurfaceFormula> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::DoubleArrow) {
            let rhs = self.implication()?;
            lhs = SurfaceFormula::Binary(BinOp::Iff, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<SurfaceFormula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(SurfaceFormula::Binary(BinOp::Implies, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<SurfaceFormula> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.conjunction()?;
            lhs = SurfaceFormula::Binary(BinOp::Or, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<SurfaceFormula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = SurfaceFormula::Binary(BinOp::And, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<SurfaceFormula> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(SurfaceFormula::Not(Box::new(self.unary()?)))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(kw) if (kw == "forall" || kw == "exists") => {
                self.bump();
                let q = if kw == "forall" { Quantifier::Forall } else { Quantifier::Exists };
                let (var, pos) = self.ident()?;
                if is_reserved(&var) {
                    return Err(Error::Syntax {
                        pos,
                        expected: vec!["a variable name".into()],
                        found: format!("`{var}`"),
                    });
                }
                self.expect(Tok::Dot)?;
                self.bound.push(var.clone());
                let body = self.formula();
                self.bound.pop();
                Ok(SurfaceFormula::Quant(q, var, Box::new(body?)))
            }
            Tok::Ident(name)
                if SPECIAL.contains(&name.as_str()) && self.peek2() == &Tok::LParen =>
            {
                self.bump();
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(match name.as_str() {
                    "T" => SurfaceFormula::Truth(t),
                    "S" => SurfaceFormula::IsSentence(t),
                    "F" => SurfaceFormula::Falsity(t),
                    "U" => SurfaceFormula::Undetermined(t),
                    _ => SurfaceFormula::Determinate(t),
                })
            }
            Tok::Ident(name)
                if self.sig.predicate_arity(&name).is_some()
                    && self.peek2() == &Tok::LParen
                    && !self.is_term_head(&name) =>
            {
                let pos = self.pos();
                self.bump();
                self.bump();
                let args = self.arguments()?;
                self.check_arity(&name, self.sig.predicate_arity(&name), args.len(), pos)?;
                Ok(SurfaceFormula::Pred(name, args))
            }
            Tok::Ident(_) | Tok::LBracket => {
                let lhs = self.term()?;
                if self.peek() != &Tok::Eq {
                    return self.fail(&["`=`"]);
                }
                let pos = self.pos();
                self.bump();
                let rhs = self.term()?;
                if self.sig.predicate_arity("=").is_none() {
                    return Err(Error::UnknownSymbol { name: "=".into(), pos });
                }
                self.check_arity("=", self.sig.predicate_arity("="), 2, pos)?;
                Ok(SurfaceFormula::Pred("=".into(), vec![lhs, rhs]))
            }
            _ => self.fail(&["a formula"]),
        }
    }

    fn is_term_head(&self, name: &str) -> bool {
        self.bound.iter().any(|b| b == name) || self.sig.function_arity(name).is_some()
    }

    /// Parses the argument list after an opening parenthesis, consuming the
    /// closing one.
    fn arguments(&mut self) -> Result<Vec<SurfaceTerm>> {
        let mut args = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.eat(&Tok::RParen) {
                return Ok(args);
            }
            if !self.eat(&Tok::Comma) {
                return self.fail(&["`,`", "`)`"]);
            }
        }
    }

    fn check_arity(&self, symbol: &str, expected: Option<usize>, found: usize, pos: Pos) -> Result<()> {
        match expected {
            Some(n) if n != found => Err(Error::ArityMismatch {
                symbol: symbol.into(),
                expected: n,
                found,
                pos,
            }),
            _ => Ok(()),
        }
    }

    fn term(&mut self) -> Result<SurfaceTerm> {
        if self.eat(&Tok::LBracket) {
            let f = self.formula()?;
            self.expect(Tok::RBracket)?;
            return Ok(SurfaceTerm::Quote(Box::new(f)));
        }
        let (name, pos) = match self.peek() {
            Tok::Ident(_) => self.ident()?,
            _ => return self.fail(&["a term"]),
        };
        if self.bound.iter().any(|b| b == &name) {
            return Ok(SurfaceTerm::Var(name));
        }
        if self.peek() == &Tok::LParen {
            let Some(arity) = self.sig.function_arity(&name) else {
                return Err(Error::UnknownSymbol { name, pos });
            };
            self.bump();
            let args = self.arguments()?;
            self.check_arity(&name, Some(arity), args.len(), pos)?;
            return Ok(SurfaceTerm::App(name, args));
        }
        if self.sig.is_sentence_constant(&name) {
            Ok(SurfaceTerm::SentConst(name))
        } else if self.sig.is_constant(&name) {
            Ok(SurfaceTerm::Const(name))
        } else if self.sig.function_arity(&name).is_some() {
            self.fail(&["`(`"])
        } else {
            Err(Error::UnknownSymbol { name, pos })
        }
    }
}

pub(crate) fn is_reserved(name: &str) -> bool {
    SPECIAL.contains(&name) || name == "forall" || name == "exists"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Formula, Term};

    fn sig() -> Signature {
        let mut s = Signature::default();
        s.add_predicate("=", 2).unwrap();
        s.add_predicate("P", 1).unwrap();
        s.add_predicate("l", 0).unwrap();
        s.add_function("plus", 2).unwrap();
        s.add_constant("0").unwrap();
        s.add_constant("1").unwrap();
        s.add_constant("a").unwrap();
        s.add_sentence_constant("LL").unwrap();
        s.add_sentence_constant("L").unwrap();
        s
    }

    #[test]
    fn negated_truth_of_constant() {
        let f = parse_sentence("~T(LL)", &sig()).unwrap();
        assert_eq!(f, Formula::not(Formula::Truth(Term::SentConst("LL".into()))));
    }

    #[test]
    fn quotation_with_infix_equality() {
        let f = parse_sentence("T([~ (0=0)])", &sig()).unwrap();
        let eq = Formula::Pred("=".into(), vec![Term::Const("0".into()), Term::Const("0".into())]);
        assert_eq!(f, Formula::Truth(Term::quote(Formula::not(eq))));
    }

    #[test]
    fn undeclared_symbol() {
        match parse_formula("T(L) -> bot()", &sig()) {
            Err(Error::UnknownSymbol { name, pos }) => {
                assert_eq!(name, "bot");
                assert_eq!(pos, Pos { line: 1, col: 9 });
            }
            other => panic!("expected unknown symbol, got {other:?}"),
        }
        assert!(matches!(
            parse_formula("P(b)", &sig()),
            Err(Error::UnknownSymbol { .. })
        ));
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(
            parse_formula("P(a, a)", &sig()),
            Err(Error::ArityMismatch { expected: 1, found: 2, .. })
        ));
        assert!(matches!(
            parse_formula("plus(a) = a", &sig()),
            Err(Error::ArityMismatch { expected: 2, found: 1, .. })
        ));
        assert!(parse_formula("l()", &sig()).is_ok());
    }

    #[test]
    fn precedence_and_associativity() {
        let s = sig();
        let t = |n: &str| Formula::Truth(Term::SentConst(n.into()));
        let f = parse_sentence("~T(L) & T(LL) | T(L) -> T(LL) -> T(L) <-> T(LL)", &s).unwrap();
        let expected = Formula::iff(
            Formula::implies(
                Formula::or(Formula::and(Formula::not(t("L")), t("LL")), t("L")),
                Formula::implies(t("LL"), t("L")),
            ),
            t("LL"),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn quantifier_scope_extends_right() {
        let f = parse_sentence("forall x. P(x) & T(x)", &sig()).unwrap();
        let x = || Term::Var("x".into());
        assert_eq!(
            f,
            Formula::quant(
                Quantifier::Forall,
                "x",
                Formula::and(Formula::Pred("P".into(), vec![x()]), Formula::Truth(x()))
            )
        );
        // bound variables shadow constants
        let g = parse_sentence("exists a. P(a)", &sig()).unwrap();
        assert_eq!(
            g,
            Formula::quant(
                Quantifier::Exists,
                "a",
                Formula::Pred("P".into(), vec![Term::Var("a".into())])
            )
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_formula("T(L) &", &sig()) {
            Err(Error::Syntax { pos, found, .. }) => {
                assert_eq!(pos.col, 7);
                assert_eq!(found, "end of input");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("(T(L)", &sig()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("forall T. P(a)", &sig()), Err(Error::Syntax { .. })));
    }
}
