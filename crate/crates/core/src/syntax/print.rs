//! Pretty-printer producing text that [`super::parse`] reads back to the same
//! tree. Parentheses are emitted only where precedence or associativity
//! requires them; quantifiers are parenthesised whenever they are an operand.

use std::fmt::{self, Display, Formatter, Write};

use super::{BinOp, Formula, Term};

const TOP: u8 = 0;
const ATOM: u8 = 5;

fn prec(op: BinOp) -> u8 {
    match op {
        BinOp::Iff => 1,
        BinOp::Implies => 2,
        BinOp::Or => 3,
        BinOp::And => 4,
    }
}

fn formula(f: &Formula, ctx: u8, out: &mut impl Write) -> fmt::Result {
    match f {
        Formula::Pred(p, args) if p == "=" && args.len() == 2 => {
            term(&args[0], out)?;
            out.write_str(" = ")?;
            term(&args[1], out)
        }
        Formula::Pred(p, args) => {
            out.write_str(p)?;
            arg_list(args, out)
        }
        Formula::Truth(Term::NegName(t)) => {
            out.write_str("F(")?;
            term(t, out)?;
            out.write_char(')')
        }
        Formula::Truth(t) => {
            out.write_str("T(")?;
            term(t, out)?;
            out.write_char(')')
        }
        Formula::IsSentence(t) => {
            out.write_str("S(")?;
            term(t, out)?;
            out.write_char(')')
        }
        Formula::Not(g) => {
            out.write_char('~')?;
            formula(g, ATOM, out)
        }
        Formula::Binary(op, a, b) => {
            let p = prec(*op);
            let (lp, rp) = match op {
                BinOp::Implies => (p + 1, p),
                _ => (p, p + 1),
            };
            let paren = ctx > p;
            if paren {
                out.write_char('(')?;
            }
            formula(a, lp, out)?;
            write!(out, " {} ", op.symbol())?;
            formula(b, rp, out)?;
            if paren {
                out.write_char(')')?;
            }
            Ok(())
        }
        Formula::Quant(q, x, body) => {
            let paren = ctx > TOP;
            if paren {
                out.write_char('(')?;
            }
            write!(out, "{} {}. ", q.keyword(), x)?;
            formula(body, TOP, out)?;
            if paren {
                out.write_char(')')?;
            }
            Ok(())
        }
    }
}

fn arg_list(args: &[Term], out: &mut impl Write) -> fmt::Result {
    out.write_char('(')?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.write_str(", ")?;
        }
        term(a, out)?;
    }
    out.write_char(')')
}

fn term(t: &Term, out: &mut impl Write) -> fmt::Result {
    match t {
        Term::Var(x) | Term::Const(x) | Term::SentConst(x) => out.write_str(x),
        Term::App(f, args) => {
            out.write_str(f)?;
            arg_list(args, out)
        }
        Term::Quote(f) => {
            out.write_char('[')?;
            formula(f, TOP, out)?;
            out.write_char(']')
        }
        // Not reachable from parsed input: negation names only occur
        // directly under T, which prints as F(..).
        Term::NegName(inner) => {
            out.write_str("neg(")?;
            term(inner, out)?;
            out.write_char(')')
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        formula(self, TOP, f)
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        term(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Quantifier;

    fn t(n: &str) -> Formula {
        Formula::Truth(Term::SentConst(n.into()))
    }

    #[test]
    fn minimal_parentheses() {
        let f = Formula::and(Formula::or(t("A"), t("B")), Formula::not(t("C")));
        assert_eq!(f.to_string(), "(T(A) | T(B)) & ~T(C)");
        let g = Formula::implies(Formula::implies(t("A"), t("B")), t("C"));
        assert_eq!(g.to_string(), "(T(A) -> T(B)) -> T(C)");
        let h = Formula::implies(t("A"), Formula::implies(t("B"), t("C")));
        assert_eq!(h.to_string(), "T(A) -> T(B) -> T(C)");
    }

    #[test]
    fn quantifiers_and_sugar() {
        let x = || Term::Var("x".into());
        let body = Formula::and(Formula::IsSentence(x()), Formula::falsity(x()));
        let q = Formula::quant(Quantifier::Exists, "x", body);
        assert_eq!(q.to_string(), "exists x. S(x) & F(x)");
        assert_eq!(Formula::not(q).to_string(), "~(exists x. S(x) & F(x))");
        let quoted = Formula::falsity(Term::quote(t("A")));
        assert_eq!(quoted.to_string(), "T([~T(A)])");
    }
}
