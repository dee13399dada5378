//! Abstract syntax of the truth language: terms, formulas, the surface forms
//! that still carry the `F`/`U`/`D` abbreviations, and the purely syntactic
//! operations on them (free variables, closed substitution, sugar expansion).
//!
//! The concrete grammar lives in [`parse`]; [`print`] is its inverse.

mod lexer;
pub mod parse;
pub mod print;

use std::collections::BTreeSet;

pub use parse::{parse_formula, parse_sentence};

/// Binary connectives, in increasing binding strength order of the grammar:
/// `<->` binds weakest, `&` strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::And, BinOp::Or, BinOp::Implies, BinOp::Iff];

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Implies => "->",
            BinOp::Iff => "<->",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    /// Name of a base-domain element: either a declared constant or the
    /// element's own name.
    Const(String),
    App(String, Vec<Term>),
    /// A sentence constant; denotes the sentence it is bound to in the theory.
    SentConst(String),
    /// Quotation `[φ]`, the name of the sentence φ.
    Quote(Box<Formula>),
    /// Name of the negation of whatever sentence the inner term names. Only
    /// produced by sugar expansion; always sits directly under `T`.
    NegName(Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Pred(String, Vec<Term>),
    /// `T(t)`: t names a true sentence.
    Truth(Term),
    /// `S(t)`: t names a sentence.
    IsSentence(Term),
    Not(Box<Formula>),
    Binary(BinOp, Box<Formula>, Box<Formula>),
    Quant(Quantifier, String, Box<Formula>),
}

/// A closed [`Formula`]. Structural equality is sentence identity.
pub type Sentence = Formula;

impl Term {
    /// Name of the negation of the sentence named by `t`. Quotations are
    /// simplified eagerly: `neg_name([φ]) = [~φ]`.
    pub fn neg_name(t: Term) -> Term {
        match t {
            Term::Quote(f) => Term::Quote(Box::new(Formula::Not(f))),
            other => Term::NegName(Box::new(other)),
        }
    }

    pub fn quote(f: Formula) -> Term {
        Term::Quote(Box::new(f))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Const(_) | Term::SentConst(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_free(bound, out)),
            Term::Quote(f) => f.collect_free(bound, out),
            Term::NegName(t) => t.collect_free(bound, out),
        }
    }

    /// Replaces free occurrences of `var` by the closed term `by`, looking
    /// inside quotations too.
    pub fn substitute(&self, var: &str, by: &Term) -> Term {
        match self {
            Term::Var(x) if x == var => by.clone(),
            Term::Var(_) | Term::Const(_) | Term::SentConst(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute(var, by)).collect())
            }
            Term::Quote(f) => Term::quote(f.substitute(var, by)),
            Term::NegName(t) => Term::neg_name(t.substitute(var, by)),
        }
    }
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn binary(op: BinOp, a: Formula, b: Formula) -> Formula {
        Formula::Binary(op, Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::binary(BinOp::And, a, b)
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::binary(BinOp::Or, a, b)
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::binary(BinOp::Implies, a, b)
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::binary(BinOp::Iff, a, b)
    }

    pub fn quant(q: Quantifier, var: impl Into<String>, body: Formula) -> Formula {
        Formula::Quant(q, var.into(), Box::new(body))
    }

    /// `F(t)`, i.e. `T(¬t)`: t names a sentence false in the primary semantics.
    pub fn falsity(t: Term) -> Formula {
        Formula::Truth(Term::neg_name(t))
    }

    /// `U(t)`: `¬T(t) ∧ ¬F(t)`.
    pub fn undetermined(t: Term) -> Formula {
        Formula::and(
            Formula::not(Formula::Truth(t.clone())),
            Formula::not(Formula::falsity(t)),
        )
    }

    /// `D(t)`: `T(t) ∨ F(t)`.
    pub fn determinate(t: Term) -> Formula {
        Formula::or(Formula::Truth(t.clone()), Formula::falsity(t))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|a| a.collect_free(bound, out)),
            Formula::Truth(t) | Formula::IsSentence(t) => t.collect_free(bound, out),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Binary(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant(_, x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Capture-free substitution of a closed term for the free occurrences
    /// of `var`. Occurrences inside quotations count as free.
    pub fn substitute(&self, var: &str, by: &Term) -> Formula {
        debug_assert!(by.is_closed(), "only closed terms are substituted");
        match self {
            Formula::Pred(p, args) => {
                Formula::Pred(p.clone(), args.iter().map(|a| a.substitute(var, by)).collect())
            }
            Formula::Truth(t) => Formula::Truth(t.substitute(var, by)),
            Formula::IsSentence(t) => Formula::IsSentence(t.substitute(var, by)),
            Formula::Not(f) => Formula::not(f.substitute(var, by)),
            Formula::Binary(op, a, b) => {
                Formula::binary(*op, a.substitute(var, by), b.substitute(var, by))
            }
            Formula::Quant(_, x, _) if x == var => self.clone(),
            Formula::Quant(q, x, body) => Formula::quant(*q, x.clone(), body.substitute(var, by)),
        }
    }

    /// Number of connectives and quantifiers above the atoms, ignoring
    /// anything inside terms. Strictly decreases along every non-`T` edge of
    /// the dependency graph.
    pub fn logical_depth(&self) -> usize {
        match self {
            Formula::Pred(..) | Formula::Truth(_) | Formula::IsSentence(_) => 0,
            Formula::Not(f) => 1 + f.logical_depth(),
            Formula::Binary(_, a, b) => 1 + a.logical_depth().max(b.logical_depth()),
            Formula::Quant(_, _, body) => 1 + body.logical_depth(),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Pred(..) | Formula::Truth(_) | Formula::IsSentence(_))
    }
}

/// Terms as written, before sugar expansion. Quotations hold surface formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceTerm {
    Var(String),
    Const(String),
    App(String, Vec<SurfaceTerm>),
    SentConst(String),
    Quote(Box<SurfaceFormula>),
}

/// Formulas as written. Adds the abbreviations `F(t)`, `U(t)` and `D(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceFormula {
    Pred(String, Vec<SurfaceTerm>),
    Truth(SurfaceTerm),
    IsSentence(SurfaceTerm),
    Falsity(SurfaceTerm),
    Undetermined(SurfaceTerm),
    Determinate(SurfaceTerm),
    Not(Box<SurfaceFormula>),
    Binary(BinOp, Box<SurfaceFormula>, Box<SurfaceFormula>),
    Quant(Quantifier, String, Box<SurfaceFormula>),
}

impl SurfaceTerm {
    pub fn expand(&self) -> Term {
        match self {
            SurfaceTerm::Var(x) => Term::Var(x.clone()),
            SurfaceTerm::Const(c) => Term::Const(c.clone()),
            SurfaceTerm::App(f, args) => {
                Term::App(f.clone(), args.iter().map(SurfaceTerm::expand).collect())
            }
            SurfaceTerm::SentConst(c) => Term::SentConst(c.clone()),
            SurfaceTerm::Quote(f) => Term::quote(expand_sugar(f)),
        }
    }
}

/// Rewrites `F`, `U` and `D` atoms into `T` atoms over negation names.
pub fn expand_sugar(f: &SurfaceFormula) -> Formula {
    match f {
        SurfaceFormula::Pred(p, args) => {
            Formula::Pred(p.clone(), args.iter().map(SurfaceTerm::expand).collect())
        }
        SurfaceFormula::Truth(t) => Formula::Truth(t.expand()),
        SurfaceFormula::IsSentence(t) => Formula::IsSentence(t.expand()),
        SurfaceFormula::Falsity(t) => Formula::falsity(t.expand()),
        SurfaceFormula::Undetermined(t) => Formula::undetermined(t.expand()),
        SurfaceFormula::Determinate(t) => Formula::determinate(t.expand()),
        SurfaceFormula::Not(g) => Formula::not(expand_sugar(g)),
        SurfaceFormula::Binary(op, a, b) => Formula::binary(*op, expand_sugar(a), expand_sugar(b)),
        SurfaceFormula::Quant(q, x, body) => Formula::quant(*q, x.clone(), expand_sugar(body)),
    }
}

impl From<&Formula> for SurfaceFormula {
    /// Embeds a core formula. `T(¬t)` over a non-quotation becomes `F(t)`.
    fn from(f: &Formula) -> Self {
        match f {
            Formula::Pred(p, args) => {
                SurfaceFormula::Pred(p.clone(), args.iter().map(SurfaceTerm::from).collect())
            }
            Formula::Truth(Term::NegName(t)) => SurfaceFormula::Falsity(SurfaceTerm::from(&**t)),
            Formula::Truth(t) => SurfaceFormula::Truth(t.into()),
            Formula::IsSentence(t) => SurfaceFormula::IsSentence(t.into()),
            Formula::Not(g) => SurfaceFormula::Not(Box::new((&**g).into())),
            Formula::Binary(op, a, b) => {
                SurfaceFormula::Binary(*op, Box::new((&**a).into()), Box::new((&**b).into()))
            }
            Formula::Quant(q, x, body) => {
                SurfaceFormula::Quant(*q, x.clone(), Box::new((&**body).into()))
            }
        }
    }
}

impl From<&Term> for SurfaceTerm {
    fn from(t: &Term) -> Self {
        match t {
            Term::Var(x) => SurfaceTerm::Var(x.clone()),
            Term::Const(c) => SurfaceTerm::Const(c.clone()),
            Term::App(f, args) => SurfaceTerm::App(f.clone(), args.iter().map(Into::into).collect()),
            Term::SentConst(c) => SurfaceTerm::SentConst(c.clone()),
            Term::Quote(f) => SurfaceTerm::Quote(Box::new((&**f).into())),
            // A negation name anywhere but directly under T has no surface
            // form; sugar expansion never produces one.
            Term::NegName(inner) => SurfaceTerm::from(&**inner),
        }
    }
}
