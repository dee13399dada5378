//! Finite interpreted theories and term denotation.
//!
//! The interpreted domain is the base domain together with sentences. Base
//! predicates are false whenever an argument is a sentence; base functions
//! applied to a sentence return a fixed default sentence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::parse::is_reserved;
use crate::syntax::{Formula, Quantifier, Sentence, Term};

/// Declared non-logical vocabulary. Names are unique across all kinds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    predicates: BTreeMap<String, usize>,
    functions: BTreeMap<String, usize>,
    constants: BTreeSet<String>,
    sentence_constants: Vec<String>,
}

impl Signature {
    fn claim(&self, name: &str) -> Result<()> {
        if is_reserved(name) {
            return Err(Error::Reserved(name.into()));
        }
        if self.predicates.contains_key(name)
            || self.functions.contains_key(name)
            || self.constants.contains(name)
            || self.sentence_constants.iter().any(|c| c == name)
        {
            return Err(Error::DuplicateDeclaration(name.into()));
        }
        Ok(())
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<()> {
        self.claim(name)?;
        self.predicates.insert(name.into(), arity);
        Ok(())
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<()> {
        self.claim(name)?;
        if arity == 0 {
            return Err(Error::InvalidTheory(format!(
                "function `{name}` must take at least one argument; use a constant"
            )));
        }
        self.functions.insert(name.into(), arity);
        Ok(())
    }

    pub fn add_constant(&mut self, name: &str) -> Result<()> {
        self.claim(name)?;
        self.constants.insert(name.into());
        Ok(())
    }

    pub fn add_sentence_constant(&mut self, name: &str) -> Result<()> {
        self.claim(name)?;
        self.sentence_constants.push(name.into());
        Ok(())
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    pub fn is_sentence_constant(&self, name: &str) -> bool {
        self.sentence_constants.iter().any(|c| c == name)
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.constants.iter().map(String::as_str)
    }

    /// Sentence constants in declaration order.
    pub fn sentence_constants(&self) -> &[String] {
        &self.sentence_constants
    }
}

/// An element of the interpreted domain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DomainElement {
    Base(String),
    Sent(Sentence),
}

impl DomainElement {
    /// The closed term that names this element.
    pub fn name(&self) -> Term {
        match self {
            DomainElement::Base(a) => Term::Const(a.clone()),
            DomainElement::Sent(s) => Term::quote(s.clone()),
        }
    }
}

impl fmt::Display for DomainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainElement::Base(a) => f.write_str(a),
            DomainElement::Sent(s) => write!(f, "[{s}]"),
        }
    }
}

/// A finite interpreted theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    signature: Signature,
    domain: Vec<String>,
    predicates: BTreeMap<String, BTreeSet<Vec<String>>>,
    functions: BTreeMap<String, BTreeMap<Vec<String>, String>>,
    /// Declared constants; domain elements name themselves and are not listed.
    constants: BTreeMap<String, String>,
    bindings: BTreeMap<String, Sentence>,
    default_sentence: Sentence,
}

/// Sentence denoted by a base function applied to a sentence when the theory
/// has no sentence constants: `S([forall x. S(x) -> S(x)])`.
pub fn placeholder_sentence() -> Sentence {
    let x = || Term::Var("x".into());
    let body = Formula::implies(Formula::IsSentence(x()), Formula::IsSentence(x()));
    Formula::IsSentence(Term::quote(Formula::quant(Quantifier::Forall, "x", body)))
}

/// Incrementally assembles a [`Theory`]; [`TheoryBuilder::build`] validates it.
#[derive(Clone, Debug, Default)]
pub struct TheoryBuilder {
    signature: Signature,
    domain: Vec<String>,
    predicates: BTreeMap<String, BTreeSet<Vec<String>>>,
    functions: BTreeMap<String, BTreeMap<Vec<String>, String>>,
    constants: BTreeMap<String, String>,
    bindings: BTreeMap<String, Sentence>,
}

impl TheoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn domain_element(&mut self, name: &str) -> Result<&mut Self> {
        self.signature.add_constant(name)?;
        self.domain.push(name.into());
        Ok(self)
    }

    pub fn predicate(&mut self, name: &str, arity: usize, tuples: Vec<Vec<String>>) -> Result<&mut Self> {
        self.signature.add_predicate(name, arity)?;
        let mut set = BTreeSet::new();
        for tuple in tuples {
            if tuple.len() != arity {
                return Err(Error::InvalidTheory(format!(
                    "tuple ({}) of `{name}` has {} element(s), expected {arity}",
                    tuple.join(","),
                    tuple.len()
                )));
            }
            set.insert(tuple);
        }
        self.predicates.insert(name.into(), set);
        Ok(self)
    }

    pub fn function(
        &mut self,
        name: &str,
        arity: usize,
        table: Vec<(Vec<String>, String)>,
    ) -> Result<&mut Self> {
        self.signature.add_function(name, arity)?;
        let mut map = BTreeMap::new();
        for (args, value) in table {
            if args.len() != arity {
                return Err(Error::InvalidTheory(format!(
                    "entry ({}) of `{name}` has {} argument(s), expected {arity}",
                    args.join(","),
                    args.len()
                )));
            }
            if map.insert(args.clone(), value).is_some() {
                return Err(Error::InvalidTheory(format!(
                    "`{name}` is defined twice on ({})",
                    args.join(",")
                )));
            }
        }
        self.functions.insert(name.into(), map);
        Ok(self)
    }

    pub fn constant(&mut self, name: &str, element: &str) -> Result<&mut Self> {
        self.signature.add_constant(name)?;
        self.constants.insert(name.into(), element.into());
        Ok(self)
    }

    /// Declares a sentence constant. Its binding is supplied separately with
    /// [`TheoryBuilder::bind`], so bindings may refer to each other.
    pub fn sentence_constant(&mut self, name: &str) -> Result<&mut Self> {
        self.signature.add_sentence_constant(name)?;
        Ok(self)
    }

    pub fn bind(&mut self, name: &str, sentence: Sentence) -> Result<&mut Self> {
        if !self.signature.is_sentence_constant(name) {
            return Err(Error::UnboundConstant(name.into()));
        }
        if self.bindings.insert(name.into(), sentence).is_some() {
            return Err(Error::DuplicateDeclaration(name.into()));
        }
        Ok(self)
    }

    pub fn build(self) -> Result<Theory> {
        let in_domain = |e: &String| self.domain.contains(e);
        for (p, tuples) in &self.predicates {
            for tuple in tuples {
                if let Some(bad) = tuple.iter().find(|e| !in_domain(e)) {
                    return Err(Error::InvalidTheory(format!(
                        "`{p}` mentions `{bad}`, which is not a domain element"
                    )));
                }
            }
        }
        for (f, table) in &self.functions {
            let arity = self.signature.function_arity(f).unwrap_or(0);
            for (args, value) in table {
                if let Some(bad) = args.iter().chain(std::iter::once(value)).find(|e| !in_domain(e)) {
                    return Err(Error::InvalidTheory(format!(
                        "`{f}` mentions `{bad}`, which is not a domain element"
                    )));
                }
            }
            let expected = self.domain.len().checked_pow(arity as u32).unwrap_or(usize::MAX);
            if table.len() != expected {
                return Err(Error::InvalidTheory(format!(
                    "`{f}` must be defined on all {expected} argument tuple(s), found {}",
                    table.len()
                )));
            }
        }
        for (k, e) in &self.constants {
            if !in_domain(e) {
                return Err(Error::InvalidTheory(format!(
                    "constant `{k}` is bound to `{e}`, which is not a domain element"
                )));
            }
        }
        for c in self.signature.sentence_constants() {
            match self.bindings.get(c) {
                None => return Err(Error::UnboundConstant(c.clone())),
                Some(s) if !s.is_closed() => {
                    return Err(Error::InvalidTheory(format!(
                        "binding of `{c}` has free variables: {s}"
                    )))
                }
                Some(_) => {}
            }
        }
        let default_sentence = match self.signature.sentence_constants().first() {
            Some(first) => self.bindings[first].clone(),
            None => placeholder_sentence(),
        };
        Ok(Theory {
            signature: self.signature,
            domain: self.domain,
            predicates: self.predicates,
            functions: self.functions,
            constants: self.constants,
            bindings: self.bindings,
            default_sentence,
        })
    }
}

impl Theory {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    /// Sentence-constant bindings in declaration order.
    pub fn bindings(&self) -> impl Iterator<Item = (&str, &Sentence)> {
        self.signature
            .sentence_constants()
            .iter()
            .map(|c| (c.as_str(), &self.bindings[c]))
    }

    pub fn binding(&self, name: &str) -> Option<&Sentence> {
        self.bindings.get(name)
    }

    /// Value of a base function applied to a sentence.
    pub fn default_sentence(&self) -> &Sentence {
        &self.default_sentence
    }

    /// Names of everything in the base domain that is not a sentence:
    /// domain elements and declared constants.
    pub fn base_names(&self) -> Vec<Term> {
        self.domain
            .iter()
            .chain(self.constants.keys())
            .map(|n| Term::Const(n.clone()))
            .collect()
    }

    pub fn predicate_holds(&self, p: &str, args: &[String]) -> bool {
        self.predicates.get(p).is_some_and(|set| set.contains(args))
    }

    pub fn predicate_extension(&self, p: &str) -> Option<&BTreeSet<Vec<String>>> {
        self.predicates.get(p)
    }

    pub fn function_table(&self, f: &str) -> Option<&BTreeMap<Vec<String>, String>> {
        self.functions.get(f)
    }

    pub fn constant_value(&self, name: &str) -> Option<&str> {
        if let Some(e) = self.constants.get(name) {
            return Some(e);
        }
        self.domain.iter().find(|e| *e == name).map(String::as_str)
    }

    /// Declared constants with their values (domain elements excluded).
    pub fn constants(&self) -> impl Iterator<Item = (&str, &str)> {
        self.constants.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Interprets a closed term.
    pub fn denote(&self, t: &Term) -> Result<DomainElement> {
        match t {
            Term::Var(x) => Err(Error::OpenTerm(x.clone())),
            Term::Const(c) => self
                .constant_value(c)
                .map(|e| DomainElement::Base(e.to_string()))
                .ok_or_else(|| Error::InvalidTheory(format!("undeclared constant `{c}`"))),
            Term::SentConst(c) => self
                .bindings
                .get(c)
                .map(|s| DomainElement::Sent(s.clone()))
                .ok_or_else(|| Error::UnboundConstant(c.clone())),
            Term::Quote(f) => {
                if let Some(x) = f.free_vars().into_iter().next() {
                    return Err(Error::OpenTerm(x));
                }
                Ok(DomainElement::Sent((**f).clone()))
            }
            Term::NegName(inner) => match self.denote(inner)? {
                DomainElement::Sent(s) => Ok(DomainElement::Sent(Formula::not(s))),
                DomainElement::Base(_) => Err(Error::NonSentenceNegName(inner.to_string())),
            },
            Term::App(f, args) => {
                let mut base = Vec::with_capacity(args.len());
                for a in args {
                    match self.denote(a)? {
                        DomainElement::Base(e) => base.push(e),
                        DomainElement::Sent(_) => {
                            return Ok(DomainElement::Sent(self.default_sentence.clone()))
                        }
                    }
                }
                self.functions
                    .get(f)
                    .and_then(|table| table.get(&base))
                    .map(|e| DomainElement::Base(e.clone()))
                    .ok_or_else(|| Error::InvalidTheory(format!("`{f}` undefined on ({})", base.join(","))))
            }
        }
    }

    /// The sentence a term names, or `None` when it names a base element.
    /// A negation name over a base element names nothing, so `F(a)` is false
    /// like `T(a)`.
    pub fn denote_sentence(&self, t: &Term) -> Result<Option<Sentence>> {
        match self.denote(t) {
            Ok(DomainElement::Sent(s)) => Ok(Some(s)),
            Ok(DomainElement::Base(_)) | Err(Error::NonSentenceNegName(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Classical value of an atom built from a base predicate or `S`.
    pub fn base_atom_value(&self, atom: &Formula) -> Result<bool> {
        match atom {
            Formula::Pred(p, args) => {
                let mut base = Vec::with_capacity(args.len());
                for a in args {
                    match self.denote(a) {
                        Ok(DomainElement::Base(e)) => base.push(e),
                        Ok(DomainElement::Sent(_)) | Err(Error::NonSentenceNegName(_)) => {
                            return Ok(false)
                        }
                        Err(e) => return Err(e),
                    }
                }
                Ok(self.predicate_holds(p, &base))
            }
            Formula::IsSentence(t) => Ok(self.denote_sentence(t)?.is_some()),
            other => Err(Error::NotBaseAtom(other.to_string())),
        }
    }
}

/// The finite set quantifiers range over: the base domain plus the registered
/// sentences. The full sentence domain is infinite; this restriction is the
/// one departure from the intended model.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuantifierRange {
    base: Vec<String>,
    sentences: Vec<Sentence>,
}

impl QuantifierRange {
    pub fn new(base: Vec<String>, sentences: Vec<Sentence>) -> Self {
        Self { base, sentences }
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.base.len() + self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = DomainElement> + '_ {
        self.base
            .iter()
            .map(|a| DomainElement::Base(a.clone()))
            .chain(self.sentences.iter().map(|s| DomainElement::Sent(s.clone())))
    }

    /// Every instance `body[var := name(e)]` for `e` in the range.
    pub fn instances(&self, var: &str, body: &Formula) -> Vec<Sentence> {
        self.elements().map(|e| body.substitute(var, &e.name())).collect()
    }
}
