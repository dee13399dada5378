//! The final semantics: a total two-valued valuation in which `T(t)` is read
//! as "t names a sentence true in the primary semantics".

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixpoint::{FixpointReport, PrimaryValuation};
use crate::kleene::TruthValue;
use crate::model::Theory;
use crate::syntax::{Formula, Sentence};

/// How `T` atoms look up primary values of sentences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    /// Only closure sentences and their negations are resolved; anything else
    /// is an [`Error::OutsideClosure`].
    Registered,
    /// Sentences outside the closure get the value the Strong Kleene clauses
    /// assign them over the closure values, so `I_p(T(φ̄)) = I_p(φ)` holds
    /// for them too. Quantifiers keep the closure's range.
    Derived,
}

pub struct FinalValuation<'a> {
    primary: &'a PrimaryValuation,
    theory: &'a Theory,
    mode: Resolution,
    derived: RefCell<HashMap<Sentence, TruthValue>>,
    in_progress: RefCell<HashSet<Sentence>>,
    cache: RefCell<HashMap<Sentence, bool>>,
}

impl<'a> FinalValuation<'a> {
    pub fn new(primary: &'a PrimaryValuation, theory: &'a Theory, mode: Resolution) -> Self {
        FinalValuation {
            primary,
            theory,
            mode,
            derived: RefCell::default(),
            in_progress: RefCell::default(),
            cache: RefCell::default(),
        }
    }

    pub fn registered(primary: &'a PrimaryValuation, theory: &'a Theory) -> Self {
        Self::new(primary, theory, Resolution::Registered)
    }

    pub fn derived(primary: &'a PrimaryValuation, theory: &'a Theory) -> Self {
        Self::new(primary, theory, Resolution::Derived)
    }

    pub fn primary(&self) -> &PrimaryValuation {
        self.primary
    }

    /// Primary value of `s`, resolved according to the mode.
    pub fn primary_of(&self, s: &Sentence) -> Result<TruthValue> {
        if let Some(v) = self.primary.get(s) {
            return Ok(v);
        }
        match self.mode {
            Resolution::Registered => match s {
                Formula::Not(inner) => match self.primary.get(inner) {
                    Some(v) => Ok(v.negate()),
                    None => Err(Error::OutsideClosure(s.to_string())),
                },
                _ => Err(Error::OutsideClosure(s.to_string())),
            },
            Resolution::Derived => self.derive(s),
        }
    }

    fn derive(&self, s: &Sentence) -> Result<TruthValue> {
        if let Some(v) = self.primary.get(s) {
            return Ok(v);
        }
        if let Some(v) = self.derived.borrow().get(s) {
            return Ok(*v);
        }
        if !self.in_progress.borrow_mut().insert(s.clone()) {
            return Err(Error::InternalInvariantViolation(format!(
                "cyclic dependency outside the closure at {s}"
            )));
        }
        let v = match s {
            Formula::Pred(..) | Formula::IsSentence(_) => self.theory.base_atom_value(s)?.into(),
            Formula::Truth(t) => match self.theory.denote_sentence(t)? {
                Some(target) => self.derive(&target)?,
                None => TruthValue::False,
            },
            Formula::Not(f) => self.derive(f)?.negate(),
            Formula::Binary(op, a, b) => TruthValue::binary(*op, self.derive(a)?, self.derive(b)?),
            Formula::Quant(q, x, body) => {
                let mut values = Vec::new();
                for inst in self.primary.range().instances(x, body) {
                    values.push(self.derive(&inst)?);
                }
                TruthValue::quantifier(*q, values)
            }
        };
        self.in_progress.borrow_mut().remove(s);
        self.derived.borrow_mut().insert(s.clone(), v);
        Ok(v)
    }

    /// Final value of a closed sentence.
    pub fn eval(&self, s: &Sentence) -> Result<bool> {
        if !s.is_closed() {
            return Err(Error::OpenTerm(s.to_string()));
        }
        self.eval_closed(s)
    }

    fn eval_closed(&self, s: &Sentence) -> Result<bool> {
        if let Some(v) = self.cache.borrow().get(s) {
            return Ok(*v);
        }
        let v = match s {
            Formula::Pred(..) | Formula::IsSentence(_) => self.theory.base_atom_value(s)?,
            Formula::Truth(t) => match self.theory.denote_sentence(t)? {
                Some(target) => self.primary_of(&target)? == TruthValue::True,
                None => false,
            },
            Formula::Not(f) => !self.eval_closed(f)?,
            Formula::Binary(op, a, b) => {
                let a = self.eval_closed(a)?;
                let b = self.eval_closed(b)?;
                TruthValue::binary(*op, a.into(), b.into()) == TruthValue::True
            }
            Formula::Quant(q, x, body) => {
                let mut values = Vec::new();
                for inst in self.primary.range().instances(x, body) {
                    values.push(TruthValue::from(self.eval_closed(&inst)?));
                }
                TruthValue::quantifier(*q, values) == TruthValue::True
            }
        };
        self.cache.borrow_mut().insert(s.clone(), v);
        Ok(v)
    }
}

/// `I_f(s)`.
pub fn final_eval(s: &Sentence, f: &FinalValuation<'_>) -> Result<bool> {
    f.eval(s)
}

/// A sentence's value in both semantics. `primary` is `None` when the
/// sentence is not part of the closure the primary semantics was computed on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub primary: Option<TruthValue>,
    #[serde(rename = "final")]
    pub final_value: bool,
}

pub fn verdict(s: &Sentence, report: &FixpointReport, th: &Theory) -> Result<Verdict> {
    let f = FinalValuation::registered(&report.primary, th);
    Ok(Verdict { primary: report.primary_value(s), final_value: f.eval(s)? })
}
