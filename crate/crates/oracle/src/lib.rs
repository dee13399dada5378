//! Brute-force reference implementation of the primary and final semantics,
//! used to cross-check the main solver in tests.
//!
//! Everything here is deliberately naive: the closure is a `Vec` searched
//! linearly, valuations are maps over the whole closure, and values are
//! `Option<bool>` with `None` for undetermined. Only the syntax and model
//! types are shared with the main crate.

pub mod gen;

use std::collections::BTreeMap;

use dualtruth::model::Theory;
use dualtruth::syntax::{Formula, Quantifier, Term};
use dualtruth::{Error, Sentence, TruthValue};

/// Largest core the oracle will enumerate.
pub const ORACLE_MAX_CORE: usize = 8;

pub type Valuation = BTreeMap<Sentence, Option<bool>>;

#[derive(Clone, Debug)]
pub struct OracleVerdict {
    pub closure: Vec<Sentence>,
    pub core: Vec<Sentence>,
    /// Fixed points as valuations of the whole closure.
    pub all_fixed: Vec<Valuation>,
    pub intrinsic: Vec<Valuation>,
    /// Intrinsic points not strictly below another intrinsic point.
    pub maximal: Vec<Valuation>,
    pub least: Valuation,
    pub primary: Valuation,
    /// Final value of every closure sentence.
    pub finals: BTreeMap<Sentence, bool>,
    theory: Theory,
    range: Vec<Term>,
}

pub fn to_truth(v: Option<bool>) -> TruthValue {
    match v {
        Some(true) => TruthValue::True,
        Some(false) => TruthValue::False,
        None => TruthValue::Undetermined,
    }
}

enum Den {
    Base(String),
    Sent(Sentence),
    Nothing,
}

fn denote(th: &Theory, t: &Term) -> Den {
    match t {
        Term::Const(c) => {
            if th.domain().iter().any(|d| d == c) {
                Den::Base(c.clone())
            } else {
                match th.constants().find(|(k, _)| k == c) {
                    Some((_, v)) => Den::Base(v.to_string()),
                    None => Den::Nothing,
                }
            }
        }
        Term::SentConst(c) => Den::Sent(th.binding(c).expect("bound").clone()),
        Term::Quote(f) => Den::Sent((**f).clone()),
        Term::NegName(inner) => match denote(th, inner) {
            Den::Sent(s) => Den::Sent(Formula::Not(Box::new(s))),
            _ => Den::Nothing,
        },
        Term::App(f, args) => {
            let mut vals = Vec::new();
            for a in args {
                match denote(th, a) {
                    Den::Base(b) => vals.push(b),
                    Den::Sent(_) => return Den::Sent(th.default_sentence().clone()),
                    Den::Nothing => return Den::Nothing,
                }
            }
            match th.function_table(f).and_then(|t| t.get(&vals)) {
                Some(v) => Den::Base(v.clone()),
                None => Den::Nothing,
            }
        }
        Term::Var(_) => Den::Nothing,
    }
}

fn base_value(th: &Theory, f: &Formula) -> bool {
    match f {
        Formula::IsSentence(t) => matches!(denote(th, t), Den::Sent(_)),
        Formula::Pred(p, args) => {
            let mut vals = Vec::new();
            for a in args {
                match denote(th, a) {
                    Den::Base(b) => vals.push(b),
                    _ => return false,
                }
            }
            th.predicate_holds(p, &vals)
        }
        _ => unreachable!("not a base atom"),
    }
}

fn subst(body: &Formula, x: &str, by: &Term) -> Formula {
    body.substitute(x, by)
}

fn successors(th: &Theory, range: &[Term], s: &Sentence) -> Vec<Sentence> {
    match s {
        Formula::Pred(..) | Formula::IsSentence(_) => vec![],
        Formula::Truth(t) => match denote(th, t) {
            Den::Sent(target) => vec![target],
            _ => vec![],
        },
        Formula::Not(a) => vec![(**a).clone()],
        Formula::Binary(_, a, b) => vec![(**a).clone(), (**b).clone()],
        Formula::Quant(_, x, body) => range.iter().map(|e| subst(body, x, e)).collect(),
    }
}

fn naive_closure(th: &Theory, roots: &[Sentence], range: &[Term]) -> Vec<Sentence> {
    let mut seen: Vec<Sentence> = Vec::new();
    let mut todo: Vec<Sentence> = roots.to_vec();
    while let Some(s) = todo.pop() {
        if seen.contains(&s) {
            continue;
        }
        todo.extend(successors(th, range, &s));
        seen.push(s);
    }
    seen.sort_by_key(|s| s.to_string());
    seen
}

/// `D` as names, followed by the sentences of the base-range closure.
fn oracle_range(th: &Theory, roots: &[Sentence]) -> Vec<Term> {
    let base: Vec<Term> = th.domain().iter().map(|d| Term::Const(d.clone())).collect();
    let registered = naive_closure(th, roots, &base);
    base.into_iter()
        .chain(registered.into_iter().map(|s| Term::Quote(Box::new(s))))
        .collect()
}

fn value_under(
    th: &Theory,
    range: &[Term],
    hyp: &BTreeMap<Sentence, Option<bool>>,
    s: &Sentence,
) -> Option<bool> {
    match s {
        Formula::Pred(..) | Formula::IsSentence(_) => Some(base_value(th, s)),
        Formula::Truth(t) => match denote(th, t) {
            Den::Sent(target) => hyp[&target],
            _ => Some(false),
        },
        Formula::Not(a) => value_under(th, range, hyp, a).map(|b| !b),
        Formula::Binary(op, a, b) => {
            let a = value_under(th, range, hyp, a);
            let b = value_under(th, range, hyp, b);
            use dualtruth::syntax::BinOp::*;
            match op {
                And => match (a, b) {
                    (Some(false), _) | (_, Some(false)) => Some(false),
                    (Some(true), Some(true)) => Some(true),
                    _ => None,
                },
                Or => match (a, b) {
                    (Some(true), _) | (_, Some(true)) => Some(true),
                    (Some(false), Some(false)) => Some(false),
                    _ => None,
                },
                Implies => match (a, b) {
                    (Some(false), _) | (_, Some(true)) => Some(true),
                    (Some(true), Some(false)) => Some(false),
                    _ => None,
                },
                Iff => match (a, b) {
                    (Some(x), Some(y)) => Some(x == y),
                    _ => None,
                },
            }
        }
        Formula::Quant(q, x, body) => {
            let vals: Vec<Option<bool>> =
                range.iter().map(|e| value_under(th, range, hyp, &subst(body, x, e))).collect();
            let (decisive, other) = match q {
                Quantifier::Forall => (false, true),
                Quantifier::Exists => (true, false),
            };
            if vals.contains(&Some(decisive)) {
                Some(decisive)
            } else if vals.iter().all(|v| *v == Some(other)) {
                Some(other)
            } else {
                None
            }
        }
    }
}

fn below(a: &Valuation, b: &Valuation) -> bool {
    a.iter().all(|(s, v)| v.is_none() || b[s] == *v)
}

fn compatible(a: &Valuation, b: &Valuation) -> bool {
    a.iter().all(|(s, v)| match (v, b[s]) {
        (Some(x), Some(y)) => *x == y,
        _ => true,
    })
}

impl OracleVerdict {
    /// Final value of a closed sentence; `T` atoms resolve only closure
    /// sentences and their negations.
    pub fn final_value(&self, s: &Sentence) -> Option<bool> {
        Some(match s {
            Formula::Pred(..) | Formula::IsSentence(_) => base_value(&self.theory, s),
            Formula::Truth(t) => match denote(&self.theory, t) {
                Den::Sent(target) => match self.primary.get(&target) {
                    Some(v) => *v == Some(true),
                    None => match &target {
                        Formula::Not(r) => *self.primary.get(&**r)? == Some(false),
                        _ => return None,
                    },
                },
                _ => false,
            },
            Formula::Not(a) => !self.final_value(a)?,
            Formula::Binary(op, a, b) => {
                let a = self.final_value(a)?;
                let b = self.final_value(b)?;
                use dualtruth::syntax::BinOp::*;
                match op {
                    And => a && b,
                    Or => a || b,
                    Implies => !a || b,
                    Iff => a == b,
                }
            }
            Formula::Quant(q, x, body) => {
                let mut vals = Vec::new();
                for e in &self.range {
                    vals.push(self.final_value(&subst(body, x, e))?);
                }
                match q {
                    Quantifier::Forall => vals.iter().all(|v| *v),
                    Quantifier::Exists => vals.iter().any(|v| *v),
                }
            }
        })
    }
}

/// Computes everything by exhaustive search over the closure of the
/// theory's bindings plus `seeds`.
pub fn oracle_report_with(th: &Theory, seeds: &[Sentence]) -> Result<OracleVerdict, Error> {
    let mut roots: Vec<Sentence> = seeds.to_vec();
    roots.extend(th.bindings().map(|(_, s)| s.clone()));
    let range = oracle_range(th, &roots);
    let closure = naive_closure(th, &roots, &range);

    let mut core: Vec<Sentence> = Vec::new();
    for s in &closure {
        if let Formula::Truth(t) = s {
            if let Den::Sent(target) = denote(th, t) {
                if !core.contains(&target) {
                    core.push(target);
                }
            }
        }
    }
    core.sort_by_key(|s| s.to_string());
    if core.len() > ORACLE_MAX_CORE {
        return Err(Error::EnumerationBudgetExceeded {
            core_size: core.len(),
            budget: 3u64.pow(ORACLE_MAX_CORE as u32),
        });
    }

    let mut all_fixed = Vec::new();
    let total = 3usize.pow(core.len() as u32);
    for code in 0..total {
        let mut hyp = BTreeMap::new();
        let mut c = code;
        for s in &core {
            hyp.insert(s.clone(), [None, Some(false), Some(true)][c % 3]);
            c /= 3;
        }
        let full: Valuation =
            closure.iter().map(|s| (s.clone(), value_under(th, &range, &hyp, s))).collect();
        // the fixed-point condition, checked at every T node of the closure
        let fixed = closure.iter().all(|s| match s {
            Formula::Truth(t) => match denote(th, t) {
                Den::Sent(target) => full[s] == full[&target],
                _ => true,
            },
            _ => true,
        });
        if fixed {
            all_fixed.push(full);
        }
    }

    let intrinsic: Vec<Valuation> = all_fixed
        .iter()
        .filter(|h| all_fixed.iter().all(|g| compatible(h, g)))
        .cloned()
        .collect();
    let maximal: Vec<Valuation> = intrinsic
        .iter()
        .filter(|h| !intrinsic.iter().any(|g| g != *h && below(h, g)))
        .cloned()
        .collect();
    let least = all_fixed
        .iter()
        .find(|h| all_fixed.iter().all(|g| below(h, g)))
        .cloned()
        .ok_or_else(|| Error::InternalInvariantViolation("no least fixed point".into()))?;
    let primary = match maximal.as_slice() {
        [only] => only.clone(),
        _ => {
            return Err(Error::InternalInvariantViolation(format!(
                "{} maximal intrinsic points",
                maximal.len()
            )))
        }
    };

    let mut verdict = OracleVerdict {
        closure,
        core,
        all_fixed,
        intrinsic,
        maximal,
        least,
        primary,
        finals: BTreeMap::new(),
        theory: th.clone(),
        range,
    };
    let mut finals = BTreeMap::new();
    for s in &verdict.closure {
        let v = verdict
            .final_value(s)
            .ok_or_else(|| Error::InternalInvariantViolation(format!("final value of {s}")))?;
        finals.insert(s.clone(), v);
    }
    verdict.finals = finals;
    Ok(verdict)
}

pub fn oracle_report(th: &Theory) -> Result<OracleVerdict, Error> {
    oracle_report_with(th, &[])
}
