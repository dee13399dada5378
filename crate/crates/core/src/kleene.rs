//! Strong Kleene three-valued algebra, sentence evaluation over a hypothesis,
//! and the jump operator.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DepGraph, NodeKind};
use crate::syntax::{BinOp, Quantifier, Sentence};

/// A value of the primary semantics. The derived `Ord` (`| < ⊥ < ⊤`) is only
/// the canonical listing order; see [`TruthValue::info_le`] and
/// [`TruthValue::truth_le`] for the semantic orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruthValue {
    Undetermined,
    False,
    True,
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "⊤",
            TruthValue::False => "⊥",
            TruthValue::Undetermined => "|",
        })
    }
}

impl TruthValue {
    pub const ALL: [TruthValue; 3] = [TruthValue::Undetermined, TruthValue::False, TruthValue::True];

    pub fn is_determined(self) -> bool {
        self != TruthValue::Undetermined
    }

    pub fn classical(self) -> Option<bool> {
        match self {
            TruthValue::True => Some(true),
            TruthValue::False => Some(false),
            TruthValue::Undetermined => None,
        }
    }

    /// Information order: `|` below both classical values, which are
    /// incomparable.
    pub fn info_le(self, other: TruthValue) -> bool {
        self == TruthValue::Undetermined || self == other
    }

    /// Truth order `⊥ < | < ⊤`.
    pub fn truth_le(self, other: TruthValue) -> bool {
        let rank = |v| match v {
            TruthValue::False => 0,
            TruthValue::Undetermined => 1,
            TruthValue::True => 2,
        };
        rank(self) <= rank(other)
    }

    /// Least upper bound in the information order, if the two agree.
    pub fn join(self, other: TruthValue) -> Option<TruthValue> {
        match (self, other) {
            (TruthValue::Undetermined, v) | (v, TruthValue::Undetermined) => Some(v),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }

    /// True when one value is ⊤ and the other ⊥.
    pub fn conflicts(self, other: TruthValue) -> bool {
        self.join(other).is_none()
    }

    pub fn negate(self) -> TruthValue {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Undetermined => TruthValue::Undetermined,
        }
    }

    pub fn and(self, other: TruthValue) -> TruthValue {
        use TruthValue::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Undetermined,
        }
    }

    pub fn or(self, other: TruthValue) -> TruthValue {
        use TruthValue::*;
        match (self, other) {
            (True, _) | (_, True) => True,
            (False, False) => False,
            _ => Undetermined,
        }
    }

    pub fn implies(self, other: TruthValue) -> TruthValue {
        self.negate().or(other)
    }

    pub fn iff(self, other: TruthValue) -> TruthValue {
        match (self.classical(), other.classical()) {
            (Some(a), Some(b)) => (a == b).into(),
            _ => TruthValue::Undetermined,
        }
    }

    pub fn binary(op: BinOp, a: TruthValue, b: TruthValue) -> TruthValue {
        match op {
            BinOp::And => a.and(b),
            BinOp::Or => a.or(b),
            BinOp::Implies => a.implies(b),
            BinOp::Iff => a.iff(b),
        }
    }

    /// `∀` over the instance values: ⊥ if some instance is ⊥, ⊤ if all are
    /// ⊤, otherwise `|`.
    pub fn forall(values: impl IntoIterator<Item = TruthValue>) -> TruthValue {
        values.into_iter().fold(TruthValue::True, TruthValue::and)
    }

    pub fn exists(values: impl IntoIterator<Item = TruthValue>) -> TruthValue {
        values.into_iter().fold(TruthValue::False, TruthValue::or)
    }

    pub fn quantifier(q: Quantifier, values: impl IntoIterator<Item = TruthValue>) -> TruthValue {
        match q {
            Quantifier::Forall => TruthValue::forall(values),
            Quantifier::Exists => TruthValue::exists(values),
        }
    }
}

/// The propositional connectives, for table lookups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connective {
    Not,
    Binary(BinOp),
}

/// Strong Kleene table for `op`. The second argument is ignored for `¬`.
pub fn connective3(op: Connective, a: TruthValue, b: TruthValue) -> TruthValue {
    match op {
        Connective::Not => a.negate(),
        Connective::Binary(op) => TruthValue::binary(op, a, b),
    }
}

/// A three-valued assignment to the core of a dependency graph (the
/// sentences some `T` atom names), stored in core order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hypothesis(Vec<TruthValue>);

impl Hypothesis {
    pub fn new(values: Vec<TruthValue>) -> Self {
        Hypothesis(values)
    }

    pub fn undetermined(len: usize) -> Self {
        Hypothesis(vec![TruthValue::Undetermined; len])
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value of a core sentence.
    pub fn get(&self, g: &DepGraph, s: &Sentence) -> Option<TruthValue> {
        let slot = g.core_slot(g.index_of(s)?)?;
        self.0.get(slot).copied()
    }

    /// Pointwise information order.
    pub fn info_le(&self, other: &Hypothesis) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| a.info_le(*b))
    }

    /// True if the hypotheses give opposite classical values somewhere.
    pub fn conflicts(&self, other: &Hypothesis) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a.conflicts(*b))
    }

    /// Pointwise join, if the hypotheses do not conflict.
    pub fn join(&self, other: &Hypothesis) -> Option<Hypothesis> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.join(*b))
            .collect::<Option<Vec<_>>>()
            .map(Hypothesis)
    }

    /// Number of determined entries.
    pub fn determined(&self) -> usize {
        self.0.iter().filter(|v| v.is_determined()).count()
    }
}

/// Values of every closure node under `h`, indexed by node. `T` atoms take
/// the hypothesis value of the sentence they name (⊥ when they name a base
/// element); everything else follows the Strong Kleene tables.
pub fn evaluate_all(g: &DepGraph, h: &Hypothesis) -> Vec<TruthValue> {
    let mut values = vec![TruthValue::Undetermined; g.len()];
    evaluate_into(g, h.values(), &mut values);
    values
}

pub(crate) fn evaluate_into(g: &DepGraph, h: &[TruthValue], values: &mut [TruthValue]) {
    for &n in g.eval_order() {
        values[n] = match g.kind(n) {
            NodeKind::Atom(b) => (*b).into(),
            NodeKind::Truth(None) => TruthValue::False,
            NodeKind::Truth(Some(target)) => {
                h[g.core_slot(*target).expect("T targets are core nodes")]
            }
            NodeKind::Not(a) => values[*a].negate(),
            NodeKind::Binary(op, a, b) => TruthValue::binary(*op, values[*a], values[*b]),
            NodeKind::Quant(q, xs) => TruthValue::quantifier(*q, xs.iter().map(|&x| values[x])),
        };
    }
}

/// Strong Kleene value of a closure sentence under `h`.
pub fn kleene_eval(s: &Sentence, h: &Hypothesis, g: &DepGraph) -> Result<TruthValue> {
    let node = g.index_of(s).ok_or_else(|| Error::OutsideClosure(s.to_string()))?;
    Ok(eval_node(node, h, g))
}

fn eval_node(n: usize, h: &Hypothesis, g: &DepGraph) -> TruthValue {
    match g.kind(n) {
        NodeKind::Atom(b) => (*b).into(),
        NodeKind::Truth(None) => TruthValue::False,
        NodeKind::Truth(Some(t)) => h.values()[g.core_slot(*t).expect("T targets are core nodes")],
        NodeKind::Not(a) => eval_node(*a, h, g).negate(),
        NodeKind::Binary(op, a, b) => TruthValue::binary(*op, eval_node(*a, h, g), eval_node(*b, h, g)),
        NodeKind::Quant(q, xs) => TruthValue::quantifier(*q, xs.iter().map(|&x| eval_node(x, h, g))),
    }
}

/// One application of the jump: each core sentence gets the value it
/// evaluates to under `h`.
pub fn jump(h: &Hypothesis, g: &DepGraph) -> Hypothesis {
    let values = evaluate_all(g, h);
    Hypothesis(g.core().iter().map(|&n| values[n]).collect())
}
