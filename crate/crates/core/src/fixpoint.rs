//! Fixed points of the jump: the least one, all of them, the intrinsic ones,
//! and the maximal intrinsic one, which is the primary semantics.
//!
//! All fixed points are found by exhaustive search over the `3^n`
//! hypotheses on the core; the maximal intrinsic point is then the join of
//! the intrinsic points, verified to be a fixed point itself.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::DepGraph;
use crate::kleene::{evaluate_all, evaluate_into, jump, Hypothesis, TruthValue};
use crate::model::QuantifierRange;
use crate::syntax::Sentence;

/// Default bound on the number of hypotheses enumerated: `3^14`.
pub const DEFAULT_HYPOTHESIS_BUDGET: u64 = 4_782_969;

/// Iterates the jump from the all-undetermined hypothesis. The sequence is
/// increasing in the information order, so it stops after at most
/// `|core| + 1` steps.
pub fn least_fixed_point(g: &DepGraph) -> Hypothesis {
    let mut h = Hypothesis::undetermined(g.core().len());
    loop {
        let next = jump(&h, g);
        if next == h {
            return h;
        }
        debug_assert!(h.info_le(&next));
        h = next;
    }
}

/// `3^core`, or `None` on overflow.
pub fn hypothesis_count(core_size: usize) -> Option<u64> {
    3u64.checked_pow(core_size as u32)
}

/// Every hypothesis `h` with `jump(h) = h`, in lexicographic order over the
/// core with `| < ⊥ < ⊤`.
pub fn enumerate_fixed_points(g: &DepGraph, budget: u64) -> Result<Vec<Hypothesis>> {
    let n = g.core().len();
    match hypothesis_count(n) {
        Some(count) if count <= budget => {}
        _ => return Err(Error::EnumerationBudgetExceeded { core_size: n, budget }),
    }
    let mut fixed = Vec::new();
    let mut h = vec![TruthValue::Undetermined; n];
    let mut values = vec![TruthValue::Undetermined; g.len()];
    loop {
        evaluate_into(g, &h, &mut values);
        if g.core().iter().zip(&h).all(|(&node, v)| values[node] == *v) {
            fixed.push(Hypothesis::new(h.clone()));
        }
        // odometer step, last position fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(fixed);
            }
            i -= 1;
            h[i] = match h[i] {
                TruthValue::Undetermined => TruthValue::False,
                TruthValue::False => TruthValue::True,
                TruthValue::True => TruthValue::Undetermined,
            };
            if h[i] != TruthValue::Undetermined {
                break;
            }
        }
    }
}

/// A fixed point is intrinsic when it gives no sentence a classical value
/// opposite to the one some other fixed point gives it.
///
/// Comparing on the core is enough: two hypotheses that agree wherever both
/// are classical have a common upper bound, and evaluation is monotone, so
/// their extensions to the closure cannot conflict either.
pub fn is_intrinsic(h: &Hypothesis, all_fixed: &[Hypothesis]) -> bool {
    all_fixed.iter().all(|g| !h.conflicts(g))
}

/// Primary valuation: the maximal intrinsic fixed point extended from the
/// core to the whole closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryValuation {
    values: BTreeMap<Sentence, TruthValue>,
    determination_domain: BTreeSet<Sentence>,
    range: QuantifierRange,
}

impl PrimaryValuation {
    /// Extends a hypothesis to every node of `g`.
    pub fn from_hypothesis(g: &DepGraph, h: &Hypothesis) -> Self {
        let node_values = evaluate_all(g, h);
        let values: BTreeMap<Sentence, TruthValue> =
            g.nodes().iter().cloned().zip(node_values).collect();
        let determination_domain =
            values.iter().filter(|(_, v)| v.is_determined()).map(|(s, _)| s.clone()).collect();
        PrimaryValuation { values, determination_domain, range: g.range().clone() }
    }

    pub fn get(&self, s: &Sentence) -> Option<TruthValue> {
        self.values.get(s).copied()
    }

    pub fn values(&self) -> &BTreeMap<Sentence, TruthValue> {
        &self.values
    }

    /// Sentences with a classical primary value.
    pub fn determination_domain(&self) -> &BTreeSet<Sentence> {
        &self.determination_domain
    }

    pub fn range(&self) -> &QuantifierRange {
        &self.range
    }
}

/// The primary semantics read as a partial two-valued function.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalPartial {
    pub values: BTreeMap<Sentence, bool>,
}

pub fn classical_restriction(p: &PrimaryValuation) -> ClassicalPartial {
    ClassicalPartial {
        values: p
            .values
            .iter()
            .filter_map(|(s, v)| v.classical().map(|b| (s.clone(), b)))
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct FixpointReport {
    pub least: Hypothesis,
    pub all_fixed: Vec<Hypothesis>,
    pub intrinsic: Vec<Hypothesis>,
    pub maximal_intrinsic: Hypothesis,
    /// How many intrinsic points have no strictly greater intrinsic point.
    pub maximal_count: usize,
    pub primary: PrimaryValuation,
}

impl FixpointReport {
    /// Primary value of a closure sentence.
    pub fn primary_value(&self, s: &Sentence) -> Option<TruthValue> {
        self.primary.get(s)
    }
}

/// Computes all fixed points and the maximal intrinsic one.
pub fn maximal_intrinsic(g: &DepGraph, budget: u64) -> Result<FixpointReport> {
    let all_fixed = enumerate_fixed_points(g, budget)?;
    let least = least_fixed_point(g);
    if !all_fixed.contains(&least) {
        return Err(Error::InternalInvariantViolation(
            "least fixed point missing from the enumeration".into(),
        ));
    }

    // A fixed point is intrinsic iff each of its classical values is never
    // contradicted, which only needs the set of values seen per core slot.
    let n = g.core().len();
    let mut seen_true = vec![false; n];
    let mut seen_false = vec![false; n];
    for h in &all_fixed {
        for (i, v) in h.values().iter().enumerate() {
            match v {
                TruthValue::True => seen_true[i] = true,
                TruthValue::False => seen_false[i] = true,
                TruthValue::Undetermined => {}
            }
        }
    }
    let intrinsic: Vec<Hypothesis> = all_fixed
        .iter()
        .filter(|h| {
            h.values().iter().enumerate().all(|(i, v)| match v {
                TruthValue::True => !seen_false[i],
                TruthValue::False => !seen_true[i],
                TruthValue::Undetermined => true,
            })
        })
        .cloned()
        .collect();

    let join = intrinsic
        .iter()
        .try_fold(Hypothesis::undetermined(n), |acc, h| acc.join(h))
        .ok_or_else(|| Error::InternalInvariantViolation("intrinsic points conflict".into()))?;
    if jump(&join, g) != join {
        return Err(Error::InternalInvariantViolation(
            "join of the intrinsic fixed points is not a fixed point".into(),
        ));
    }

    let maximal: Vec<&Hypothesis> = intrinsic
        .iter()
        .filter(|h| !intrinsic.iter().any(|k| k != *h && h.info_le(k)))
        .collect();
    if maximal.len() != 1 || maximal[0] != &join {
        return Err(Error::InternalInvariantViolation(format!(
            "expected a unique maximal intrinsic point equal to the join, found {}",
            maximal.len()
        )));
    }
    if !least.info_le(&join) {
        return Err(Error::InternalInvariantViolation(
            "least fixed point is not below the maximal intrinsic one".into(),
        ));
    }

    let primary = PrimaryValuation::from_hypothesis(g, &join);
    Ok(FixpointReport {
        least,
        maximal_count: maximal.len(),
        all_fixed,
        intrinsic,
        maximal_intrinsic: join,
        primary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::closure;
    use crate::model::{Theory, TheoryBuilder};
    use crate::syntax::parse_sentence;
    use TruthValue::*;

    fn theory(lets: &[(&str, &str)]) -> Theory {
        let mut b = TheoryBuilder::new();
        b.predicate("l", 0, vec![]).unwrap();
        for (n, _) in lets {
            b.sentence_constant(n).unwrap();
        }
        for (n, text) in lets {
            let s = parse_sentence(text, b.signature()).unwrap();
            b.bind(n, s).unwrap();
        }
        b.build().unwrap()
    }

    fn graph(lets: &[(&str, &str)]) -> (Theory, DepGraph) {
        let th = theory(lets);
        let g = closure(&[], &th).unwrap();
        (th, g)
    }

    #[test]
    fn truthteller_has_three_fixed_points() {
        let (_, g) = graph(&[("I", "T(I)")]);
        let all = enumerate_fixed_points(&g, DEFAULT_HYPOTHESIS_BUDGET).unwrap();
        let vals: Vec<_> = all.iter().map(|h| h.values()[0]).collect();
        assert_eq!(vals, vec![Undetermined, False, True]);
        assert!(is_intrinsic(&Hypothesis::undetermined(1), &all));
        assert!(!is_intrinsic(&Hypothesis::new(vec![True]), &all));
        let report = maximal_intrinsic(&g, DEFAULT_HYPOTHESIS_BUDGET).unwrap();
        assert_eq!(report.intrinsic.len(), 1);
        assert_eq!(report.maximal_intrinsic, Hypothesis::undetermined(1));
        assert!(classical_restriction(&report.primary).values.is_empty());
    }

    #[test]
    fn truthteller_jump() {
        let (_, g) = graph(&[("I", "T(I)")]);
        let t = Hypothesis::new(vec![True]);
        assert_eq!(jump(&t, &g), t);
        let u = Hypothesis::undetermined(1);
        assert_eq!(jump(&u, &g), u);
    }

    #[test]
    fn liar_has_only_the_empty_fixed_point() {
        let (_, g) = graph(&[("L", "T(nL)"), ("nL", "~T(nL)")]);
        assert_eq!(jump(&Hypothesis::new(vec![True]), &g), Hypothesis::new(vec![False]));
        assert_eq!(least_fixed_point(&g), Hypothesis::undetermined(1));
        let all = enumerate_fixed_points(&g, DEFAULT_HYPOTHESIS_BUDGET).unwrap();
        assert_eq!(all, vec![Hypothesis::undetermined(1)]);
    }

    #[test]
    fn logician_is_true() {
        let (th, g) = graph(&[("Log", "T(Log) | F(Log)")]);
        assert_eq!(least_fixed_point(&g), Hypothesis::undetermined(2));
        let report = maximal_intrinsic(&g, DEFAULT_HYPOTHESIS_BUDGET).unwrap();
        assert_eq!(report.all_fixed.len(), 2);
        assert_eq!(report.intrinsic.len(), 2);
        let log = th.binding("Log").unwrap();
        assert_eq!(report.primary_value(log), Some(True));
        assert_eq!(report.maximal_intrinsic.get(&g, log), Some(True));
        let partial = classical_restriction(&report.primary);
        assert_eq!(partial.values.get(log), Some(&true));
    }

    #[test]
    fn curry_and_strong_liar_are_undetermined() {
        let (th, g) = graph(&[("C", "T(C) -> l()")]);
        let report = maximal_intrinsic(&g, DEFAULT_HYPOTHESIS_BUDGET).unwrap();
        assert_eq!(report.primary_value(th.binding("C").unwrap()), Some(Undetermined));
        let (th, g) = graph(&[("LL", "~T(LL)")]);
        let report = maximal_intrinsic(&g, DEFAULT_HYPOTHESIS_BUDGET).unwrap();
        assert_eq!(report.primary_value(th.binding("LL").unwrap()), Some(Undetermined));
    }

    #[test]
    fn grounded_truth_is_classical() {
        let mut b = TheoryBuilder::new();
        for e in ["1", "2", "3"] {
            b.domain_element(e).unwrap();
        }
        b.predicate("=", 2, vec![]).unwrap();
        let th = b.build().unwrap();
        let seed = parse_sentence("T([1 = 3])", th.signature()).unwrap();
        let g = closure(std::slice::from_ref(&seed), &th).unwrap();
        assert_eq!(least_fixed_point(&g).values(), &[False]);
        let report = maximal_intrinsic(&g, DEFAULT_HYPOTHESIS_BUDGET).unwrap();
        let partial = classical_restriction(&report.primary);
        assert_eq!(partial.values.len(), 2);
        assert!(partial.values.values().all(|v| !v));
    }

    #[test]
    fn budget_is_enforced() {
        let (_, g) = graph(&[("A", "T(A)"), ("B", "T(B)")]);
        assert!(matches!(
            enumerate_fixed_points(&g, 8),
            Err(Error::EnumerationBudgetExceeded { core_size: 2, budget: 8 })
        ));
        assert_eq!(enumerate_fixed_points(&g, 9).unwrap().len(), 9);
    }
}
