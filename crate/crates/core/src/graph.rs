//! The semantic dependency graph: every sentence points at the sentences its
//! value depends on. Compound sentences point at their components, quantified
//! sentences at all their instances, and `T(t)` at the sentence `t` names.
//!
//! Only `T` edges can close a cycle; every other edge strictly lowers the
//! logical depth.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::kleene::TruthValue;
use crate::model::{QuantifierRange, Theory};
use crate::syntax::{BinOp, Formula, Quantifier, Sentence};

pub const DEFAULT_NODE_CAP: usize = 20_000;

/// How a node's value is computed from its successors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Base-predicate or `S` atom, classical.
    Atom(bool),
    /// `T(t)` with the node of the named sentence, or `None` when `t` names
    /// a base element.
    Truth(Option<usize>),
    Not(usize),
    Binary(BinOp, usize, usize),
    Quant(Quantifier, Vec<usize>),
}

impl NodeKind {
    fn successors(&self) -> Vec<usize> {
        let mut out = match self {
            NodeKind::Atom(_) | NodeKind::Truth(None) => vec![],
            NodeKind::Truth(Some(n)) | NodeKind::Not(n) => vec![*n],
            NodeKind::Binary(_, a, b) => vec![*a, *b],
            NodeKind::Quant(_, xs) => xs.clone(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Successor description in terms of sentences, before numbering.
enum Proto {
    Atom(bool),
    Truth(Option<Sentence>),
    Not(Sentence),
    Binary(BinOp, Sentence, Sentence),
    Quant(Quantifier, Vec<Sentence>),
}

impl Proto {
    fn successors(&self) -> Vec<&Sentence> {
        match self {
            Proto::Atom(_) | Proto::Truth(None) => vec![],
            Proto::Truth(Some(s)) | Proto::Not(s) => vec![s],
            Proto::Binary(_, a, b) => vec![a, b],
            Proto::Quant(_, xs) => xs.iter().collect(),
        }
    }
}

fn expand(s: &Sentence, th: &Theory, range: &QuantifierRange) -> Result<Proto> {
    Ok(match s {
        Formula::Pred(..) | Formula::IsSentence(_) => Proto::Atom(th.base_atom_value(s)?),
        Formula::Truth(t) => Proto::Truth(th.denote_sentence(t)?),
        Formula::Not(f) => Proto::Not((**f).clone()),
        Formula::Binary(op, a, b) => Proto::Binary(*op, (**a).clone(), (**b).clone()),
        Formula::Quant(q, x, body) => Proto::Quant(*q, range.instances(x, body)),
    })
}

fn explore(
    seeds: &[Sentence],
    th: &Theory,
    range: &QuantifierRange,
    cap: usize,
) -> Result<HashMap<Sentence, Proto>> {
    let mut seen: HashMap<Sentence, Proto> = HashMap::new();
    let mut queue: VecDeque<Sentence> = seeds.iter().cloned().collect();
    while let Some(s) = queue.pop_front() {
        if seen.contains_key(&s) {
            continue;
        }
        if seen.len() >= cap {
            return Err(Error::ClosureBudgetExceeded { cap });
        }
        let proto = expand(&s, th, range)?;
        for next in proto.successors() {
            if !seen.contains_key(next) {
                queue.push_back(next.clone());
            }
        }
        seen.insert(s, proto);
    }
    Ok(seen)
}

fn canonical_sort(sentences: impl IntoIterator<Item = Sentence>) -> Vec<Sentence> {
    let mut keyed: Vec<(String, Sentence)> =
        sentences.into_iter().map(|s| (s.to_string(), s)).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, s)| s).collect()
}

/// The finite sentence closure of a theory together with its dependency
/// edges and the set of sentences some `T` atom refers to (the core).
#[derive(Clone, Debug)]
pub struct DepGraph {
    nodes: Vec<Sentence>,
    index: HashMap<Sentence, usize>,
    kinds: Vec<NodeKind>,
    core: Vec<usize>,
    core_slot: Vec<Option<usize>>,
    eval_order: Vec<usize>,
    range: QuantifierRange,
}

/// Builds the closure with the default node cap. See [`closure_with_cap`].
pub fn closure(seeds: &[Sentence], th: &Theory) -> Result<DepGraph> {
    closure_with_cap(seeds, th, DEFAULT_NODE_CAP)
}

/// Least set of sentences containing `seeds` and every sentence-constant
/// binding, closed under components, quantifier instances and `T`
/// dereference.
///
/// Quantifiers range over the base domain plus the *registered* sentences:
/// the closure computed with quantifiers instantiated over the base domain
/// only. Fixing the sentence part of the range this way keeps the closure
/// finite.
pub fn closure_with_cap(seeds: &[Sentence], th: &Theory, cap: usize) -> Result<DepGraph> {
    if let Some(open) = seeds.iter().find(|s| !s.is_closed()) {
        return Err(Error::OpenTerm(open.to_string()));
    }
    let mut roots: Vec<Sentence> = seeds.to_vec();
    roots.extend(th.bindings().map(|(_, s)| s.clone()));

    let base_only = QuantifierRange::new(th.domain().to_vec(), vec![]);
    let registered = canonical_sort(explore(&roots, th, &base_only, cap)?.into_keys());
    let range = QuantifierRange::new(th.domain().to_vec(), registered);
    let mut protos = explore(&roots, th, &range, cap)?;

    let nodes = canonical_sort(protos.keys().cloned());
    let index: HashMap<Sentence, usize> =
        nodes.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let id = |s: &Sentence| index[s];
    let kinds: Vec<NodeKind> = nodes
        .iter()
        .map(|s| match protos.remove(s).expect("every node was explored") {
            Proto::Atom(v) => NodeKind::Atom(v),
            Proto::Truth(t) => NodeKind::Truth(t.as_ref().map(id)),
            Proto::Not(a) => NodeKind::Not(id(&a)),
            Proto::Binary(op, a, b) => NodeKind::Binary(op, id(&a), id(&b)),
            Proto::Quant(q, xs) => NodeKind::Quant(q, xs.iter().map(id).collect()),
        })
        .collect();

    let mut is_core = vec![false; nodes.len()];
    for k in &kinds {
        if let NodeKind::Truth(Some(n)) = k {
            is_core[*n] = true;
        }
    }
    let core: Vec<usize> = (0..nodes.len()).filter(|&i| is_core[i]).collect();
    let mut core_slot = vec![None; nodes.len()];
    for (slot, &n) in core.iter().enumerate() {
        core_slot[n] = Some(slot);
    }

    let mut eval_order: Vec<usize> = (0..nodes.len()).collect();
    eval_order.sort_by_key(|&i| (nodes[i].logical_depth(), i));

    Ok(DepGraph { nodes, index, kinds, core, core_slot, eval_order, range })
}

impl DepGraph {
    /// Closure sentences in canonical (printed-text) order.
    pub fn nodes(&self) -> &[Sentence] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, s: &Sentence) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Sentence) -> bool {
        self.index.contains_key(s)
    }

    pub fn sentence(&self, node: usize) -> &Sentence {
        &self.nodes[node]
    }

    pub fn kind(&self, node: usize) -> &NodeKind {
        &self.kinds[node]
    }

    /// Dependency arrows out of `node`, deduplicated and sorted.
    pub fn edges(&self, node: usize) -> Vec<usize> {
        self.kinds[node].successors()
    }

    pub fn is_truth_node(&self, node: usize) -> bool {
        matches!(self.kinds[node], NodeKind::Truth(_))
    }

    /// Nodes named by some `T` atom, in canonical order. Hypotheses live here.
    pub fn core(&self) -> &[usize] {
        &self.core
    }

    pub fn core_sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.core.iter().map(|&n| &self.nodes[n])
    }

    pub fn core_slot(&self, node: usize) -> Option<usize> {
        self.core_slot[node]
    }

    /// Node order in which every non-`T` successor precedes its predecessor.
    pub fn eval_order(&self) -> &[usize] {
        &self.eval_order
    }

    pub fn range(&self) -> &QuantifierRange {
        &self.range
    }
}

/// A strongly connected component of the dependency graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scc {
    pub nodes: Vec<usize>,
    /// True when the component contains a cycle (size > 1 or a self-loop).
    /// Acyclic singletons are the grounded candidates.
    pub cyclic: bool,
}

/// Strongly connected components in reverse topological order of the
/// condensation: a component comes after every component it depends on.
pub fn sccs(g: &DepGraph) -> Vec<Scc> {
    let mut pg = DiGraph::<(), ()>::with_capacity(g.len(), 0);
    let ids: Vec<_> = (0..g.len()).map(|_| pg.add_node(())).collect();
    for n in 0..g.len() {
        for m in g.edges(n) {
            pg.add_edge(ids[n], ids[m], ());
        }
    }
    tarjan_scc(&pg)
        .into_iter()
        .map(|comp| {
            let mut nodes: Vec<usize> = comp.into_iter().map(|ix| ix.index()).collect();
            nodes.sort_unstable();
            let cyclic = nodes.len() > 1 || g.edges(nodes[0]).contains(&nodes[0]);
            Scc { nodes, cyclic }
        })
        .collect()
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. With `verdicts` (one value per node) nodes are filled
/// green for true, red for false and gray for undetermined.
pub fn export_dot(g: &DepGraph, verdicts: Option<&[TruthValue]>) -> String {
    let mut out = String::from("digraph {\n");
    for (i, s) in g.nodes().iter().enumerate() {
        let _ = write!(out, "    n{i} [label=\"{}\"", escape(&s.to_string()));
        if let Some(v) = verdicts.and_then(|vs| vs.get(i)) {
            let color = match v {
                TruthValue::True => "green",
                TruthValue::False => "red",
                TruthValue::Undetermined => "gray",
            };
            let _ = write!(out, ", style=filled, fillcolor={color}");
        }
        out.push_str("];\n");
    }
    for i in 0..g.len() {
        for j in g.edges(i) {
            let style = if g.is_truth_node(i) { " [style=dashed]" } else { "" };
            let _ = writeln!(out, "    n{i} -> n{j}{style};");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TheoryBuilder;
    use crate::syntax::parse_sentence;

    fn theory(lets: &[(&str, &str)]) -> Theory {
        let mut b = TheoryBuilder::new();
        for c in ["0", "1", "2", "3"] {
            b.domain_element(c).unwrap();
        }
        b.predicate("=", 2, (0..4).map(|i| vec![i.to_string(), i.to_string()]).collect())
            .unwrap();
        let table = (0..4)
            .flat_map(|i| (0..4).map(move |j| (vec![i.to_string(), j.to_string()], ((i + j) % 4).to_string())))
            .collect();
        b.function("plus", 2, table).unwrap();
        for (n, _) in lets {
            b.sentence_constant(n).unwrap();
        }
        for (n, text) in lets {
            let s = parse_sentence(text, b.signature()).unwrap();
            b.bind(n, s).unwrap();
        }
        b.build().unwrap()
    }

    fn labels(g: &DepGraph) -> Vec<String> {
        g.nodes().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn truthteller_is_a_self_loop() {
        let th = theory(&[("I", "T(I)")]);
        let g = closure(&[], &th).unwrap();
        assert_eq!(labels(&g), vec!["T(I)"]);
        assert_eq!(g.edges(0), vec![0]);
        assert_eq!(g.core(), &[0]);
    }

    #[test]
    fn liar_is_a_two_cycle() {
        let th = theory(&[("L", "T(nL)"), ("nL", "~T(nL)")]);
        let g = closure(&[], &th).unwrap();
        assert_eq!(labels(&g), vec!["T(nL)", "~T(nL)"]);
        assert_eq!(g.edges(0), vec![1]);
        assert_eq!(g.edges(1), vec![0]);
        assert_eq!(g.core_sentences().map(ToString::to_string).collect::<Vec<_>>(), vec!["~T(nL)"]);
        let comps = sccs(&g);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].nodes.len(), 2);
        assert!(comps[0].cyclic);
    }

    #[test]
    fn grounded_truth_stops_at_the_atom() {
        let th = theory(&[]);
        let seed = parse_sentence("T([plus(1, 1) = 3])", th.signature()).unwrap();
        let g = closure(&[seed], &th).unwrap();
        assert_eq!(labels(&g), vec!["T([plus(1, 1) = 3])", "plus(1, 1) = 3"]);
        assert_eq!(g.edges(0), vec![1]);
        assert!(g.edges(1).is_empty());
        assert_eq!(g.kind(1), &NodeKind::Atom(false));
        let comps = sccs(&g);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| !c.cyclic));
        // the atom is a sink, so it is listed first
        assert_eq!(comps[0].nodes, vec![1]);
    }

    #[test]
    fn logician_forms_one_component() {
        let th = theory(&[("Log", "T(Log) | F(Log)")]);
        let g = closure(&[], &th).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.core().len(), 2);
        let comps = sccs(&g);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].nodes, vec![0, 1, 2, 3]);
    }

    #[test]
    fn quantifiers_range_over_registered_sentences() {
        let th = theory(&[("A", "exists x. S(x) & ~T(x)")]);
        let g = closure(&[], &th).unwrap();
        let range = g.range();
        assert_eq!(range.base().len(), 4);
        // phase one registers the binding, its body instances over 0..3 and
        // their components
        assert!(range.sentences().iter().any(|s| s == th.binding("A").unwrap()));
        let q = g.index_of(th.binding("A").unwrap()).unwrap();
        let NodeKind::Quant(_, inst) = g.kind(q) else { panic!() };
        assert_eq!(inst.len(), range.len());
        // removing T edges leaves an acyclic graph
        for &n in g.eval_order() {
            if !g.is_truth_node(n) {
                for m in g.edges(n) {
                    assert!(g.sentence(m).logical_depth() < g.sentence(n).logical_depth());
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let th = theory(&[("A", "forall x. T(x) | ~T(x)")]);
        assert!(matches!(
            closure_with_cap(&[], &th, 5),
            Err(Error::ClosureBudgetExceeded { cap: 5 })
        ));
    }

    #[test]
    fn dot_output() {
        let th = theory(&[("I", "T(I)")]);
        let g = closure(&[], &th).unwrap();
        assert_eq!(
            export_dot(&g, None),
            "digraph {\n    n0 [label=\"T(I)\"];\n    n0 -> n0 [style=dashed];\n}\n"
        );
        let colored = export_dot(&g, Some(&[TruthValue::Undetermined]));
        assert!(colored.contains("fillcolor=gray"));

        let empty = closure(&[], &TheoryBuilder::new().build().unwrap()).unwrap();
        assert_eq!(export_dot(&empty, None), "digraph {\n}\n");
    }
}
