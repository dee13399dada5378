use std::collections::BTreeSet;

use dualtruth::fixpoint::{classical_restriction, enumerate_fixed_points, least_fixed_point};
use dualtruth::graph::{closure, export_dot, sccs, NodeKind};
use dualtruth::kleene::{jump, kleene_eval, Hypothesis};
use dualtruth::{
    load_theory, parse_sentence, parse_theory, Analysis, Theory, TruthValue, DEFAULT_HYPOTHESIS_BUDGET,
};

use TruthValue::{False as F, True as T, Undetermined as U};

fn bundled(name: &str) -> Theory {
    load_theory(format!("{}/../../theories/{name}.th", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn bundled_files_load() {
    assert_eq!(bundled("liar").bindings().count(), 1);
    let ll = bundled("strong_liar");
    assert_eq!(ll.binding("LL").unwrap().to_string(), "~T(LL)");
    assert_eq!(bundled("curry").predicate_extension("l").map(|e| e.len()), Some(0));
}

#[test]
fn liar_graph() {
    let th = bundled("liar");
    let g = closure(&[], &th).unwrap();
    let nodes: Vec<String> = g.nodes().iter().map(|s| s.to_string()).collect();
    assert_eq!(nodes, ["F(L)", "~F(L)"]);
    assert_eq!(g.edges(0), [1]);
    assert_eq!(g.edges(1), [0]);
    let comps = sccs(&g);
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].nodes.len(), 2);
    assert!(export_dot(&g, None).contains("n1 -> n0;"));
    // h(~L) = ⊤ jumps to ⊥
    assert_eq!(jump(&Hypothesis::new(vec![T]), &g), Hypothesis::new(vec![F]));
    let l = th.binding("L").unwrap();
    assert_eq!(kleene_eval(l, &Hypothesis::undetermined(1), &g).unwrap(), U);
}

#[test]
fn truthteller_graph_has_a_self_loop() {
    let g = closure(&[], &bundled("truthteller")).unwrap();
    assert_eq!(g.len(), 1);
    assert_eq!(g.edges(0), [0]);
    assert!(sccs(&g)[0].cyclic);
    assert!(export_dot(&g, None).contains("n0 -> n0 [style=dashed];"));
}

#[test]
fn grounded_arithmetic() {
    let th = parse_theory(
        "domain 0 1 2 3\n\
         pred =/2 = { (0,0) (1,1) (2,2) (3,3) }\n\
         fun plus/2 = { (0,0)->0 (0,1)->1 (0,2)->2 (0,3)->3 (1,0)->1 (1,1)->2 (1,2)->3 (1,3)->3 \
                        (2,0)->2 (2,1)->3 (2,2)->3 (2,3)->3 (3,0)->3 (3,1)->3 (3,2)->3 (3,3)->3 }\n",
    )
    .unwrap();
    let seed = parse_sentence("T([plus(1, 1) = 3])", th.signature()).unwrap();
    let g = closure(std::slice::from_ref(&seed), &th).unwrap();
    assert_eq!(g.len(), 2);
    assert!(sccs(&g).iter().all(|c| !c.cyclic && c.nodes.len() == 1));
    assert_eq!(least_fixed_point(&g).values(), [F]);
    let a = Analysis::new(th, std::slice::from_ref(&seed), DEFAULT_HYPOTHESIS_BUDGET).unwrap();
    let partial = classical_restriction(&a.report.primary);
    assert_eq!(partial.values.len(), 2);
    assert_eq!(partial.values.get(&seed), Some(&false));
    let v = a.verdict(&seed).unwrap();
    assert_eq!((v.primary, v.final_value), (Some(F), false));
}

#[test]
fn kleene_examples_with_the_liar() {
    let th = parse_theory("domain 0\npred =/2 = { (0,0) }\nlet L := F(L)").unwrap();
    let or = parse_sentence("F(L) | 0 = 0", th.signature()).unwrap();
    let and = parse_sentence("F(L) & 0 = 0", th.signature()).unwrap();
    let g = closure(&[or.clone(), and.clone()], &th).unwrap();
    let h = Hypothesis::undetermined(g.core().len());
    assert_eq!(kleene_eval(&or, &h, &g).unwrap(), T);
    assert_eq!(kleene_eval(&and, &h, &g).unwrap(), U);
}

#[test]
fn logician_graph_is_one_component() {
    let th = bundled("logician");
    let g = closure(&[], &th).unwrap();
    assert_eq!(g.len(), 4);
    assert_eq!(g.core().len(), 2);
    let comps = sccs(&g);
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].nodes.len(), 4);
    assert_eq!(enumerate_fixed_points(&g, DEFAULT_HYPOTHESIS_BUDGET).unwrap().len(), 2);
}

#[test]
fn closure_is_monotone_and_order_independent() {
    let th = parse_theory("domain a b\npred P/1 = { (a) }\nlet A := forall x. P(x) -> T(B)\nlet B := ~T(A)").unwrap();
    let s1 = parse_sentence("T([P(b)])", th.signature()).unwrap();
    let s2 = parse_sentence("exists y. T(y)", th.signature()).unwrap();
    let nodes = |seeds: &[dualtruth::Sentence]| -> BTreeSet<_> {
        closure(seeds, &th).unwrap().nodes().iter().cloned().collect()
    };
    let small = nodes(std::slice::from_ref(&s1));
    let big = nodes(&[s1.clone(), s2.clone()]);
    assert!(small.is_subset(&big));
    assert_eq!(big, nodes(&[s2, s1]));
}

#[test]
fn structural_edges_are_acyclic() {
    let th = parse_theory("domain a\npred P/1\nlet A := T(A) & exists x. P(x) | F(B)\nlet B := ~(T(A) <-> T(B))").unwrap();
    let g = closure(&[], &th).unwrap();
    for n in 0..g.len() {
        if !matches!(g.kind(n), NodeKind::Truth(_)) {
            let d = g.sentence(n).logical_depth();
            assert!(g.edges(n).iter().all(|&m| g.sentence(m).logical_depth() < d));
        }
    }
}
