//! Catalog of schemas that hold in the final semantics, and a checker that
//! instantiates them over a theory's closure.
//!
//! Schemas quantifying over sentences are instantiated with the closure
//! sentences of the matching shape. The `∀`/`∃` table laws keep their
//! object-language quantifier (`∀x T([φ(x)])`), which ranges over the same
//! finite domain as the closure.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::error::Result;
use crate::finalsem::FinalValuation;
use crate::graph::DepGraph;
use crate::model::Theory;
use crate::syntax::{BinOp, Formula, Quantifier, Sentence, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Consistency,
    Table,
    Iteration,
    Grounding,
    NonSentence,
    BaseAtom,
    Description,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Consistency => "consistency",
            Family::Table => "table",
            Family::Iteration => "iteration",
            Family::Grounding => "grounding",
            Family::NonSentence => "nonsentence",
            Family::BaseAtom => "baseatom",
            Family::Description => "description",
        })
    }
}

type Instantiate = fn(&Theory, &DepGraph) -> Vec<Sentence>;

#[derive(Clone, Copy)]
pub struct LawSchema {
    pub name: &'static str,
    pub family: Family,
    /// Human-readable form with `φ`, `ψ` as placeholders.
    pub form: &'static str,
    instantiate: Instantiate,
}

impl fmt::Debug for LawSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LawSchema").field("name", &self.name).field("family", &self.family).finish()
    }
}

impl LawSchema {
    pub fn instantiate(&self, th: &Theory, g: &DepGraph) -> Vec<Sentence> {
        (self.instantiate)(th, g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub schema: String,
    pub family: Family,
    pub instances: usize,
    /// Instances that came out false.
    pub failures: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn q(f: &Formula) -> Term {
    Term::quote(f.clone())
}

fn tq(f: &Formula) -> Formula {
    Formula::Truth(q(f))
}

fn fq(f: &Formula) -> Formula {
    Formula::falsity(q(f))
}

fn uq(f: &Formula) -> Formula {
    Formula::undetermined(q(f))
}

fn dq(f: &Formula) -> Formula {
    Formula::determinate(q(f))
}

fn each_node(g: &DepGraph, law: impl Fn(&Formula) -> Formula) -> Vec<Sentence> {
    g.nodes().iter().map(law).collect()
}

fn negations(g: &DepGraph, lhs: fn(&Formula) -> Formula, rhs: fn(&Formula) -> Formula) -> Vec<Sentence> {
    g.nodes()
        .iter()
        .filter_map(|n| match n {
            Formula::Not(a) => Some(Formula::iff(lhs(n), rhs(a))),
            _ => None,
        })
        .collect()
}

fn binaries(
    g: &DepGraph,
    op: BinOp,
    lhs: fn(&Formula) -> Formula,
    rhs: fn(&Formula, &Formula) -> Formula,
) -> Vec<Sentence> {
    g.nodes()
        .iter()
        .filter_map(|n| match n {
            Formula::Binary(o, a, b) if *o == op => Some(Formula::iff(lhs(n), rhs(a, b))),
            _ => None,
        })
        .collect()
}

fn quantified(
    g: &DepGraph,
    quant: Quantifier,
    lhs: fn(&Formula) -> Formula,
    rhs: fn(&str, &Formula) -> Formula,
) -> Vec<Sentence> {
    g.nodes()
        .iter()
        .filter_map(|n| match n {
            Formula::Quant(qq, x, body) if *qq == quant => Some(Formula::iff(lhs(n), rhs(x, body))),
            _ => None,
        })
        .collect()
}

fn all(x: &str, f: Formula) -> Formula {
    Formula::quant(Quantifier::Forall, x, f)
}

fn some(x: &str, f: Formula) -> Formula {
    Formula::quant(Quantifier::Exists, x, f)
}

fn base_atoms(g: &DepGraph, law: fn(&Formula) -> Formula) -> Vec<Sentence> {
    g.nodes()
        .iter()
        .filter(|n| matches!(n, Formula::Pred(..) | Formula::IsSentence(_)))
        .map(law)
        .collect()
}

fn descriptions(th: &Theory, law: fn(Term, &Formula) -> Formula) -> Vec<Sentence> {
    th.bindings().map(|(c, d)| law(Term::SentConst(c.to_string()), d)).collect()
}

macro_rules! law {
    ($name:expr, $family:ident, $form:expr, $inst:expr) => {
        LawSchema { name: $name, family: Family::$family, form: $form, instantiate: $inst }
    };
}

/// Every built-in schema, in report order.
pub fn catalog() -> Vec<LawSchema> {
    use BinOp::*;
    vec![
        law!("consistency", Consistency, "~(T(φ) & F(φ))", |_, g| each_node(g, |p| {
            Formula::not(Formula::and(tq(p), fq(p)))
        })),
        // negation
        law!("not-T", Table, "T(~φ) <-> F(φ)", |_, g| negations(g, tq, fq)),
        law!("not-F", Table, "F(~φ) <-> T(φ)", |_, g| negations(g, fq, tq)),
        law!("not-U", Table, "U(~φ) <-> U(φ)", |_, g| negations(g, uq, uq)),
        // conjunction
        law!("and-T", Table, "T(φ & ψ) <-> T(φ) & T(ψ)", |_, g| {
            binaries(g, And, tq, |a, b| Formula::and(tq(a), tq(b)))
        }),
        law!("and-F", Table, "F(φ & ψ) <-> F(φ) | F(ψ)", |_, g| {
            binaries(g, And, fq, |a, b| Formula::or(fq(a), fq(b)))
        }),
        law!("and-U", Table, "U(φ & ψ) <-> (T(φ) & U(ψ)) | (U(φ) & T(ψ)) | (U(φ) & U(ψ))", |_, g| {
            binaries(g, And, uq, |a, b| {
                Formula::or(
                    Formula::or(Formula::and(tq(a), uq(b)), Formula::and(uq(a), tq(b))),
                    Formula::and(uq(a), uq(b)),
                )
            })
        }),
        // disjunction
        law!("or-T", Table, "T(φ | ψ) <-> T(φ) | T(ψ)", |_, g| {
            binaries(g, Or, tq, |a, b| Formula::or(tq(a), tq(b)))
        }),
        law!("or-F", Table, "F(φ | ψ) <-> F(φ) & F(ψ)", |_, g| {
            binaries(g, Or, fq, |a, b| Formula::and(fq(a), fq(b)))
        }),
        law!("or-U", Table, "U(φ | ψ) <-> (F(φ) & U(ψ)) | (U(φ) & F(ψ)) | (U(φ) & U(ψ))", |_, g| {
            binaries(g, Or, uq, |a, b| {
                Formula::or(
                    Formula::or(Formula::and(fq(a), uq(b)), Formula::and(uq(a), fq(b))),
                    Formula::and(uq(a), uq(b)),
                )
            })
        }),
        // conditional
        law!("implies-T", Table, "T(φ -> ψ) <-> F(φ) | T(ψ)", |_, g| {
            binaries(g, Implies, tq, |a, b| Formula::or(fq(a), tq(b)))
        }),
        law!("implies-F", Table, "F(φ -> ψ) <-> T(φ) & F(ψ)", |_, g| {
            binaries(g, Implies, fq, |a, b| Formula::and(tq(a), fq(b)))
        }),
        law!("implies-U", Table, "U(φ -> ψ) <-> (T(φ) & U(ψ)) | (U(φ) & F(ψ)) | (U(φ) & U(ψ))", |_, g| {
            binaries(g, Implies, uq, |a, b| {
                Formula::or(
                    Formula::or(Formula::and(tq(a), uq(b)), Formula::and(uq(a), fq(b))),
                    Formula::and(uq(a), uq(b)),
                )
            })
        }),
        // biconditional
        law!("iff-T", Table, "T(φ <-> ψ) <-> (T(φ) & T(ψ)) | (F(φ) & F(ψ))", |_, g| {
            binaries(g, Iff, tq, |a, b| {
                Formula::or(Formula::and(tq(a), tq(b)), Formula::and(fq(a), fq(b)))
            })
        }),
        law!("iff-F", Table, "F(φ <-> ψ) <-> (T(φ) & F(ψ)) | (F(φ) & T(ψ))", |_, g| {
            binaries(g, Iff, fq, |a, b| {
                Formula::or(Formula::and(tq(a), fq(b)), Formula::and(fq(a), tq(b)))
            })
        }),
        law!("iff-U", Table, "U(φ <-> ψ) <-> U(φ) | U(ψ)", |_, g| {
            binaries(g, Iff, uq, |a, b| Formula::or(uq(a), uq(b)))
        }),
        // universal quantifier
        law!("forall-T", Table, "T(forall x. φ) <-> forall x. T(φ(x))", |_, g| {
            quantified(g, Quantifier::Forall, tq, |x, b| all(x, tq(b)))
        }),
        law!("forall-F", Table, "F(forall x. φ) <-> exists x. F(φ(x))", |_, g| {
            quantified(g, Quantifier::Forall, fq, |x, b| some(x, fq(b)))
        }),
        law!("forall-U", Table, "U(forall x. φ) <-> ~(exists x. F(φ(x))) & exists x. U(φ(x))", |_, g| {
            quantified(g, Quantifier::Forall, uq, |x, b| {
                Formula::and(Formula::not(some(x, fq(b))), some(x, uq(b)))
            })
        }),
        // existential quantifier
        law!("exists-T", Table, "T(exists x. φ) <-> exists x. T(φ(x))", |_, g| {
            quantified(g, Quantifier::Exists, tq, |x, b| some(x, tq(b)))
        }),
        law!("exists-F", Table, "F(exists x. φ) <-> forall x. F(φ(x))", |_, g| {
            quantified(g, Quantifier::Exists, fq, |x, b| all(x, fq(b)))
        }),
        law!("exists-U", Table, "U(exists x. φ) <-> ~(exists x. T(φ(x))) & exists x. U(φ(x))", |_, g| {
            quantified(g, Quantifier::Exists, uq, |x, b| {
                Formula::and(Formula::not(some(x, tq(b))), some(x, uq(b)))
            })
        }),
        // iterated truth
        law!("TT", Iteration, "T(T(φ)) <-> T(φ)", |_, g| each_node(g, |p| Formula::iff(tq(&tq(p)), tq(p)))),
        law!("FT", Iteration, "F(T(φ)) <-> F(φ)", |_, g| each_node(g, |p| Formula::iff(fq(&tq(p)), fq(p)))),
        law!("TF", Iteration, "T(F(φ)) <-> F(φ)", |_, g| each_node(g, |p| Formula::iff(tq(&fq(p)), fq(p)))),
        law!("FF", Iteration, "F(F(φ)) <-> T(φ)", |_, g| each_node(g, |p| Formula::iff(fq(&fq(p)), tq(p)))),
        law!("UT", Iteration, "U(T(φ)) <-> U(φ)", |_, g| each_node(g, |p| Formula::iff(uq(&tq(p)), uq(p)))),
        law!("UF", Iteration, "U(F(φ)) <-> U(φ)", |_, g| each_node(g, |p| Formula::iff(uq(&fq(p)), uq(p)))),
        // primary truths persist
        law!("T-elim", Grounding, "T(φ) -> φ", |_, g| each_node(g, |p| Formula::implies(tq(p), p.clone()))),
        law!("F-elim", Grounding, "F(φ) -> ~φ", |_, g| {
            each_node(g, |p| Formula::implies(fq(p), Formula::not(p.clone())))
        }),
        law!("determinate-converse", Grounding, "D(φ) -> (T(φ) <-> φ) & (F(φ) <-> ~φ)", |_, g| {
            each_node(g, |p| {
                Formula::implies(
                    dq(p),
                    Formula::and(Formula::iff(tq(p), p.clone()), Formula::iff(fq(p), Formula::not(p.clone()))),
                )
            })
        }),
        law!("non-sentence", NonSentence, "~T(t) & ~F(t) for t not naming a sentence", |th, _| {
            th.base_names()
                .into_iter()
                .map(|t| {
                    Formula::and(
                        Formula::not(Formula::Truth(t.clone())),
                        Formula::not(Formula::falsity(t)),
                    )
                })
                .collect()
        }),
        law!("base-T", BaseAtom, "T(ψ) <-> ψ for T-free atomic ψ", |_, g| {
            base_atoms(g, |p| Formula::iff(tq(p), p.clone()))
        }),
        law!("base-F", BaseAtom, "F(ψ) <-> ~ψ for T-free atomic ψ", |_, g| {
            base_atoms(g, |p| Formula::iff(fq(p), Formula::not(p.clone())))
        }),
        law!("describe-T", Description, "T(C) -> d(C)", |th, _| {
            descriptions(th, |c, d| Formula::implies(Formula::Truth(c), d.clone()))
        }),
        law!("describe-F", Description, "F(C) -> ~d(C)", |th, _| {
            descriptions(th, |c, d| Formula::implies(Formula::falsity(c), Formula::not(d.clone())))
        }),
    ]
}

fn check_instances(
    schema: &str,
    family: Family,
    instances: &[Sentence],
    f: &FinalValuation<'_>,
) -> Result<LawReport> {
    let mut failures = Vec::new();
    for s in instances {
        if !f.eval(s)? {
            failures.push(s.to_string());
        }
    }
    Ok(LawReport { schema: schema.to_string(), family, instances: instances.len(), failures })
}

/// Evaluates every instance of `schema` in the final semantics. Primary
/// values of sentences outside the closure are derived from the closure.
pub fn check_schema(schema: &LawSchema, a: &Analysis) -> Result<LawReport> {
    let f = FinalValuation::derived(&a.report.primary, &a.theory);
    check_instances(schema.name, schema.family, &schema.instantiate(&a.theory, &a.graph), &f)
}

/// Runs the whole catalog.
pub fn check_all(a: &Analysis) -> Result<Vec<LawReport>> {
    let f = FinalValuation::derived(&a.report.primary, &a.theory);
    catalog()
        .iter()
        .map(|s| check_instances(s.name, s.family, &s.instantiate(&a.theory, &a.graph), &f))
        .collect()
}

/// The three biconditionals `T/F/U(φ1) <-> T/F/U(φ2)`. A diagnostic only:
/// classically equivalent sentences can differ under Strong Kleene.
pub fn check_equivalence_transfer(phi1: &Sentence, phi2: &Sentence, a: &Analysis) -> Result<LawReport> {
    let f = FinalValuation::derived(&a.report.primary, &a.theory);
    let instances = [
        Formula::iff(tq(phi1), tq(phi2)),
        Formula::iff(fq(phi1), fq(phi2)),
        Formula::iff(uq(phi1), uq(phi2)),
    ];
    check_instances("equivalence-transfer", Family::Table, &instances, &f)
}

/// `T(φ) <-> φ`.
pub fn tarski_instance(phi: &Sentence) -> Sentence {
    Formula::iff(tq(phi), phi.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixpoint::DEFAULT_HYPOTHESIS_BUDGET;
    use crate::model::TheoryBuilder;
    use crate::syntax::parse_sentence;

    fn analysis(preds: &[(&str, usize, Vec<Vec<String>>)], lets: &[(&str, &str)], seeds: &[&str]) -> Analysis {
        let mut b = TheoryBuilder::new();
        for e in ["a", "b"] {
            b.domain_element(e).unwrap();
        }
        for (p, n, ext) in preds {
            b.predicate(p, *n, ext.clone()).unwrap();
        }
        for (n, _) in lets {
            b.sentence_constant(n).unwrap();
        }
        for (n, text) in lets {
            let s = parse_sentence(text, b.signature()).unwrap();
            b.bind(n, s).unwrap();
        }
        let th = b.build().unwrap();
        let seeds: Vec<_> = seeds.iter().map(|s| parse_sentence(s, th.signature()).unwrap()).collect();
        Analysis::new(th, &seeds, DEFAULT_HYPOTHESIS_BUDGET).unwrap()
    }

    fn p_ext() -> Vec<Vec<String>> {
        vec![vec!["a".to_string()]]
    }

    #[test]
    fn coverage_lock() {
        let cat = catalog();
        let names: Vec<_> = cat.iter().map(|s| s.name).collect();
        let expected = [
            "consistency", "not-T", "not-F", "not-U", "and-T", "and-F", "and-U", "or-T", "or-F", "or-U",
            "implies-T", "implies-F", "implies-U", "iff-T", "iff-F", "iff-U", "forall-T", "forall-F",
            "forall-U", "exists-T", "exists-F", "exists-U", "TT", "FT", "TF", "FF", "UT", "UF", "T-elim",
            "F-elim", "determinate-converse", "non-sentence", "base-T", "base-F", "describe-T", "describe-F",
        ];
        assert_eq!(names, expected);
        let count = |f| cat.iter().filter(|s| s.family == f).count();
        assert_eq!(count(Family::Consistency), 1);
        assert_eq!(count(Family::Table), 21);
        assert_eq!(count(Family::Iteration), 6);
        assert_eq!(count(Family::Grounding), 3);
        assert_eq!(count(Family::NonSentence), 1);
        assert_eq!(count(Family::BaseAtom), 2);
        assert_eq!(count(Family::Description), 2);
    }

    #[test]
    fn consistency_on_liar() {
        let a = analysis(&[], &[("L", "T(nL)"), ("nL", "~T(nL)")], &[]);
        let r = check_schema(&catalog()[0], &a).unwrap();
        assert_eq!(r.instances, 2);
        assert!(r.passed());
    }

    #[test]
    fn whole_catalog_on_mixed_theory() {
        let a = analysis(
            &[("P", 1, p_ext()), ("l", 0, vec![])],
            &[
                ("LL", "~T(LL)"),
                ("Log", "T(Log) | F(Log)"),
                ("Q", "forall x. P(x) -> T(Log)"),
                ("E", "exists x. ~P(x) & ~T(LL)"),
                ("G", "(P(a) <-> l()) & (T(LL) -> P(b))"),
            ],
            &[],
        );
        for r in check_all(&a).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.schema, r.failures);
            if r.family == Family::Table {
                assert!(r.instances > 0 || r.schema.starts_with("iff"), "{} has no instances", r.schema);
            }
        }
    }

    #[test]
    fn description_pair_on_strong_liar() {
        let a = analysis(&[], &[("LL", "~T(LL)")], &[]);
        let schema = catalog().into_iter().find(|s| s.name == "describe-T").unwrap();
        let inst = schema.instantiate(&a.theory, &a.graph);
        assert_eq!(inst.len(), 1);
        assert_eq!(inst[0].to_string(), "T(LL) -> ~T(LL)");
        assert!(check_schema(&schema, &a).unwrap().passed());
    }

    #[test]
    fn tarski_fails_on_strong_liar() {
        let a = analysis(&[], &[("LL", "~T(LL)")], &[]);
        let ll = a.theory.binding("LL").unwrap().clone();
        let f = FinalValuation::derived(&a.report.primary, &a.theory);
        assert!(!f.eval(&tarski_instance(&ll)).unwrap());
    }

    #[test]
    fn equivalence_transfer_diagnostic() {
        let a = analysis(
            &[("P", 1, p_ext())],
            &[("L", "T(nL)"), ("nL", "~T(nL)")],
            &["T(L) | ~T(L)", "P(a)", "~~P(a)"],
        );
        let sig = a.theory.signature();
        let taut = parse_sentence("T(L) | ~T(L)", sig).unwrap();
        let pa = parse_sentence("P(a)", sig).unwrap();
        let nnpa = parse_sentence("~~P(a)", sig).unwrap();
        assert!(check_equivalence_transfer(&pa, &pa, &a).unwrap().passed());
        assert!(!check_equivalence_transfer(&taut, &pa, &a).unwrap().passed());
        assert!(check_equivalence_transfer(&nnpa, &pa, &a).unwrap().passed());
    }
}
