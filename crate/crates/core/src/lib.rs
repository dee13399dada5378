//! Three-valued and final semantics for a first-order language with a truth
//! predicate, evaluated over finite models.

pub mod analysis;
pub mod error;
pub mod finalsem;
pub mod fixpoint;
pub mod graph;
pub mod kleene;
pub mod laws;
pub mod model;
pub mod syntax;
pub mod theory_file;

pub use analysis::Analysis;
pub use error::{Error, Pos, Result};
pub use finalsem::{final_eval, verdict, FinalValuation, Resolution, Verdict};
pub use fixpoint::{FixpointReport, PrimaryValuation, DEFAULT_HYPOTHESIS_BUDGET};
pub use graph::DepGraph;
pub use kleene::{Hypothesis, TruthValue};
pub use model::{Theory, TheoryBuilder};
pub use syntax::{parse_sentence, Formula, Sentence, Term};
pub use theory_file::{load_theory, parse_theory};
