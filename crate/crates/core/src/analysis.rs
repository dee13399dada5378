//! One-call pipeline: closure, fixed points, and the valuations built on them.

use crate::error::Result;
use crate::finalsem::{FinalValuation, Verdict};
use crate::fixpoint::{maximal_intrinsic, FixpointReport};
use crate::graph::{closure, DepGraph};
use crate::model::Theory;
use crate::syntax::Sentence;

pub struct Analysis {
    pub theory: Theory,
    pub graph: DepGraph,
    pub report: FixpointReport,
}

impl Analysis {
    /// Builds the closure of the bindings plus `seeds` and computes the
    /// primary semantics on it.
    pub fn new(theory: Theory, seeds: &[Sentence], budget: u64) -> Result<Self> {
        let graph = closure(seeds, &theory)?;
        let report = maximal_intrinsic(&graph, budget)?;
        Ok(Analysis { theory, graph, report })
    }

    pub fn final_valuation(&self) -> FinalValuation<'_> {
        FinalValuation::registered(&self.report.primary, &self.theory)
    }

    pub fn verdict(&self, s: &Sentence) -> Result<Verdict> {
        crate::finalsem::verdict(s, &self.report, &self.theory)
    }
}
