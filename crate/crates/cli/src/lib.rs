//! Command-line front end. [`run`] does all the work and returns the text
//! to print plus an exit code, so it can be tested without a process.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use dualtruth::fixpoint::{least_fixed_point, maximal_intrinsic, PrimaryValuation};
use dualtruth::graph::{closure, export_dot, sccs, DepGraph};
use dualtruth::laws::{check_all, LawReport};
use dualtruth::{load_theory, parse_sentence, Error, FinalValuation, Sentence, Theory, TruthValue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_LAW_FAILURE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// At most this many fixed points are listed in a census.
pub const LISTING_LIMIT: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "dualtruth", version, about = "Primary and final semantics of self-referential theories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primary and final verdicts for sentences (default: every binding).
    Eval(Common),
    /// Fixed-point census and listing.
    Fixpoints(Common),
    /// Check the built-in law catalog.
    Laws(Common),
    /// Dependency graph summary, or Graphviz with --dot.
    Graph(Common),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Theory file.
    pub theory: PathBuf,
    /// Sentence to evaluate (repeatable).
    #[arg(short = 's', long = "sentence")]
    pub sentences: Vec<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Emit Graphviz DOT (graph command).
    #[arg(long)]
    pub dot: bool,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Maximum number of hypotheses to enumerate.
    #[arg(long, default_value_t = dualtruth::DEFAULT_HYPOTHESIS_BUDGET)]
    pub budget: u64,
    /// Add the query sentences to the closure before solving.
    #[arg(long)]
    pub seed_closure: bool,
    /// On a query outside the closure, re-solve with the queries seeded.
    #[arg(long)]
    pub auto_extend: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Eval(c) | Command::Fixpoints(c) | Command::Laws(c) | Command::Graph(c) => c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    /// Plain statement of the finite quantifier range.
    pub restriction: String,
    pub theory: String,
    pub domain_elements: usize,
    pub range_sentences: usize,
    pub closure_nodes: usize,
    pub core_size: usize,
    pub seeded: Vec<String>,
    /// False when the enumeration budget was exceeded and the least fixed
    /// point stands in for the primary semantics.
    pub primary_complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRow {
    pub name: Option<String>,
    pub sentence: String,
    /// `None` when the sentence is not in the closure.
    pub primary: Option<TruthValue>,
    #[serde(rename = "final")]
    pub final_value: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub core: Vec<String>,
    /// The counts and the maximal intrinsic point are `None` when the
    /// enumeration budget was exceeded.
    pub all: Option<usize>,
    pub intrinsic: Option<usize>,
    pub least: Vec<TruthValue>,
    pub maximal_intrinsic: Option<Vec<TruthValue>>,
    pub listing: Vec<FixedPointRow>,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointRow {
    pub values: Vec<TruthValue>,
    pub intrinsic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub cyclic_components: Vec<Vec<usize>>,
    pub primary: Vec<TruthValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub header: Header,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<VerdictRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<Census>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laws: Option<Vec<LawReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn input_error(e: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_INPUT }
    }
}

pub fn restriction_note(g: &DepGraph) -> String {
    format!(
        "finite model only: quantifiers range over {} domain element(s) and the {} sentence(s) \
         of the base closure, not over all sentences",
        g.range().base().len(),
        g.range().sentences().len()
    )
}

struct Solved {
    graph: DepGraph,
    primary: PrimaryValuation,
    report: Option<dualtruth::FixpointReport>,
}

fn solve(th: &Theory, seeds: &[Sentence], budget: u64) -> Result<Solved, Error> {
    let graph = closure(seeds, th)?;
    match maximal_intrinsic(&graph, budget) {
        Ok(report) => Ok(Solved { primary: report.primary.clone(), report: Some(report), graph }),
        Err(Error::EnumerationBudgetExceeded { .. }) => {
            let least = least_fixed_point(&graph);
            Ok(Solved { primary: PrimaryValuation::from_hypothesis(&graph, &least), report: None, graph })
        }
        Err(e) => Err(e),
    }
}

fn header(c: &Common, s: &Solved, seeds: &[Sentence]) -> Header {
    Header {
        restriction: restriction_note(&s.graph),
        theory: c.theory.display().to_string(),
        domain_elements: s.graph.range().base().len(),
        range_sentences: s.graph.range().sentences().len(),
        closure_nodes: s.graph.len(),
        core_size: s.graph.core().len(),
        seeded: seeds.iter().map(|s| s.to_string()).collect(),
        primary_complete: s.report.is_some(),
    }
}

fn verdict_rows(
    th: &Theory,
    s: &Solved,
    queries: &[(Option<String>, Sentence)],
) -> Result<Vec<VerdictRow>, Error> {
    let f = FinalValuation::registered(&s.primary, th);
    queries
        .iter()
        .map(|(name, q)| {
            Ok(VerdictRow {
                name: name.clone(),
                sentence: q.to_string(),
                primary: s.primary.get(q),
                final_value: f.eval(q)?,
            })
        })
        .collect()
}

fn census(g: &DepGraph, r: &dualtruth::FixpointReport) -> Census {
    Census {
        core: g.core_sentences().map(|s| s.to_string()).collect(),
        all: Some(r.all_fixed.len()),
        intrinsic: Some(r.intrinsic.len()),
        least: r.least.values().to_vec(),
        maximal_intrinsic: Some(r.maximal_intrinsic.values().to_vec()),
        listing: r
            .all_fixed
            .iter()
            .take(LISTING_LIMIT)
            .map(|h| FixedPointRow { values: h.values().to_vec(), intrinsic: r.intrinsic.contains(h) })
            .collect(),
        truncated: r.all_fixed.len() > LISTING_LIMIT,
    }
}

fn graph_summary(s: &Solved) -> GraphSummary {
    let g = &s.graph;
    GraphSummary {
        nodes: g.nodes().iter().map(|n| n.to_string()).collect(),
        edges: (0..g.len()).flat_map(|i| g.edges(i).into_iter().map(move |j| (i, j))).collect(),
        cyclic_components: sccs(g).into_iter().filter(|c| c.cyclic).map(|c| c.nodes).collect(),
        primary: node_values(s),
    }
}

fn node_values(s: &Solved) -> Vec<TruthValue> {
    s.graph
        .nodes()
        .iter()
        .map(|n| s.primary.get(n).unwrap_or(TruthValue::Undetermined))
        .collect()
}

/// Runs one command.
pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let c = cli.command.common();
    let th = match load_theory(&c.theory) {
        Ok(th) => th,
        Err(e) => return Outcome::input_error(e),
    };
    let mut queries = Vec::new();
    for text in &c.sentences {
        match parse_sentence(text, th.signature()) {
            Ok(s) => queries.push((None, s)),
            Err(e) => return Outcome::input_error(format!("in sentence {text:?}: {e}")),
        }
    }
    if queries.is_empty() && matches!(cli.command, Command::Eval(_)) {
        queries = th.bindings().map(|(n, s)| (Some(n.to_string()), s.clone())).collect();
    }
    let query_sentences: Vec<Sentence> = queries.iter().map(|(_, s)| s.clone()).collect();
    let mut seeds: Vec<Sentence> = if c.seed_closure { query_sentences.clone() } else { Vec::new() };

    let mut solved = match solve(&th, &seeds, c.budget) {
        Ok(s) => s,
        Err(e @ Error::ClosureBudgetExceeded { .. }) => {
            return Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_BUDGET }
        }
        Err(e) => return Outcome::input_error(e),
    };

    let mut report = RunReport {
        header: header(c, &solved, &seeds),
        verdicts: Vec::new(),
        census: None,
        laws: None,
        graph: None,
        timing_ms: None,
    };
    let mut code = if solved.report.is_some() { EXIT_OK } else { EXIT_BUDGET };

    match &cli.command {
        Command::Eval(_) => {
            let rows = match verdict_rows(&th, &solved, &queries) {
                Err(Error::OutsideClosure(_)) if c.auto_extend && seeds.is_empty() => {
                    seeds = query_sentences.clone();
                    solved = match solve(&th, &seeds, c.budget) {
                        Ok(s) => s,
                        Err(e) => return Outcome::input_error(e),
                    };
                    report.header = header(c, &solved, &seeds);
                    code = if solved.report.is_some() { EXIT_OK } else { EXIT_BUDGET };
                    verdict_rows(&th, &solved, &queries)
                }
                other => other,
            };
            match rows {
                Ok(rows) => report.verdicts = rows,
                Err(e @ Error::OutsideClosure(_)) => {
                    return Outcome::input_error(format!(
                        "{e}; rerun with --seed-closure or --auto-extend"
                    ))
                }
                Err(e) => return Outcome::input_error(e),
            }
        }
        Command::Fixpoints(_) => {
            report.census = Some(match &solved.report {
                Some(r) => census(&solved.graph, r),
                None => Census {
                    core: solved.graph.core_sentences().map(|s| s.to_string()).collect(),
                    all: None,
                    intrinsic: None,
                    least: least_fixed_point(&solved.graph).values().to_vec(),
                    maximal_intrinsic: None,
                    listing: Vec::new(),
                    truncated: false,
                },
            });
        }
        Command::Laws(_) => {
            if let Some(r) = &solved.report {
                let analysis = dualtruth::Analysis {
                    theory: th.clone(),
                    graph: solved.graph.clone(),
                    report: r.clone(),
                };
                match check_all(&analysis) {
                    Ok(laws) => {
                        if laws.iter().any(|l| !l.passed()) {
                            code = EXIT_LAW_FAILURE;
                        }
                        report.laws = Some(laws);
                    }
                    Err(e) => return Outcome::input_error(e),
                }
            }
        }
        Command::Graph(_) => {
            if c.dot {
                let mut out = String::new();
                let _ = writeln!(out, "// {}", c.theory.display());
                let _ = writeln!(out, "// {}", report.header.restriction);
                if !report.header.primary_complete {
                    let _ = writeln!(out, "// primary semantics incomplete: colors show the least fixed point");
                }
                out.push_str(&export_dot(&solved.graph, Some(&node_values(&solved))));
                return Outcome { stdout: out, stderr: String::new(), code };
            }
            report.graph = Some(graph_summary(&solved));
        }
    }

    if c.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let stdout = if c.json {
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    } else {
        render_text(&report)
    };
    Outcome { stdout, stderr: String::new(), code }
}

fn primary_cell(v: Option<TruthValue>) -> String {
    v.map_or_else(|| "not computed".to_string(), |v| v.to_string())
}

fn final_cell(b: bool) -> &'static str {
    if b {
        "⊤"
    } else {
        "⊥"
    }
}

/// Human-readable rendering.
pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let h = &r.header;
    let _ = writeln!(out, "# theory: {}", h.theory);
    let _ = writeln!(out, "# {}", h.restriction);
    let _ = writeln!(out, "# closure: {} sentence(s), core {}", h.closure_nodes, h.core_size);
    for s in &h.seeded {
        let _ = writeln!(out, "# seeded: {s}");
    }
    if !h.primary_complete {
        let _ = writeln!(
            out,
            "# primary semantics incomplete: enumeration budget exceeded, showing the least fixed point"
        );
    }
    if !r.verdicts.is_empty() {
        let _ = writeln!(out, "\nprimary\tfinal\tsentence");
        for v in &r.verdicts {
            let label = match &v.name {
                Some(n) => format!("{n} := {}", v.sentence),
                None => v.sentence.clone(),
            };
            let _ = writeln!(out, "{}\t{}\t{label}", primary_cell(v.primary), final_cell(v.final_value));
        }
    }
    if let Some(c) = &r.census {
        let count = |n: Option<usize>| n.map_or_else(|| "not computed".to_string(), |n| n.to_string());
        let _ = writeln!(out, "\nfixed points: {}\nintrinsic: {}", count(c.all), count(c.intrinsic));
        let _ = writeln!(out, "core:");
        for (i, s) in c.core.iter().enumerate() {
            let _ = writeln!(out, "  [{i}] {s}");
        }
        let row = |vs: &[TruthValue]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "least: {}", row(&c.least));
        if let Some(m) = &c.maximal_intrinsic {
            let _ = writeln!(out, "maximal intrinsic: {}", row(m));
            let _ = writeln!(out, "listing (* = intrinsic):");
        }
        for fp in &c.listing {
            let mark = if fp.intrinsic { "*" } else { " " };
            let _ = writeln!(out, "  {mark} {}", row(&fp.values));
        }
        if c.truncated {
            let _ = writeln!(out, "  ... {} more", c.all.unwrap_or(0) - c.listing.len());
        }
    }
    if let Some(laws) = &r.laws {
        let failed = laws.iter().filter(|l| !l.passed()).count();
        let _ = writeln!(out, "\nlaws: {} schema(s), {failed} failed", laws.len());
        for l in laws {
            let status = if l.passed() { "ok" } else { "FAIL" };
            let _ = writeln!(out, "  {status}\t{}\t{}\t{} instance(s)", l.family, l.schema, l.instances);
            for f in &l.failures {
                let _ = writeln!(out, "      false: {f}");
            }
        }
    }
    if let Some(g) = &r.graph {
        let _ = writeln!(out, "\nnodes:");
        for (i, n) in g.nodes.iter().enumerate() {
            let succ: Vec<String> =
                g.edges.iter().filter(|(a, _)| *a == i).map(|(_, b)| format!("n{b}")).collect();
            let _ = writeln!(out, "  n{i}\t{}\t{n}\t-> {}", g.primary[i], succ.join(" "));
        }
        let _ = writeln!(out, "cyclic components: {}", g.cyclic_components.len());
        for comp in &g.cyclic_components {
            let names: Vec<String> = comp.iter().map(|i| format!("n{i}")).collect();
            let _ = writeln!(out, "  {}", names.join(" "));
        }
    }
    if let Some(ms) = r.timing_ms {
        let _ = writeln!(out, "\ntime: {ms} ms");
    }
    out
}
