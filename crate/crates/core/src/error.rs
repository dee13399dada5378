use thiserror::Error;

/// Source position of a token, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {pos}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        pos: Pos,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbol { name: String, pos: Pos },
    #[error("`{symbol}` takes {expected} argument(s), found {found} at {pos}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
        pos: Pos,
    },
    #[error("duplicate declaration of `{0}`")]
    DuplicateDeclaration(String),
    #[error("`{0}` is reserved and cannot be declared")]
    Reserved(String),
    #[error("invalid theory: {0}")]
    InvalidTheory(String),
    #[error("term `{0}` is not closed")]
    OpenTerm(String),
    #[error("sentence constant `{0}` has no binding")]
    UnboundConstant(String),
    #[error("negation name applied to `{0}`, which does not denote a sentence")]
    NonSentenceNegName(String),
    #[error("`{0}` is not a base atom")]
    NotBaseAtom(String),
    #[error("sentence closure exceeded the cap of {cap} nodes")]
    ClosureBudgetExceeded { cap: usize },
    #[error(
        "fixed-point enumeration needs 3^{core_size} hypotheses, above the budget of {budget}"
    )]
    EnumerationBudgetExceeded { core_size: usize, budget: u64 },
    #[error("sentence `{0}` is outside the registered closure")]
    OutsideClosure(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{pos}: {err}")]
    At { pos: Pos, err: Box<Error> },
    #[error("{path}: {err}")]
    InFile { path: String, err: Box<Error> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
