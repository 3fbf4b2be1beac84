use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("the empty pomset has no factorization")]
    EmptyPomset,

    #[error("poset is not series-parallel (it contains an N-shaped suborder)")]
    NotSeriesParallel,

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("missing sequential transition from state `{state}` on `{symbol}`")]
    Totality { state: String, symbol: String },

    #[error("state set is not closed: {0}")]
    NotClosed(String),

    #[error("automaton is not fork-acyclic; witness cycle: {}", .cycle.join(" -> "))]
    NotForkAcyclic { cycle: Vec<String> },

    #[error("state exploration exceeded the cap of {cap} states")]
    CapExceeded { cap: usize },

    #[error("unknown state `{0}`")]
    UnknownState(String),
}
