use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: non-ground input: variable `{variable}` (only ground programs are accepted)")]
    NonGround { line: usize, column: usize, variable: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AspifError {
    #[error("line {line}: malformed header, expected `asp 1 0 0`")]
    MalformedHeader { line: usize },
    #[error("line {line}: unsupported statement type {kind}")]
    UnknownStatement { line: usize, kind: i64 },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: external value code {code} is not supported (only 2)")]
    ExternalValue { line: usize, code: i64 },
    #[error("missing `0` terminator")]
    MissingTerminator,
    #[error("line {line}: statement after the `0` terminator")]
    DanglingTerminator { line: usize },
}

/// Raised when the answer-set search would exceed its branching budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{nant} negated atoms exceed the branching cap of {cap}")]
pub struct ResourceError {
    pub nant: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplainError {
    #[error("interpretation is not an answer set of the program")]
    NotAnAnswerSet,
    #[error("program is inconsistent: it has no answer set")]
    Inconsistent,
    #[error("atom `{0}` does not occur in the program")]
    UnknownAtom(String),
    #[error("support table has no entry for `{0}`; it was built for another program or answer set")]
    MissingEntry(String),
    #[error("assumption `{0}` is true in the answer set")]
    AssumptionMismatch(String),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}
