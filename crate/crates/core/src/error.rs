use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("number of variables must be at least 1 (got {0})")]
    ZeroVariables(u32),

    #[error("k must be at least 1 (got {0})")]
    ZeroOrder(u32),

    #[error("{what} = {value} exceeds the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("truth table has {got} entries, expected 2^{n} = {expected}")]
    TableLength { n: u32, expected: usize, got: usize },

    #[error("value {value} at index {index} is not in Z_{q}")]
    ValueOutOfRange { index: usize, value: u32, q: u32 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mixed moduli: q = 2^{left} vs q = 2^{right}")]
    MixedOrder { left: u32, right: u32 },

    #[error("integer overflow in cyclotomic arithmetic")]
    Overflow,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable x{index} at position {pos} is out of range 1..={n}")]
    VariableOutOfRange { index: usize, pos: usize, n: u32 },

    #[error("entry {index} of the inverse transform is not a q-th root of unity")]
    NotRootOfUnity { index: usize },

    #[error("value is not divisible by {divisor}")]
    NotDivisible { divisor: i64 },

    #[error("weight {weight} is not in Z_{q}")]
    WeightOutOfRange { weight: u32, q: u32 },

    #[error("weight classes overlap at {0}")]
    OverlappingClasses(u32),

    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed input at line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("exhaustive scope of {size} functions exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
