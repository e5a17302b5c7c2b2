use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Adjoint requested for an op that has none (barriers, measurements).
    #[error("op `{kind}` has no adjoint")]
    NoAdjoint { kind: &'static str },

    /// A matrix operation was given operands of different dimension.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// The circuit is too wide for the requested operation.
    #[error("circuit has {qubits} qubits, limit for this operation is {limit}")]
    TooManyQubits { qubits: usize, limit: usize },

    /// `unitary_of` was asked to fold a non-unitary op.
    #[error("op at index {index} (`{kind}`) has no unitary representation")]
    NonUnitaryOp { index: usize, kind: &'static str },

    /// An op index fell outside the circuit.
    #[error("op index {index} out of range for circuit with {len} ops")]
    IndexOutOfRange { index: usize, len: usize },

    /// Reversal was requested for a barrier or measurement.
    #[error("op at index {index} (`{kind}`) is not a reversible gate")]
    NotReversible { index: usize, kind: &'static str },

    /// Reversal amplification must be at least one.
    #[error("reversal count must be at least 1")]
    ZeroReversals,

    /// Group reversal was given an empty index set.
    #[error("group reversal requires a non-empty index set")]
    EmptyGroup,

    /// A non-member op on a member qubit sits between group members.
    #[error("op at index {blocker} interleaves with the group on a shared qubit")]
    NonContiguousGroup { blocker: usize },

    /// A transform would place inserted ops after an existing measurement.
    #[error("measurement at op index {measure_index} precedes the insertion point")]
    InsertAfterMeasure { measure_index: usize },

    /// The circuit failed structural validation.
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    /// A noise model failed validation or could not be parsed.
    #[error("invalid noise model: {0}")]
    InvalidNoiseModel(String),

    /// Distributions keyed over different register widths.
    #[error("distribution key lengths differ: {left} vs {right}")]
    KeyLengthMismatch { left: usize, right: usize },

    /// Paired samples of different length.
    #[error("sample lengths differ: {left} vs {right}")]
    SampleLengthMismatch { left: usize, right: usize },

    /// Too few samples for a statistic.
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },

    /// A statistic is undefined because one input has zero variance.
    #[error("degenerate input: {0} has zero variance")]
    DegenerateVariance(&'static str),

    /// A layer index does not exist in the schedule.
    #[error("layer {layer} does not exist (circuit has {depth} layers)")]
    UnknownLayer { layer: usize, depth: usize },

    /// A report query was given unusable parameters (empty report, bad
    /// threshold, zero k, missing record class).
    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    /// A suite execution lacks the result for one of the suite's variants.
    #[error("no result for variant of gate {gate_index}")]
    MissingVariant { gate_index: usize },

    /// A benchmark generator was given a malformed parameter.
    #[error("invalid benchmark parameter: {0}")]
    InvalidBenchmark(String),
}

pub type Result<T> = std::result::Result<T, Error>;
