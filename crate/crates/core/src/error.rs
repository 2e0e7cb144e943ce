use thiserror::Error;

/// Errors raised while constructing or validating graphs and instances.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("weight {value} on vertex {vertex} is not a positive finite number")]
    NonPositiveWeight { vertex: usize, value: f64 },
    #[error("invalid {family} parameters: {reason}")]
    InvalidFamily { family: &'static str, reason: String },
    #[error("exhaustive search limited to {limit} vertices, graph has {n}")]
    TooLarge { n: usize, limit: usize },
}

/// Errors raised while parsing serialized instances, embeddings, or QUBO files.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {source}")]
    Invalid {
        field: String,
        #[source]
        source: GraphError,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuboError {
    #[error("dimension mismatch: QUBO has {expected} variables, vector has {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index ({i}, {j}) outside a {n}-variable QUBO")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("penalty {penalty} must exceed the maximum vertex weight {max_weight}")]
    PenaltyTooSmall { penalty: f64, max_weight: f64 },
    #[error("cannot scale an all-zero QUBO")]
    AllZero,
    #[error("non-finite coefficient at ({i}, {j})")]
    NonFinite { i: usize, j: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbeddingError {
    #[error("no embedding found after {tries} restart(s)")]
    NotFound { tries: usize },
    #[error("invalid embedding: {0}")]
    Invalid(String),
    #[error("chain strength must be positive, got {0}")]
    ChainStrength(f64),
    #[error(transparent)]
    Qubo(#[from] QuboError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("QUBO has {qubo} variables but the hardware graph has {graph} qubits")]
    DimensionMismatch { qubo: usize, graph: usize },
    #[error("coupling ({0}, {1}) is not a hardware edge")]
    MissingCoupler(usize, usize),
    #[error("invalid sampler configuration: {0}")]
    Config(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TtsError {
    #[error("success probability is zero; repetitions to solution are undefined")]
    Unsolved,
    #[error("{name} = {value} is outside its valid range")]
    OutOfRange { name: &'static str, value: f64 },
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Qubo(#[from] QuboError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("instance has {0} unsolved weight assignment(s); ratios are unavailable")]
    Unsolved(usize),
    #[error("invalid instance: {0}")]
    Instance(String),
}
