use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("action is not effective: weights have gcd {gcd}")]
    NotEffective { gcd: u64 },
    #[error("action has no nontrivial weights (m = 0)")]
    EmptyAction,
    #[error("index {index} out of range for m = {m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exponent vector is not invariant (circle weight {weight})")]
    NotInvariant { weight: i64 },
    #[error("weights {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("stratum `{0}` is the distinguished stratum")]
    DistinguishedStratum(String),
    #[error("unknown stratum `{0}`")]
    UnknownStratum(String),
    #[error("diagram has no distinguished (infinite-order) stratum")]
    NoDistinguishedStratum,
    #[error("n - trivial_dim = {0} is odd")]
    ParityError(usize),
    #[error("stratum `{stratum}` gets negative multiplicity {value}")]
    NegativeMultiplicity { stratum: String, value: i64 },
    #[error("recovered {got} weights, expected m = {expected}")]
    CountMismatch { expected: usize, got: usize },
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
