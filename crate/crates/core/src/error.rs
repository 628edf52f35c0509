use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("network has {n} node(s); at least 2 are required")]
    DegenerateNetwork { n: usize },

    #[error("network is empty")]
    EmptyNetwork,

    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),

    #[error("edge ({from}, {to}) references a node outside [0, {n})")]
    NodeOutOfRange { from: usize, to: usize, n: usize },

    #[error("unknown institution `{0}`")]
    UnknownNode(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("dense oracle refuses N = {n} (limit {limit})")]
    OracleTooLarge { n: usize, limit: usize },

    #[error("line {line}: {message}")]
    MalformedRecord { line: usize, message: String },

    #[error("duplicate pub_id `{pub_id}` on lines {first_line} and {second_line}")]
    DuplicatePubId {
        pub_id: String,
        first_line: usize,
        second_line: usize,
    },

    #[error("no records")]
    NoRecords,

    #[error("no institution meets the publication threshold")]
    EmptyRetainedSet,

    #[error("all values are zero; cannot scale to 10000")]
    AllZero,

    #[error("negative value {value} in column `{column}`")]
    NegativeValue { column: String, value: f64 },

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("control variable is perfectly correlated with an input (|r| = 1)")]
    DegenerateControl,

    #[error("invalid correlation matrix: {0}")]
    InvalidCorrelationMatrix(String),

    #[error("table: {0}")]
    Table(String),

    #[error("unknown subject profile `{0}`")]
    UnknownSubject(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}
