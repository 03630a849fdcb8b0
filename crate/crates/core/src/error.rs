use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the two points coincide")]
    SamePoint,
    #[error("no parallel class {0}")]
    UnknownClass(String),
    #[error("general position needs at least 3 points, got {0}")]
    TooFew(usize),
    #[error("probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("clique parameter s = {0} is too small (need s >= {1})")]
    BadS(usize, usize),
    #[error("prime p = {p} is smaller than s = {s}")]
    PTooSmall { p: u64, s: usize },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAnEdge(usize, usize),
    #[error("the K_(s+2) audit needs s >= 4, got {0}")]
    STooSmall(usize),
    #[error("exact search is limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("subset size {w} does not fit a graph on {n} vertices (trials = {trials})")]
    BadSize { w: usize, n: usize, trials: usize },
    #[error("parameters out of range: {0}")]
    BadRange(String),
    #[error("no primes in [{0}, {1}]")]
    EmptyRange(u64, u64),
    #[error("log-domain overflow while evaluating {0}")]
    Overflow(String),
    #[error("removal set has {removed} vertices but only {budget} may be removed")]
    RemovalTooLarge { removed: usize, budget: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed {what}: {detail}")]
    Format { what: String, detail: String },
    #[error("unsupported format_version {found} (expected {expected})")]
    UnsupportedVersion { found: u64, expected: u64 },
}
