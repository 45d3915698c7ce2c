use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid rational {0:?}")]
    ParseRational(String),
    #[error("erosion window [{lo}, {hi}] has lo > hi")]
    InvalidWindow { lo: String, hi: String },
    #[error("interval [{lo}, {hi}] has lo > hi")]
    InvalidInterval { lo: String, hi: String },
    #[error("malformed step profile: {0}")]
    InvalidProfile(String),
    #[error("slope band requires alpha < beta, got ({alpha}, {beta})")]
    InvalidBand { alpha: String, beta: String },
    #[error("gate at x = {x} has m = {m} > M = {top}")]
    InvalidGate { x: String, m: String, top: String },
    #[error("oracle budget exceeded: {gates} gates at or right of the query (limit {limit})")]
    OracleBudget { gates: usize, limit: usize },
    #[error("polygonal curve needs at least 2 vertices, got {0}")]
    CurveTooShort(usize),
    #[error("curve abscissas must strictly increase (vertex {index})")]
    NonIncreasingAbscissa { index: usize },
    #[error("segment endpoints need x_A < x_B")]
    DegenerateSegment,
    #[error("sequence {name} is not strictly increasing below its limit at index {index}")]
    NotIncreasing { name: &'static str, index: usize },
    #[error("prefix length {requested} exceeds stored length {stored}")]
    PrefixTooLong { requested: usize, stored: usize },
    #[error("parameter {name} out of range: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("premise violated at index {index}: {reason}")]
    Premise { index: usize, reason: String },
    #[error("stored prefixes exhausted after {rounds} rounds (error {error} above precision)")]
    Exhausted { rounds: usize, error: Rational },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
