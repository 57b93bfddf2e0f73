use thiserror::Error;

use crate::model::FamilyReport;
use crate::rational::Rational;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational literal `{0}`")]
    MalformedRational(String),
    #[error("player set must not be empty")]
    NoPlayers,
    #[error("player name must not be empty")]
    EmptyPlayerName,
    #[error("duplicate player `{0}`")]
    DuplicatePlayer(String),
    #[error("{0} players exceed the bitset capacity of 64")]
    TooManyPlayers(usize),
    #[error("unknown player `{0}`")]
    UnknownPlayer(String),
    #[error("player index {index} out of range for {players} players")]
    PlayerOutOfRange { index: usize, players: usize },
    #[error("coalition must not be empty")]
    EmptyCoalition,
    #[error("invalid coalition family: {0}")]
    InvalidFamily(FamilyReport),
    #[error("coalition {0} is not in the family")]
    CoalitionNotInFamily(String),
    #[error("missing value for coalition {0}")]
    MissingGameValue(String),
    #[error("duplicate value for coalition {0}")]
    DuplicateGameValue(String),
    #[error("value given for coalition {0} outside the family")]
    ValueOutsideFamily(String),
    #[error("duplicate facility id `{0}`")]
    DuplicateFacilityId(String),
    #[error("allocation total {declared} differs from payoff sum {sum}")]
    UnbalancedAllocation { declared: Rational, sum: Rational },
    #[error("inputs are built over different player sets")]
    PlayerSetMismatch,
    #[error("expected {rows}x{cols} = {expected} matrix entries, got {got}")]
    BadMatrixShape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square")]
    NonSquareMatrix,
    #[error("facility `{id}` has user set {users} outside the family")]
    Unmeasurable { id: String, users: String },
    #[error("game lies outside the span of the family's meet games and has no representation")]
    NotRepresentable,
    #[error("coalition family does not have full span")]
    NotFullSpan,
    #[error("coalition family is not a semi-algebra")]
    NotSemiAlgebra,
    #[error("family is not canonical: every nonempty subset of the player set must carry a value")]
    NotCanonicalFamily,
    #[error("players must be distinct")]
    PlayersNotDistinct,
    #[error("partition {index} is invalid: {reason}")]
    InvalidPartition { index: usize, reason: String },
    #[error("{n} players exceed the subset enumeration guard of {guard}")]
    EnumerationGuard { n: usize, guard: usize },
    #[error("family of {size} coalitions exceeds the matrix guard of {guard}")]
    MatrixGuard { size: usize, guard: usize },
    #[error("family of {size} coalitions exceeds the hierarchy search guard of {guard}")]
    HierarchySearchGuard { size: usize, guard: usize },
    #[error("coalition of {size} members exceeds the partition enumeration guard of {guard}")]
    PartitionGuard { size: usize, guard: usize },
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
