use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A facet normal with a coordinate <= 0: the complement would be unbounded.
    #[error("normal #{index} {normal:?} has a non-positive coordinate (infinite covolume)")]
    NonPositiveNormal { index: usize, normal: Vec<f64> },

    #[error("generator #{index} {generator:?} has a non-negative coordinate")]
    NonNegativeGenerator { index: usize, generator: Vec<f64> },

    #[error("complement is unbounded: facet normal {normal:?} has a zero coordinate")]
    NotCobounded { normal: Vec<f64> },

    #[error("the origin cannot be completed to a cobounded hull")]
    Infeasible,

    #[error("point #{index} {point:?} lies outside the closed {cone} orthant")]
    PointOutsideCone {
        index: usize,
        point: Vec<f64>,
        cone: &'static str,
    },

    #[error("vertex enumeration needs {subsets} constraint subsets, budget is {cap}")]
    DimensionOverflow { subsets: u128, cap: u128 },

    #[error("t = {0} is out of range")]
    TOutOfRange(f64),

    #[error("the full orthant has an empty copolar")]
    FullOrthant,

    #[error("grid function has no finite value")]
    AllInfinite,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("no grid node reaches the -1 sublevel")]
    EmptySublevel,

    #[error("generator {generator:?} lies outside the truncation box [-{extent}, 0]^n")]
    TruncationTooSmall { generator: Vec<f64>, extent: f64 },

    #[error("invalid exponent set: {0}")]
    InvalidExponents(String),

    #[error("malformed input: {0}")]
    Parse(String),
}
