use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by constructors and analyses.
///
/// Witness scalars are carried as `f64` so the error type stays independent
/// of the scalar parameter.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("scale must be positive and finite, got {0}")]
    NonPositiveScale(f64),

    #[error("invalid scale grid: {0}")]
    InvalidGrid(String),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires the {expected} regime")]
    WrongRegime { expected: &'static str },

    #[error("not a quasi-pseudometric: {axiom} fails at points {points:?} ({lhs} > {rhs})")]
    NotQuasiPseudometric {
        axiom: &'static str,
        points: Vec<usize>,
        lhs: f64,
        rhs: f64,
    },

    #[error("scale factor increases between {lower} and {upper} ({at_lower} < {at_upper})")]
    IncreasingScaleFactor {
        lower: f64,
        upper: f64,
        at_lower: f64,
        at_upper: f64,
    },

    #[error("nonmonotone gauge: value {at_smaller} at scale {smaller} is below value {at_larger} at scale {larger}")]
    NonMonotone {
        smaller: f64,
        larger: f64,
        at_smaller: f64,
        at_larger: f64,
    },

    #[error("profiles live on different scale grids")]
    GridMismatch,

    #[error("relations or topologies live on different point sets ({0} vs {1})")]
    PointSetMismatch(usize, usize),

    #[error("at most {max} points are supported, got {got}")]
    TooManyPoints { max: usize, got: usize },

    #[error("radius split {split} does not satisfy split (+) split < {radius}")]
    BadSplit { split: f64, radius: f64 },

    #[error("cover is not usable: {0}")]
    InvalidCover(String),

    #[error("cell of centers ({forward_center}, {backward_center}) is not inside the two-sided ball at {representative}: witness {witness}")]
    CellInclusion {
        forward_center: usize,
        backward_center: usize,
        representative: usize,
        witness: usize,
    },

    #[error("modulus condition fails on sample pair ({0}, {1})")]
    ModulusViolated(usize, usize),

    #[error("partial function has an empty domain")]
    EmptyDomain,

    #[error("missing value for `{0}`")]
    MissingValue(String),

    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}
