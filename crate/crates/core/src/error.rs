use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid range: x_min ({x_min}) must be below x_max ({x_max})")]
    InvalidRange { x_min: f64, x_max: f64 },
    #[error("grid needs an odd number of points (at least 3), got {0}")]
    EvenPointCount(usize),
    #[error("sample count {got} does not match grid size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("sampled functions live on different grids")]
    GridMismatch,
    #[error("requested {requested} eigenvalues from a {size}x{size} operator")]
    KOutOfRange { requested: usize, size: usize },
    #[error("off-diagonal length {off} incompatible with diagonal length {diag}")]
    MalformedTridiagonal { diag: usize, off: usize },
    #[error("grid too narrow for n_max = {n_max}: need x_max >= {required:.4}, have x_max = {x_max}")]
    GridTooNarrow { n_max: usize, required: f64, x_max: f64 },
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("lambda = {0} lies in the forbidden closed interval [-1, 0]")]
    LambdaForbidden(f64),
    #[error("level n = {n} outside the allowed range {min}..={max}")]
    LevelOutOfRange { n: usize, min: usize, max: usize },
    #[error("truncation N = {truncation} exceeds the {available} available basis states")]
    TruncationExceedsBasis { truncation: usize, available: usize },
    #[error("block {block} exceeds matrix size {size}")]
    BlockOutOfRange { block: usize, size: usize },
    #[error("truncation N = {truncation} too small: {reason}")]
    TruncationTooSmall { truncation: usize, reason: String },
    #[error("squeeze magnitude r = {0} exceeds the supported range r <= 1")]
    SqueezeOutOfRange(f64),
    #[error("squeeze operator series did not converge after {0} terms")]
    SeriesNonconvergent(usize),
    #[error("state is not normalized: norm^2 = {0}")]
    NotNormalized(f64),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
