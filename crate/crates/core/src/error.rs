use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NonHermitian { deviation: f64 },
    #[error("tensor product dimension {dim} exceeds the supported maximum of 8")]
    DimensionOverflow { dim: usize },
    #[error("bad dimension: expected {expected}, got {actual}")]
    BadDimension { expected: usize, actual: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("Kraus operators are not complete (max deviation {deviation:e})")]
    IncompleteKraus { deviation: f64 },
    #[error("channel strength {strength} outside [0, 1]")]
    BadStrength { strength: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("step too large: dt * max_rate = {product} exceeds 0.1")]
    StepTooLarge { product: f64 },
    #[error("integration diverged at t = {time}: {reason}")]
    NumericalDivergence { time: f64, reason: String },
    #[error("SDP is infeasible (phase-one value {phase_one_value:e})")]
    InfeasibleProblem { phase_one_value: f64 },
    #[error("SDP solver failure: {0}")]
    SolverFailure(String),
    #[error("SDP objective is unbounded below")]
    UnboundedProblem,
    #[error("dual certificate unavailable for a non-optimal solution")]
    CertificateUnavailable,
    #[error("series has {len} points, at least {min} required")]
    SeriesTooShort { len: usize, min: usize },
    #[error("gate file parse error on line {line}: {message}")]
    GateParse { line: usize, message: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("at t = {time}: {source}")]
    AtTime {
        time: f64,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Attaches the sweep time point at which this error occurred.
    pub fn at_time(self, time: f64) -> Self {
        Error::AtTime {
            time,
            source: Box::new(self),
        }
    }

    /// The error with any time annotations stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtTime { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self.root(),
            Error::NumericalDivergence { .. }
                | Error::InfeasibleProblem { .. }
                | Error::UnboundedProblem
                | Error::SolverFailure(_)
                | Error::CertificateUnavailable
                | Error::StepTooLarge { .. }
        )
    }
}
