use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^31")]
    NonPrimeModulus(u64),
    #[error("relation #{index} is not homogeneous: {poly}")]
    InhomogeneousRelation { index: usize, poly: String },
    #[error("inhomogeneous input: {0}")]
    InhomogeneousInput(String),
    #[error("inhomogeneous element: {0}")]
    InhomogeneousElement(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("differential squares to a nonzero map at degree {degree}")]
    DifferentialSquareNonzero { degree: i32 },
    #[error("not a chain map: square at degree {degree} does not commute")]
    NotAChainMap { degree: i32 },
    #[error("element #{index} is not in the ideal; normal form {remainder}")]
    NotInIdeal { index: usize, remainder: String },
    #[error("truncation bound {0} is too small")]
    TruncationTooSmall(usize),
    #[error("not a Koszul resolution: {0}")]
    NotKoszulResolution(String),
    #[error("not semiprojective: {0}")]
    NotSemiprojective(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("ring is not a certified complete intersection: {0}")]
    NotCertifiedCI(String),
    #[error("resolution window {0} cannot host a degree -2 operator")]
    WindowTooSmall(usize),
    #[error("minimized complex is not perfect within bound {bound}")]
    NotPerfectAtBound { bound: usize },
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("inhomogeneous entry at {line}:{col}: {msg}")]
    InhomogeneousEntry { line: usize, col: usize, msg: String },
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrimeModulus(_) => "NonPrimeModulus",
            Error::InhomogeneousRelation { .. } => "InhomogeneousRelation",
            Error::InhomogeneousInput(_) => "InhomogeneousInput",
            Error::InhomogeneousElement(_) => "InhomogeneousElement",
            Error::Malformed(_) => "Malformed",
            Error::DifferentialSquareNonzero { .. } => "DifferentialSquareNonzero",
            Error::NotAChainMap { .. } => "NotAChainMap",
            Error::NotInIdeal { .. } => "NotInIdeal",
            Error::TruncationTooSmall(_) => "TruncationTooSmall",
            Error::NotKoszulResolution(_) => "NotKoszulResolution",
            Error::NotSemiprojective(_) => "NotSemiprojective",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::NotCertifiedCI(_) => "NotCertifiedCI",
            Error::WindowTooSmall(_) => "WindowTooSmall",
            Error::NotPerfectAtBound { .. } => "NotPerfectAtBound",
            Error::Parse { .. } => "ParseError",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::InhomogeneousEntry { .. } => "InhomogeneousEntry",
            Error::UnknownCommand(_) => "UnknownCommand",
            Error::Io(_) => "IoError",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::UnknownVariable { .. } | Error::InhomogeneousEntry { .. } => 2,
            Error::HypothesisViolated(_) => 3,
            Error::NotPerfectAtBound { .. } => 4,
            Error::UnknownCommand(_) => 5,
            Error::Io(_) => 6,
            _ => 1,
        }
    }
}
