use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate label `{0}` in ground set")]
    DuplicateLabel(String),
    #[error("invalid element name `{0}`: names must be nonempty and contain no whitespace")]
    InvalidLabel(String),
    #[error("duplicate subset {0:?} in family")]
    DuplicateSubset(Vec<String>),
    #[error("ground set of {0} elements exceeds the cap of {max}", max = crate::ground::MAX_GROUND)]
    GroundTooLarge(usize),
    #[error("operands are over different ground sets")]
    GroundMismatch,
    #[error("operation requires a proper (nonempty) set system")]
    ImproperSystem,
    #[error("set system is not a delta-matroid")]
    NotDeltaMatroid,
    #[error("independent oracles disagree in {check}: {detail}")]
    OracleDisagreement { check: &'static str, detail: String },

    #[error("{0} is not a prime in [2, 65536)")]
    NotPrime(u64),
    #[error("matrix shape violation: {0}")]
    ShapeViolation(String),
    #[error("principal block on {0:?} is singular")]
    SingularPivotBlock(Vec<String>),
    #[error("row and column labels overlap at `{0}`")]
    LabelCollision(String),

    #[error("vertex `{0}` must carry a loop")]
    LoopRequired(String),
    #[error("vertex `{0}` must not carry a loop")]
    LoopForbidden(String),
    #[error("set system is not graphic: first disagreement at {0:?}")]
    NotGraphic(Vec<String>),

    #[error("orbit over {n} elements exceeds the cap of {cap}")]
    OrbitTooLarge { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {field}: {message}")]
    Schema { field: String, message: String },
    #[error("bad parameter: {0}")]
    Parameter(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl Error {
    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }
}
