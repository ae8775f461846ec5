use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("value {0} is irrational; a rational value is required here")]
    Irrational(String),

    #[error("values from sqrt({0}) and sqrt({1}) cannot be mixed")]
    MixedField(u32, u32),

    #[error("breakpoint {point} is not on the grid (1/{denominator})Z")]
    NotOnGrid { point: String, denominator: u64 },

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("function is not minimal: {0}")]
    NotMinimal(String),

    #[error("every vertex slack is zero, so no positive perturbation size exists")]
    EverywhereAdditive,

    #[error("the face I x J cut by x+y in K is empty")]
    EmptyFace,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("kernel vector describes the zero function")]
    ZeroKernelVector,

    #[error("component is not an uncovered component: {0}")]
    NotUncovered(String),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: &str) -> Self {
        Error::Parse { input: input.to_string(), reason: reason.to_string() }
    }
}
