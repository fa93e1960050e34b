use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BohrError {
    #[error("series has a zero constant term and cannot be inverted")]
    ZeroLeadingCoefficient,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no root of {equation} in (0, 1)")]
    NoRootInUnitInterval { equation: String },

    #[error("{equation}: expected a unique root in (0, 1), scan found {count}")]
    MultipleRoots { equation: String, count: usize },

    #[error("missing parameter `{param}` for {theorem}")]
    MissingParameter { theorem: String, param: &'static str },

    #[error("parameter `{param}` is not used by {theorem}")]
    UnexpectedParameter { theorem: String, param: &'static str },

    #[error("no sharpness witness found for {theorem}: {detail}")]
    NoWitnessFound { theorem: String, detail: String },

    #[error("cannot parse recipe: {0}")]
    RecipeParse(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
}

pub type Result<T, E = BohrError> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> BohrError {
    BohrError::Domain(msg.into())
}
