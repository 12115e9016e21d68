use thiserror::Error;

/// Which quandle axiom a table violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuandleAxiom {
    /// `x ▷ x != x`; witness `(x, x, x)`.
    Idempotence,
    /// `x ▷ (y ▷ z) != (x ▷ y) ▷ (x ▷ z)`; witness `(x, y, z)`.
    Distributivity,
    /// Row `x` sends `y` and `z` to the same element; witness `(x, y, z)`.
    NonBijectiveRow,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("group order {order} exceeds the bound {limit}")]
    OrderBound { order: usize, limit: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not central")]
    NotCentral,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{axiom:?} axiom fails at witness {witness:?}")]
    QuandleAxiom {
        axiom: QuandleAxiom,
        witness: (usize, usize, usize),
    },
    #[error("the empty quandle is not supported")]
    EmptyQuandle,
    #[error("character value for orbit {orbit} is zero or not finite")]
    ZeroCharacterValue { orbit: usize },
    #[error("representation axiom fails at element pair ({0}, {1})")]
    RepAxiom(usize, usize),
    #[error("matrix for element {0} is singular")]
    SingularMatrix(usize),
    #[error("not a projective representation: {0}")]
    NotProjective(String),
    #[error("eigenspace splitting failed: {0}")]
    SplitFailure(String),
    #[error("group-averaged form is not positive definite")]
    NonPositiveForm,
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("representations live on different groups")]
    GroupMismatch,
    #[error("representations live on different quandles")]
    QuandleMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
