use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be prime (got {0})")]
    NotPrime(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("invalid algebra: {}", .0.join("; "))]
    InvalidAlgebra(Vec<String>),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),

    #[error("module is not finitely generated projective over the acting algebra")]
    NotProjective,

    #[error("canonical map M (x)_A M* -> End_A(M) is not an isomorphism")]
    XiNotInvertible,

    #[error("extension is not injective")]
    NotInjective,

    #[error("subbimodule does not lie in the {0} invertible submonoid")]
    NotInvertible(&'static str),

    #[error("map is not a morphism of corings: {0}")]
    NotCoringMorphism(String),

    #[error("coring axioms fail: {}", .0.join("; "))]
    CoringAxioms(Vec<String>),

    #[error("comodule laws fail: {0}")]
    ComoduleLaws(String),

    #[error("budget exceeded while {what}: need {required}, budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    #[error("instance error: {}", .0.join("; "))]
    Instance(Vec<String>),
}

impl Error {
    pub fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
