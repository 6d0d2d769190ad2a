use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero sheaf has no reduced polynomial or slope")]
    ZeroSheaf,
    #[error("leading alpha-coefficient is not positive")]
    NonPositiveLeading,
    #[error("slope is undefined in dimension zero")]
    DimensionZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("torsion summands are not supported by this operation")]
    TorsionNotSupported,
    #[error("parabolic level data is not realizable by a line bundle: {0}")]
    NotRealizable(String),
    #[error("generating sheaf is not balanced at stacky point {point}")]
    UnbalancedGeneratingSheaf { point: usize },
    #[error("not a generating sheaf: character {character} missing at point {point}")]
    NotGenerating { point: usize, character: u64 },
    #[error("inconsistent lattice: {0}")]
    InconsistentLattice(String),
    #[error("object is not semistable")]
    NotSemistable,
    #[error("object is not pure: {0}")]
    NotPure(String),
    #[error("reduced polynomials differ")]
    ReducedMismatch,
    #[error("too many summands ({0}); at most 16 are supported")]
    TooLarge(usize),
    #[error("genus {0} is not supported here (genus 0 only)")]
    UnsupportedGenus(u32),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Errors signalling that a supposedly valid object broke a structural
    /// invariant, as opposed to the caller handing in bad data.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InconsistentLattice(_))
    }
}
