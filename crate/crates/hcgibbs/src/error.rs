use thiserror::Error;

/// Errors from tree construction, enumeration, measures and solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HcError {
    #[error(transparent)]
    Padic(#[from] padic::PadicError),

    #[error("tree would have {requested} vertices, cap is {cap}")]
    TreeTooLarge { requested: u128, cap: usize },

    #[error("enumeration over {vertices} vertices exceeds the cap of {cap}")]
    CapExceeded { vertices: usize, cap: usize },

    #[error("state {0} is not one of 0, 1, 2")]
    StateOutOfRange(u8),

    #[error("configuration length {got} does not match volume size {want}")]
    WrongConfigurationSize { got: usize, want: usize },

    #[error("configuration is not admissible")]
    Inadmissible,

    #[error("boundary law has no entry for vertex {0}")]
    LawMissingVertex(usize),

    #[error("{0} must lie in E_p")]
    NotInEp(&'static str),

    #[error("partition function is indistinguishable from zero")]
    PartitionZeroLike,

    #[error("boundary law violates the compatibility equation at vertex {vertex}")]
    CompatibilityViolated { vertex: usize },

    #[error("{0}")]
    UnsupportedRegime(&'static str),

    #[error("undecidable at the working precision: {0}")]
    Undecidable(&'static str),
}
