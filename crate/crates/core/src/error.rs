use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("inner lattice is not contained in the outer lattice")]
    NotASublattice,

    #[error("circle value has a nonzero irrational part, torsion order undefined")]
    NotTorsion,

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("not a group table: {0}")]
    BadGroupTable(String),

    #[error("group data violates an invariant: {0}")]
    GroupInvariant(String),

    #[error("cocycle value at {at} is not a root of unity of order dividing {n}")]
    ValueNotTorsionOfOrderN { at: String, n: u64 },

    #[error("no admissible lattice scale for the central extension (tried {0:?})")]
    ExtensionScale(Vec<u64>),

    #[error("resource bound exceeded: {0}")]
    ResourceExceeded(String),

    #[error("element is not central")]
    NotCentral,

    #[error("cohomology class is irrational; enumeration refused")]
    IrrationalCocycle,

    #[error("character is outside the admissible open set (stabilizer or -1 coordinate)")]
    NotInU,

    #[error("integer linear system has no solution: {0}")]
    NoSolution(String),

    #[error("eigenspace splitting did not converge after {retries} retries")]
    DecompositionFailed { retries: u32 },

    #[error("unsupported shape: {0}")]
    Unsupported(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
