//! Exact-arithmetic analysis of crystallographic space groups: complete
//! normal subgroups, orthogonal duals, structure groups of the induced
//! flat orbifold fibrations, splitting of space group extensions, and the
//! conjugacy classification of torus/pillow affinities.
//!
//! Everything is exact rational; there are no tolerances anywhere.

pub mod exact;
pub mod isometry;
pub mod catalog;
pub mod classify;
pub mod fibration;
pub mod normal;
pub mod report;
pub mod splitting;
pub mod spacegroup;

use thiserror::Error as ThisError;

/// Crate-wide error type. Variants mirror the user-facing failure modes
/// of group construction and analysis.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("linear part not invertible")]
    SingularLinearPart,
    #[error("point group not finite (closure exceeded {0} elements)")]
    PointGroupNotFinite(usize),
    #[error("not cocompact: translation lattice has rank {rank} < {dim}")]
    NotCocompact { rank: usize, dim: usize },
    #[error("not a sublattice")]
    NotASublattice,
    #[error("element is not in the group")]
    NotInGroup,
    #[error("subgroup is not normal: conjugate of a generator escapes")]
    NotNormal,
    #[error("point group list is not closed under products")]
    NotClosed,
    #[error("subspace is not invariant under the group action")]
    NotInvariant,
    #[error("matrix has infinite order")]
    InfiniteOrder,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("the center of the group is trivial")]
    TrivialCenter,
    #[error("fiber dimension > 2 unsupported")]
    FiberTooLarge,
    #[error("applicability: catalogued 3D Seifert fibrations only")]
    Theorem10Shape,
    #[error("non-cocompact line action")]
    NotCocompactLine,
    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),
    #[error("unknown table {0}")]
    UnknownTable(u32),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
