//! Exact combinatorial machinery for compactified pair-of-pants complexes.
//!
//! The crate builds finite regular-CW face posets for the tropical objects
//! attached to the hyperplane `z_0 + ... + z_n = 0`: the amoeba spine `S`,
//! the coamoeba skeleton `Sigma` (boundary of the A_n permutahedron with
//! opposite facets identified), strata `P_{sigma,J}`, the ober-tropical
//! complex contained in `S x Sigma`, cyclic polytopes with their Gale-even
//! facets, and the non-interlacing complexes `L_{sigma,J}` together with the
//! explicit belt/circle and ghost collapse schedules.  Everything is exact:
//! set combinatorics on bitmasks, angles as rationals in units of pi, and
//! homology over the two-element field.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so the types are safe to share across threads.

pub mod collapse;
pub mod complexes;
pub mod cyclic;
pub mod engine;
pub mod export;
pub mod homology;
pub mod iso;
pub mod label;
pub mod poset;
pub mod rootgeom;
pub mod subset;

pub use cyclic::{CyclicPartition, GraphicalCode};
pub use label::CellLabel;
pub use poset::FacePoset;
pub use subset::{GroundSet, Subset};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("empty subset where a non-empty one is required")]
    EmptySubset,

    #[error("duplicate cell label {0}")]
    DuplicateLabel(String),

    #[error("cover ({facet}, {cell}) does not connect consecutive dimensions {facet_dim} and {cell_dim}")]
    NonGraded {
        facet: String,
        cell: String,
        facet_dim: usize,
        cell_dim: usize,
    },

    #[error("cover references unknown cell {0}")]
    UnknownCell(String),

    #[error("keep-predicate is not downward closed: kept {cell} but dropped its facet {facet}")]
    ClosureViolation { cell: String, facet: String },

    #[error("collapse violation at ({face}, {coface}): actual cofaces {actual:?}")]
    CollapseViolation {
        face: String,
        coface: String,
        actual: Vec<String>,
    },

    #[error("stratum P_({sigma}, {support}) is empty: sigma does not divide J")]
    EmptyStratum { sigma: String, support: String },

    #[error("invalid cyclic polytope parameters d={d}, r={r}: need r > d >= 2 and d even")]
    InvalidCyclicPolytope { d: usize, r: usize },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
