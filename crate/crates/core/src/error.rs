use thiserror::Error;

/// Errors raised by group construction, lattice queries and complex builders.
///
/// `Structural` marks a failed mathematical invariant (a face leaving its
/// complex, a missing lattice bound, a map that is not a chain map). These
/// never occur on correct input and are treated as verification failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank {rank} out of bounds for family {family}: {bound}")]
    RankOutOfBounds {
        family: &'static str,
        rank: usize,
        bound: &'static str,
    },
    #[error("cannot parse group spec `{0}` (expected A<n>, B<n>, D<n> or I2_<m>)")]
    BadGroupSpec(String),
    #[error("cannot parse element `{text}`: {reason}")]
    BadElement { text: String, reason: String },
    #[error("elements belong to different groups: {0} vs {1}")]
    FamilyMismatch(String, String),
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("{0} is not a Coxeter element")]
    NotCoxeter(String),
    #[error("{0} is not in the non-crossing partition lattice")]
    NotInLattice(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("boundary of boundary is nonzero in degree {degree}")]
    BoundarySquared { degree: i64 },
    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("structural invariant violated: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;
