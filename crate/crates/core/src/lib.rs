pub mod complex;
pub mod coxeter;
pub mod error;
pub mod fiber;
pub mod homology;
pub mod lcc;
pub mod monodromy;
pub mod morse;
pub mod ncp;

pub use complex::{CellSet, DeltaComplex};
pub use coxeter::{GroupElement, GroupFamily, ReflectionGroup};
pub use error::{Error, Result};
pub use fiber::{FpCell, FpComplex, FqCell, FqComplex, OrderComplex, WindowFace, XpWindow};
pub use homology::{ChainComplex, HomologyGroup, IntegerMatrix};
pub use ncp::{InitializedChain, NcpLattice};
