pub mod blocks;
pub mod classifier;
pub mod discforms;
pub mod error;
pub mod intmat;
pub mod lattice;
pub mod oracle;
pub mod surface;

pub use blocks::{Block, BlockKind, NamedDecomposition};
pub use discforms::{FiniteAbelianGroup, FiniteBilinearForm, FiniteQuadraticForm};
pub use error::{Error, Result};
pub use lattice::{Complement, GramFile, Lattice, LatticeVector, Parity, Signature};
