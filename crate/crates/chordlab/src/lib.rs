//! Exact arithmetic for linear chord diagrams and their genus-parametrized
//! pairing: eigendecomposition of the intersection form by Young diagrams,
//! realization in symplectic tensor spaces, and the induced contraction
//! calculus on trivalent graphs.

pub mod chords;
pub mod cli;
pub mod error;
pub mod graphs;
pub mod linalg;
pub mod partitions;
pub mod poly;
pub mod sympl;
pub mod symmetrizer;
pub mod verify;

pub use error::{Error, Result};
