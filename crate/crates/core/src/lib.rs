//! Genuine four-qubit entanglement from the concurrence tetrahedron.
//!
//! The seven bipartition concurrences of a pure four-qubit state are turned
//! into the six edges of a tetrahedron whose volume vanishes exactly on
//! biseparable states. See [`measures::v1234`] for the full pipeline.

pub mod cli;
pub mod concurrence;
pub mod discrepancies;
pub mod error;
pub mod families;
pub mod lab;
pub mod measures;
pub mod selftest;
pub mod state;
pub mod tetra;

pub use concurrence::{concurrence_profile, inequality_residuals, ConcurrenceProfile, TwoTwoCut};
pub use error::{Error, Result};
pub use families::{benchmark_state, family_state, Benchmark, Family, FamilySpec};
pub use measures::{classify, gmc, v1234, ClassLabel, MeasureReport};
pub use state::{parse_state, Bipartition, PureState4, Qubit};
pub use tetra::{build_edges, TetraEdges, TetraReport};
