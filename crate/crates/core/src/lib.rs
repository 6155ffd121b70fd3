#![no_std]
//! Finite posets, finite T0 spaces, their powerspaces, and executable
//! (co-)consonance certificates with witness transport.

extern crate alloc;

pub mod consonance;
pub mod error;
pub mod poset;
pub mod powerspace;
pub mod space;
pub mod subset;
pub mod topology;
pub mod suite;
pub mod transport;

pub use consonance::{Mode, ScottOpenFamily, Witness, WitnessCertificate};
pub use error::{Error, Result};
pub use poset::{BoundKind, Classification, Direction, FinitePoset, Ideal, RelationMode};
pub use powerspace::{Extent, PowerKind, PowerSpace};
pub use space::{ContinuousMap, FiniteSpace, IndexedLattice};
pub use subset::Subset;
pub use topology::Topology;

/// Materialization limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest carrier or powerspace built.
    pub points: usize,
    /// Largest lattice of opens, closed sets or Scott-open families
    /// enumerated.
    pub families: usize,
}

impl Caps {
    /// `points` as given, families at sixteen times that.
    pub fn with_points(points: usize) -> Self {
        Caps {
            points,
            families: points.saturating_mul(16),
        }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps::with_points(4096)
    }
}
