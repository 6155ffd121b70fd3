use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The relation identifies two distinct elements (a preorder, not a poset).
    CycleDetected { first: String, second: String },
    UnknownLabel(String),
    DuplicateLabel(String),
    /// A relation given verbatim is missing a pair required by transitivity.
    NotTransitive { from: String, via: String, to: String },
    /// Two topologies, or a map and a space, disagree on their carrier.
    CarrierMismatch { left: usize, right: usize },
    /// An open set of the target whose preimage is not open.
    NotContinuous { open: Subset, preimage: Subset },
    /// Box/diamond applied to a set of the wrong role for that powerspace.
    KindMismatch(&'static str),
    TargetNotInFamily,
    FamilyNotScottOpen,
    /// The empty open cannot lie in any box or diamond extent.
    EmptyTargetUnwitnessable,
    NotRetraction { element: usize },
    NotStrong { element: usize },
    CapExceeded { what: &'static str, cap: usize },
    NotCompleteLattice,
    NotIntersectionCompatible { u: Subset, v: Subset, w: Subset },
    /// The specialization preorder of a topology is not antisymmetric.
    NotT0,
    /// A step that the underlying argument guarantees did not hold.
    TransportHypothesisFailed(String),
    /// A map given by index table has the wrong length or out-of-range values.
    BadAssignment,
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CycleDetected { first, second } => {
                write!(f, "cycle detected: {first} and {second} are mutually below each other")
            }
            Error::UnknownLabel(l) => write!(f, "unknown label `{l}`"),
            Error::DuplicateLabel(l) => write!(f, "duplicate label `{l}`"),
            Error::NotTransitive { from, via, to } => {
                write!(f, "relation not transitive: {from}<={via}<={to} but not {from}<={to}")
            }
            Error::CarrierMismatch { left, right } => {
                write!(f, "carrier mismatch: {left} vs {right} elements")
            }
            Error::NotContinuous { open, preimage } => write!(
                f,
                "map not continuous: preimage {:?} of open {:?} is not open",
                preimage.to_vec(),
                open.to_vec()
            ),
            Error::KindMismatch(msg) => write!(f, "kind mismatch: {msg}"),
            Error::TargetNotInFamily => f.write_str("target open is not a member of the family"),
            Error::FamilyNotScottOpen => f.write_str("family is not Scott open"),
            Error::EmptyTargetUnwitnessable => {
                f.write_str("the empty open set admits no witness")
            }
            Error::NotRetraction { element } => {
                write!(f, "not a retraction: g(f(x)) != x at element {element}")
            }
            Error::NotStrong { element } => {
                write!(f, "retraction not strong: f(g(y)) is not above y at element {element}")
            }
            Error::CapExceeded { what, cap } => write!(f, "{what} exceeds cap of {cap}"),
            Error::NotCompleteLattice => f.write_str("poset is not a complete lattice"),
            Error::NotIntersectionCompatible { u, v, w } => write!(
                f,
                "space is not intersection-compatible: U={:?}, V={:?}, W={:?}",
                u.to_vec(),
                v.to_vec(),
                w.to_vec()
            ),
            Error::NotT0 => f.write_str("topology is not T0"),
            Error::TransportHypothesisFailed(step) => {
                write!(f, "transport step failed: {step}")
            }
            Error::BadAssignment => f.write_str("assignment is not a total map between carriers"),
        }
    }
}

impl core::error::Error for Error {}

/// Labels of the members of `s`, for messages and reports.
pub fn render(labels: &[String], s: &Subset) -> Vec<String> {
    s.iter().map(|i| labels[i].clone()).collect()
}
