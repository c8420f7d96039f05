//! Caldero–Chapoton values attached to Ptolemy diagrams of a polygon, and
//! the generalized frieze patterns they produce.
//!
//! * [`polygon`]: labels, diagonals, crossing and rotation.
//! * [`ptolemy`]: diagrams, closure, enumeration and cell decomposition.
//! * [`cc_map`]: `rho` by exchange recursion with binomial clique values.
//! * [`oracle`]: `rho` recounted as closed subsets of a support.
//! * [`frieze`]: frieze bands, diamond determinants and rendering.

pub mod cc_map;
pub mod fixtures;
pub mod frieze;
pub mod oracle;
pub mod polygon;
pub mod ptolemy;

pub use cc_map::{rho, rho_table, Anchor, CcMap, RhoError, RhoTable};
pub use frieze::{build_band, diamond_determinants, render, DiamondReport, Format, FriezeBand};
pub use oracle::{count_subfunctors, OracleError};
pub use polygon::{crosses, normalize, suspend, Chord, Diagonal, PolygonError, PolygonSize};
pub use ptolemy::{
    decompose, enumerate, parse_diagram, ptolemy_closure, Cell, CellKind, ClosureViolation,
    Decomposition, PtolemyDiagram,
};
