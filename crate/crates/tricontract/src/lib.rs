//! Exact-arithmetic classification and iteration diagnostics for self-maps
//! that contract perimeters of triangles in finite metric spaces.
//!
//! Two contraction classes are analyzed side by side:
//!
//! - the *strict* class, where every image triangle's perimeter is at most
//!   `k` times the domain triangle's perimeter, and
//! - the *weak* class, where the comparison is against the maximum perimeter
//!   over all triangles drawn from the six-point support
//!   {x, y, z, Tx, Ty, Tz}.
//!
//! Everything is computed in arbitrary-precision rationals: classification
//! constants are certified exactly, Picard orbits come with exact perimeter
//! and envelope diagnostics, and a constructive fixed-point-free map over
//! decimal truncations of sqrt(2) demonstrates why completeness of the space
//! matters. See the `examples/` directory for one runnable walk-through per
//! capability and the `tricontract` binary for the scriptable CLI.

pub mod completeness;
pub mod contraction;
pub mod fixtures;
pub mod orbit;
pub mod rational;
pub mod report;
pub mod space;
pub mod tms;

pub mod cli;

pub use contraction::{classify, ContractionReport, Triple};
pub use rational::Rational;
pub use space::{validate_metric, FiniteMetricSpace, PointId, SelfMap, ValidationReport};
