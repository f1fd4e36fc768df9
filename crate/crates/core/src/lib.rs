//! Exact-arithmetic toolkit for combinatorial neural codes.
//!
//! The crate builds two related kinds of objects and the machinery to
//! cross-check them:
//!
//! * [`codes`]: binary neural codes realizable by curve arrangements
//!   (star-shaped and path-shaped families), together with an inductive
//!   piercedness checker on their abstract descriptions.
//! * [`toric`]: the toric ideal of a code's 0/1 matrix, with Graver bases,
//!   reduced Groebner bases under weight orders, and universal Groebner
//!   bases computed through structural fast paths or a general fallback.
//! * [`statepoly`]: state polytopes obtained by two independent methods
//!   (initial-ideal enumeration and Minkowski sums of fiber polytopes),
//!   plus the specific polytopes these families produce: permutohedra,
//!   an inflation-sum polytope, and the stellohedron.
//! * [`nestedsets`]: building sets, nested set complexes, and the counting
//!   data used to compare face numbers against closed-form candidates.
//!
//! Everything is exact: rational arithmetic throughout, no floating point.
//! All operations target desk-scale instances and refuse larger ones with
//! explicit guard errors rather than degrade silently.

pub mod codes;
pub mod error;
pub mod exactgeom;
pub mod nestedsets;
pub mod statepoly;
pub mod toric;

pub use error::{Error, Result};
