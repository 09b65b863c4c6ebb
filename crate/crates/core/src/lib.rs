//! Exact symbolic computation with completed quiver algebras.
//!
//! The crate models presentations of completed path algebras with uniform
//! relations over exact fields, and provides:
//!
//! * a linear-algebra truncation oracle for graded dimensions ([`truncation`]),
//! * local standard bases with finiteness certificates and growth
//!   classification ([`sbasis`]),
//! * the contraction / fiber / abelianization / opposite constructors
//!   ([`construct`]),
//! * superpotential calculus ([`superpotential`]),
//! * a textual presentation language and JSON reports ([`dsl`]),
//! * exhaustive deformation-functor verification over prime fields
//!   ([`deform`]).

pub mod construct;
pub mod deform;
pub mod dsl;
pub mod error;
pub mod field;
pub mod poly;
pub mod presentation;
pub mod quiver;
pub mod sbasis;
pub mod superpotential;
pub mod truncation;

pub use error::CoreError;
pub use field::{scalar_arith, FieldSpec, Scalar, ScalarOp};
pub use poly::{poly_mul, NCPoly};
pub use presentation::Presentation;
pub use quiver::{compose_paths, ArrowId, Path, Quiver, VertexId};
pub use superpotential::{CyclicWord, Superpotential};

/// Version string stamped into reports.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
