//! Unoriented bordism of surface-links in 4-space.
//!
//! The group of unoriented bordism classes of `n`-component surface-links is
//! `Z^n + Z4^(n(n-1)/2) + Z2^(n(n-1)(n-2)/3)`, coordinatized by halved normal
//! Euler numbers, double linking numbers and triple linking numbers.
//!
//! * [`algebra`] realizes that group exactly.
//! * [`expr`] is a symbolic language of generator surface-links with an
//!   evaluator and a normalizer to the canonical split union.
//! * [`movie`] reads motion-picture presentations and computes the same
//!   invariants from the geometry of the induced surface diagram.

pub mod algebra;
pub mod error;
pub mod expr;
pub mod movie;

pub use algebra::{GroupShape, InvariantTuple, OrientedClass, Z2, Z4};
pub use error::{Error, Result};
pub use expr::{LinkExpression, NormalForm};
