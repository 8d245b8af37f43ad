//! Exact arithmetic in the unoriented bordism group of `n`-component
//! surface-links, and the forgetful map from the oriented group.

mod oriented;
mod residue;
mod shape;
mod tuple;

pub use oriented::{forgetful, OrientedClass};
pub use residue::{kappa, lambda, nu, Z2, Z4};
pub use shape::{canonical_pairs, canonical_triples, group_shape, is_canonical_triple, GroupShape};
pub use tuple::{is_null_bordant, InvariantTuple};
