//! Symbolic surface-links built from projective planes, strands and
//! necklaces, with an invariant evaluator and a normalizer.

mod ast;
mod eval;
pub mod normal;
mod parse;

pub use ast::{LinkExpression, Node};
pub use eval::eval_invariants;
pub use normal::{bordant, decode_class, normalize, Atom, NormalForm};
pub use parse::{parse_expr, ParseError};
