//! Motion-picture presentations of surface-links and the geometric
//! computation of their invariants.

pub mod builder;
mod error;
mod fixtures;
mod format;
mod invariants;
pub mod geometry;
pub mod linking;
mod model;
pub mod pushoff;
mod surface;
mod trace;
mod validate;

pub use error::MovieError;
pub use format::{parse_movie, print_movie, MovieParseError, FORMAT_VERSION};
pub use model::*;
pub use surface::{
    branch_sign_mismatches, crossing_sign, derived_branch_sign, euler_characteristics, euler_numbers,
    surface_components, whitney_violations, SurfaceComponent,
};
pub use validate::{validate_movie, Location, ValidationReport, Violation, ViolationKind, POSITION_TOLERANCE};
pub use trace::{
    event_time, trace_double_curves, triple_point_census, triple_points, vertex_point, CurveVertex, DoubleCurve, Embedding,
    TriplePoint,
};
pub use invariants::{
    double_linking, double_linking_numbers, movie_invariants, movie_report, triple_linking, tuple_from_report, LinkingOptions,
    MovieReport, TripleLinking, DEFAULT_SEED,
};
pub use pushoff::{push_off, Features, PushOff, PushOffOptions};
pub use fixtures::{bundled_generators, generator_movie, mirror_movie, split_union, Generator, CIRCLE_SAMPLES};
