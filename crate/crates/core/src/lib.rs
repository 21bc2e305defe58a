//! Combinatorial analysis of knot diagrams: Kauffman states, their exact
//! Maslov/Alexander/delta gradings, dealternating bounds, and Alexander
//! polynomial oracles.
//!
//! A diagram is parsed from a PD code (or signed Gauss code) into a rotation
//! system; faces are traced combinatorially, Kauffman states of a marked
//! diagram are enumerated by backtracking, and their delta-grading spread is
//! compared against the minimal number of crossing changes that make the
//! diagram alternating. Two independent Alexander polynomial computations
//! (state-sum Euler characteristic and Fox calculus on the Wirtinger
//! presentation) pin the grading tables.
//!
//! All arithmetic is exact: gradings are quarter-integers stored as scaled
//! integers, polynomial coefficients and tree counts are arbitrary precision.

pub mod alexander;
pub mod alternation;
pub mod construct;
pub mod diagram;
pub mod gradings;
pub mod states;

mod error;

pub use error::Error;

pub use diagram::{parse_gauss, parse_pd, Color, Crossing, Diagram, Edge, Face, Pass, Sign};
pub use gradings::{GradingVector, QuadrantClass, Quarter};
pub use states::{
    eligible_marked_edges, enumerate_states, state_count_oracle, KauffmanState, MarkedEdge,
    DEFAULT_STATE_CAP,
};

/// Crossing index within a diagram (0-based).
pub type CrossingId = usize;
/// Face index within a diagram (0-based, assigned in trace order).
pub type FaceId = usize;
/// Edge label, 1..=2n consecutive along the knot orientation.
pub type EdgeLabel = usize;

pub type Result<T> = std::result::Result<T, Error>;
