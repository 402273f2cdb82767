//! Degreewidth of tournaments.
//!
//! The degreewidth of a tournament is the least `k` such that some linear
//! ordering of its vertices leaves every vertex incident to at most `k`
//! backward arcs. This crate provides the tournament/ordering data model and,
//! on top of it:
//!
//! * exact exponential oracles ([`oracles`]) for degreewidth, feedback arc
//!   set, feedback vertex set and dominating set;
//! * the in-degree ordering 3-approximation and cheap bounds ([`approx`]);
//! * polynomial recognition of sparse tournaments (degreewidth at most one)
//!   with certificate orderings, and minimum feedback arc sets on them
//!   ([`sparse`]);
//! * an FPT dominating-set routine parameterized by degreewidth ([`domset`]);
//! * executable hardness constructions with certificate transformers
//!   ([`reductions`]).

pub mod approx;
pub mod bitset;
pub mod domset;
pub mod error;
pub mod generators;
pub mod oracles;
pub mod reductions;
pub mod sparse;
pub mod tournament;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use tournament::{BackwardProfile, DominationRelation, Ordering, Tournament};
