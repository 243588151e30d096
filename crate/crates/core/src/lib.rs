//! Workbench for integer distance graphs in Z^8.
//!
//! Point sets are written in a compact sign/parity shorthand ([`notation`]),
//! expanded to integer coordinates, and turned into graphs whose edges join
//! pairs at one exact squared Euclidean distance ([`geometry`]). A catalog of
//! named record graphs ([`catalog`]) is rebuilt from shorthand recipes and
//! checked against published parameters. On top of that sit an exact
//! branch-and-bound independence-number solver ([`mis_exact`]), a seeded
//! local-search heuristic ([`mis_heuristic`]), coloring tools and CNF export
//! ([`coloring`]), and a vertex-augmentation loop with an audit trail
//! ([`augment`]).
//!
//! All arithmetic on coordinates is exact integer arithmetic; nothing in the
//! crate goes through floating point except display formatting.

pub mod augment;
pub mod bits;
pub mod catalog;
pub mod coloring;
pub mod geometry;
pub mod mis_exact;
pub mod mis_heuristic;
pub mod notation;

pub use geometry::{AdjGraph, DistGraph, GraphStats};
pub use notation::{Point, SignMode, Term, VertexSetExpr};
