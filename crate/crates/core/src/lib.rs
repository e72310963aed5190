//! Knotoid and braidoid diagrams with exact rational geometry.
//!
//! The crate implements piecewise-linear multi-knotoid diagrams, their
//! combinatorial maps, the braidoiding algorithm turning a diagram into a
//! labeled braidoid with equivalent closure, the braidoid move calculus
//! (L-moves, sL I, sL II, spherical-state normalization), and
//! Kauffman-bracket certification with bounded equivalence search.

pub mod braidoid;
pub mod braidoiding;
pub mod codec;
pub mod geom;
pub mod invariants;
pub mod map;
pub mod slmoves;
