//! Combinatorial knotoid maps: structure, moves, closures.

pub mod closure;
pub mod edit;
pub mod knotoid;
pub mod moves;

pub use knotoid::{CanonicalCode, Dart, KnotoidMap, MapError, MapMode};
pub use moves::{
    apply_reidemeister, is_normal, reidemeister_sites, simplify, spherical_move, MoveSite,
};
