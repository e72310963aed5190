//! Exact-rational piecewise-linear diagram layer.

pub mod diagram;
pub mod map_build;
pub mod point;
pub mod segment;
pub mod uparc;

pub use diagram::{
    normalize_general_position, subdivide_at, GeometryError, OverSide, PLDiagram, SegPair, SegRef,
};
pub use point::{rat, ratio, Point, Rat, Vector};
pub use segment::{Meet, Segment};
