//! Up-arcs, sliding triangles and the triangle conditions.
//!
//! A segment is an up-arc when the strand ascends along it (y decreases in
//! the downward axis). Its sliding triangle is the right triangle below the
//! segment with a vertical leg through the top point; the braidoiding move
//! slides the lower piece across this disk.

use super::diagram::{PLDiagram, SegRef};
use super::point::{orient, Orient, Point};
use super::segment::{Meet, Segment};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PassType {
    Over,
    Under,
    Free,
}

#[derive(Clone, Debug)]
pub struct UpArc {
    pub seg: SegRef,
    /// Lower endpoint (larger y), the pivot of the slide.
    pub q: Point,
    /// Upper endpoint (smaller y), the cut-point.
    pub p: Point,
    pub pass_type: PassType,
}

#[derive(Clone, Debug)]
pub struct SlidingTriangle {
    /// Hypotenuse endpoints.
    pub q: Point,
    pub p: Point,
    /// Right-angle vertex: (x(p), y(q)).
    pub r: Point,
}

impl UpArc {
    pub fn triangle(&self) -> SlidingTriangle {
        SlidingTriangle {
            q: self.q.clone(),
            p: self.p.clone(),
            r: Point::new(self.p.x.clone(), self.q.y.clone()),
        }
    }
}

impl SlidingTriangle {
    fn corners(&self) -> [&Point; 3] {
        [&self.q, &self.p, &self.r]
    }

    fn is_degenerate(&self) -> bool {
        // Vertical up-arc: triangle collapses to the segment itself.
        self.p.x == self.q.x
    }

    /// Point strictly inside the triangle.
    pub fn contains_interior(&self, pt: &Point) -> bool {
        if self.is_degenerate() {
            return false;
        }
        let [a, b, c] = self.corners();
        let o1 = orient(a, b, pt);
        let o2 = orient(b, c, pt);
        let o3 = orient(c, a, pt);
        o1 == o2 && o2 == o3 && o1 != Orient::Collinear
    }

    /// Point inside or on the boundary.
    pub fn contains_closed(&self, pt: &Point) -> bool {
        if self.is_degenerate() {
            let seg = Segment::new(self.q.clone(), self.p.clone());
            return seg.contains_interior(pt) || *pt == self.q || *pt == self.p;
        }
        let [a, b, c] = self.corners();
        let o1 = orient(a, b, pt);
        let o2 = orient(b, c, pt);
        let o3 = orient(c, a, pt);
        let mut pos = 0;
        let mut neg = 0;
        for o in [o1, o2, o3] {
            match o {
                Orient::Ccw => pos += 1,
                Orient::Cw => neg += 1,
                Orient::Collinear => {}
            }
        }
        !(pos > 0 && neg > 0)
    }

    fn edges(&self) -> [Segment; 3] {
        [
            Segment::new(self.q.clone(), self.p.clone()),
            Segment::new(self.p.clone(), self.r.clone()),
            Segment::new(self.r.clone(), self.q.clone()),
        ]
    }

    /// Exact intersection test of two closed triangles, ignoring contacts at
    /// the listed shared subdivision vertices (consecutive up-arcs legally
    /// touch at a shared strand point).
    pub fn meets(&self, other: &SlidingTriangle, allowed: &[&Point]) -> bool {
        let is_allowed = |p: &Point| allowed.iter().any(|a| *a == p);
        // Any corner containment.
        for c in self.corners() {
            if other.contains_closed(c) && !is_allowed(c) {
                return true;
            }
        }
        for c in other.corners() {
            if self.contains_closed(c) && !is_allowed(c) {
                return true;
            }
        }
        // Edge crossings.
        for e1 in self.edges() {
            if e1.is_degenerate() {
                continue;
            }
            for e2 in other.edges() {
                if e2.is_degenerate() {
                    continue;
                }
                match e1.meet(&e2) {
                    Meet::None => {}
                    Meet::Proper(p) | Meet::Touch(p) => {
                        if !is_allowed(&p) {
                            return true;
                        }
                    }
                    Meet::Overlap => return true,
                }
            }
        }
        false
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UpArcError {
    #[error("up-arc {0:?} carries both an over- and an under-crossing; refine first")]
    MixedPassTypes(SegRef),
    #[error("diagram not in general position: {0}")]
    Geometry(#[from] super::diagram::GeometryError),
}

/// Whether the oriented segment ascends (an up-arc).
pub fn ascends(seg: &Segment) -> bool {
    seg.b.y < seg.a.y
}

/// Classify every ascending segment of the diagram's current subdivision.
pub fn up_arcs(d: &PLDiagram) -> Result<Vec<UpArc>, UpArcError> {
    let ints = d.intersections();
    let mut out = Vec::new();
    for r in d.seg_refs() {
        let seg = d.segment(r);
        if !ascends(&seg) {
            continue;
        }
        let mut over = 0usize;
        let mut under = 0usize;
        for (pair, _) in ints.iter().filter(|(pair, _)| pair.0 == r || pair.1 == r) {
            let side = d.over_data.get(pair);
            let this_first = pair.0 == r;
            match side {
                Some(super::diagram::OverSide::First) => {
                    if this_first {
                        over += 1
                    } else {
                        under += 1
                    }
                }
                Some(super::diagram::OverSide::Second) => {
                    if this_first {
                        under += 1
                    } else {
                        over += 1
                    }
                }
                None => {}
            }
        }
        let pass_type = match (over, under) {
            (0, 0) => PassType::Free,
            (_, 0) => PassType::Over,
            (0, _) => PassType::Under,
            _ => return Err(UpArcError::MixedPassTypes(r)),
        };
        out.push(UpArc {
            seg: r,
            q: seg.a.clone(),
            p: seg.b.clone(),
            pass_type,
        });
    }
    Ok(out)
}

/// Violations of the triangle conditions for the current subdivision:
/// overlapping triangle pairs and endpoint-containing triangles.
pub struct TriangleReport {
    pub overlapping: Vec<(SegRef, SegRef)>,
    pub endpoint_hits: Vec<SegRef>,
}

pub fn triangle_conditions(d: &PLDiagram, arcs: &[UpArc]) -> TriangleReport {
    let mut overlapping = Vec::new();
    let mut endpoint_hits = Vec::new();
    let tris: Vec<(SegRef, SlidingTriangle)> =
        arcs.iter().map(|a| (a.seg, a.triangle())).collect();
    for (n, (ra, ta)) in tris.iter().enumerate() {
        for (rb, tb) in tris.iter().skip(n + 1) {
            // Consecutive arcs may share a strand vertex.
            let shared: Vec<&Point> = [&ta.q, &ta.p]
                .into_iter()
                .filter(|p| **p == tb.q || **p == tb.p)
                .collect();
            if ta.meets(tb, &shared) {
                overlapping.push((*ra, *rb));
            }
        }
        let leg = d.leg().clone();
        let head = d.head().clone();
        for ep in [&leg, &head] {
            if ta.contains_closed(ep) && *ep != ta.q && *ep != ta.p {
                endpoint_hits.push(*ra);
            }
        }
    }
    TriangleReport {
        overlapping,
        endpoint_hits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::diagram::pt;

    #[test]
    fn monotone_descending_arc_has_no_up_arcs() {
        let d = PLDiagram::new(vec![pt(0, 0), pt(1, 2), pt(0, 4)], vec![]);
        assert!(up_arcs(&d).unwrap().is_empty());
    }

    #[test]
    fn v_shape_has_one_free_up_arc() {
        let d = PLDiagram::new(vec![pt(0, 0), pt(1, 3), pt(2, 1)], vec![]);
        let arcs = up_arcs(&d).unwrap();
        assert_eq!(arcs.len(), 1);
        assert_eq!(arcs[0].pass_type, PassType::Free);
        assert_eq!(arcs[0].q, pt(1, 3));
        assert_eq!(arcs[0].p, pt(2, 1));
    }

    #[test]
    fn triangle_containment() {
        let t = SlidingTriangle {
            q: pt(0, 4),
            p: pt(4, 0),
            r: pt(4, 4),
        };
        assert!(t.contains_interior(&pt(3, 3)));
        assert!(!t.contains_interior(&pt(1, 1)));
        assert!(t.contains_closed(&pt(2, 2)));
    }

    #[test]
    fn disjoint_triangles_pass() {
        let a = SlidingTriangle { q: pt(0, 4), p: pt(2, 0), r: pt(2, 4) };
        let b = SlidingTriangle { q: pt(10, 4), p: pt(12, 0), r: pt(12, 4) };
        assert!(!a.meets(&b, &[]));
        let c = SlidingTriangle { q: pt(1, 4), p: pt(3, 0), r: pt(3, 4) };
        assert!(a.meets(&c, &[]));
    }
}
