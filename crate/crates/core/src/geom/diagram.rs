//! Piecewise-linear multi-knotoid diagrams with exact coordinates.
//!
//! A diagram is one oriented open polyline (leg to head) plus any number of
//! oriented closed polylines, with over/under data attached to each crossing
//! segment pair. General position means: no horizontal segments, all
//! intersections are pairwise transversal interior points, no three segments
//! concurrent, and the two endpoints sit on no other segment.

use super::point::{lerp, rat, ratio, Point, Rat};
use super::segment::{Meet, Segment};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Reference to one segment of the diagram: component 0 is the open path,
/// components 1.. are the circles in order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct SegRef {
    pub comp: usize,
    pub idx: usize,
}

/// Unordered pair of segment references, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct SegPair(pub SegRef, pub SegRef);

impl SegPair {
    pub fn new(a: SegRef, b: SegRef) -> Self {
        if a <= b {
            SegPair(a, b)
        } else {
            SegPair(b, a)
        }
    }
}

/// Which element of a `SegPair` passes over at the crossing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OverSide {
    First,
    Second,
}

#[derive(Clone, Debug)]
pub struct PLDiagram {
    pub open_path: Vec<Point>,
    pub circles: Vec<Vec<Point>>,
    pub over_data: BTreeMap<SegPair, OverSide>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("component {0} has fewer than 2 distinct points")]
    TooFewPoints(usize),
    #[error("consecutive duplicate point in component {0} at index {1}")]
    DuplicatePoint(usize, usize),
    #[error("horizontal segment {0:?}")]
    Horizontal(SegRef),
    #[error("segments {0:?} and {1:?} overlap collinearly")]
    CollinearOverlap(SegRef, SegRef),
    #[error("non-transversal contact between {0:?} and {1:?}")]
    Tangency(SegRef, SegRef),
    #[error("three or more segments share the point {0:?}")]
    TriplePoint(Point),
    #[error("an endpoint lies on segment {0:?}")]
    EndpointOnSegment(SegRef),
    #[error("over_data names non-crossing pair {0:?}")]
    SpuriousOverData(SegPair),
    #[error("crossing pair {0:?} missing from over_data")]
    MissingOverData(SegPair),
    #[error("ambiguous self-tangency: no perturbation preserves the crossing data")]
    AmbiguousTangency,
    #[error("perturbation budget exhausted while restoring general position")]
    PerturbationExhausted,
}

impl PLDiagram {
    pub fn new(open_path: Vec<Point>, circles: Vec<Vec<Point>>) -> Self {
        PLDiagram {
            open_path,
            circles,
            over_data: BTreeMap::new(),
        }
    }

    pub fn leg(&self) -> &Point {
        self.open_path.first().expect("open path nonempty")
    }

    pub fn head(&self) -> &Point {
        self.open_path.last().expect("open path nonempty")
    }

    pub fn component_count(&self) -> usize {
        1 + self.circles.len()
    }

    fn component(&self, comp: usize) -> &[Point] {
        if comp == 0 {
            &self.open_path
        } else {
            &self.circles[comp - 1]
        }
    }

    /// Number of segments of a component (cyclic for circles).
    pub fn seg_count(&self, comp: usize) -> usize {
        let pts = self.component(comp);
        if comp == 0 {
            pts.len().saturating_sub(1)
        } else {
            pts.len()
        }
    }

    pub fn segment(&self, r: SegRef) -> Segment {
        let pts = self.component(r.comp);
        let a = pts[r.idx].clone();
        let b = if r.comp == 0 {
            pts[r.idx + 1].clone()
        } else {
            pts[(r.idx + 1) % pts.len()].clone()
        };
        Segment::new(a, b)
    }

    pub fn seg_refs(&self) -> Vec<SegRef> {
        let mut out = Vec::new();
        for comp in 0..self.component_count() {
            for idx in 0..self.seg_count(comp) {
                out.push(SegRef { comp, idx });
            }
        }
        out
    }

    /// True when the two references are consecutive segments of the same
    /// component (they legally share one endpoint).
    pub fn adjacent(&self, a: SegRef, b: SegRef) -> bool {
        if a.comp != b.comp {
            return false;
        }
        let n = self.seg_count(a.comp);
        let (i, j) = (a.idx, b.idx);
        if i == j {
            return true;
        }
        let succ = |k: usize| (k + 1) % n;
        if a.comp == 0 {
            i + 1 == j || j + 1 == i
        } else {
            succ(i) == j || succ(j) == i
        }
    }

    /// All proper pairwise crossings, sorted by the (y, x) of the crossing
    /// point. The diagram must be in general position.
    pub fn intersections(&self) -> Vec<(SegPair, Point)> {
        let refs = self.seg_refs();
        let mut out = Vec::new();
        for (n, &a) in refs.iter().enumerate() {
            for &b in refs.iter().skip(n + 1) {
                if self.adjacent(a, b) {
                    continue;
                }
                if let Meet::Proper(p) = self.segment(a).meet(&self.segment(b)) {
                    out.push((SegPair::new(a, b), p));
                }
            }
        }
        out.sort_by(|(_, p), (_, q)| p.cmp_yx(q));
        out
    }

    /// Full general-position and over_data validation.
    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.open_path.len() < 2 {
            return Err(GeometryError::TooFewPoints(0));
        }
        for (ci, c) in self.circles.iter().enumerate() {
            if c.len() < 3 {
                return Err(GeometryError::TooFewPoints(ci + 1));
            }
        }
        // Distinct consecutive points.
        for comp in 0..self.component_count() {
            let pts = self.component(comp);
            let n = pts.len();
            let m = if comp == 0 { n - 1 } else { n };
            for i in 0..m {
                if pts[i] == pts[(i + 1) % n] {
                    return Err(GeometryError::DuplicatePoint(comp, i));
                }
            }
        }
        let refs = self.seg_refs();
        // No horizontal segments.
        for &r in &refs {
            if self.segment(r).is_horizontal() {
                return Err(GeometryError::Horizontal(r));
            }
        }
        // Pairwise meets.
        let mut crossing_points: Vec<(Point, SegPair)> = Vec::new();
        for (n, &a) in refs.iter().enumerate() {
            for &b in refs.iter().skip(n + 1) {
                let sa = self.segment(a);
                let sb = self.segment(b);
                match sa.meet(&sb) {
                    Meet::None => {}
                    Meet::Overlap => return Err(GeometryError::CollinearOverlap(a, b)),
                    Meet::Touch(p) => {
                        if self.adjacent(a, b) {
                            // The shared vertex is the only legal contact.
                            let shared_ok = (sa.a == p || sa.b == p) && (sb.a == p || sb.b == p);
                            if !shared_ok {
                                return Err(GeometryError::Tangency(a, b));
                            }
                        } else {
                            return Err(GeometryError::Tangency(a, b));
                        }
                    }
                    Meet::Proper(p) => {
                        if self.adjacent(a, b) {
                            return Err(GeometryError::Tangency(a, b));
                        }
                        crossing_points.push((p, SegPair::new(a, b)));
                    }
                }
            }
        }
        // No three segments concurrent: crossing points must be distinct.
        let mut seen: BTreeMap<(String, String), SegPair> = BTreeMap::new();
        for (p, pair) in &crossing_points {
            let key = (p.x.to_string(), p.y.to_string());
            if seen.insert(key, *pair).is_some() {
                return Err(GeometryError::TriplePoint(p.clone()));
            }
        }
        // Endpoints on no other segment.
        for ep in [self.leg(), self.head()] {
            for &r in &refs {
                let s = self.segment(r);
                if s.contains_interior(ep) {
                    return Err(GeometryError::EndpointOnSegment(r));
                }
                // A circle vertex or foreign path vertex coinciding with an
                // endpoint is also a contact.
                if r.comp != 0 && (s.a == *ep || s.b == *ep) {
                    return Err(GeometryError::EndpointOnSegment(r));
                }
            }
        }
        // over_data must cover exactly the crossing pairs.
        let pairs: BTreeSet<SegPair> = crossing_points.iter().map(|(_, pr)| *pr).collect();
        for pair in self.over_data.keys() {
            if !pairs.contains(pair) {
                return Err(GeometryError::SpuriousOverData(*pair));
            }
        }
        for pair in &pairs {
            if !self.over_data.contains_key(pair) {
                return Err(GeometryError::MissingOverData(*pair));
            }
        }
        Ok(())
    }

    /// Validate everything except over_data totality (used mid-construction).
    pub fn validate_geometry(&self) -> Result<(), GeometryError> {
        let mut probe = self.clone();
        probe.over_data.clear();
        for (pair, _) in probe.intersections() {
            probe.over_data.insert(pair, OverSide::First);
        }
        probe.validate()
    }

    /// The set of crossing pairs.
    pub fn crossing_pairs(&self) -> BTreeSet<SegPair> {
        self.intersections().into_iter().map(|(p, _)| p).collect()
    }

    /// Bounding extremes.
    pub fn min_x(&self) -> Rat {
        self.all_points().map(|p| p.x.clone()).min().unwrap()
    }
    pub fn max_x(&self) -> Rat {
        self.all_points().map(|p| p.x.clone()).max().unwrap()
    }
    pub fn min_y(&self) -> Rat {
        self.all_points().map(|p| p.y.clone()).min().unwrap()
    }
    pub fn max_y(&self) -> Rat {
        self.all_points().map(|p| p.y.clone()).max().unwrap()
    }

    pub fn all_points(&self) -> impl Iterator<Item = &Point> {
        self.open_path.iter().chain(self.circles.iter().flatten())
    }
}

/// Restore general position by deterministic rational perturbation.
///
/// The schedule perturbs offending vertices by magnitudes delta/2^k seeded by
/// the vertex index; each attempt is checked exactly and must preserve the
/// set of crossing pairs so over_data transports unchanged. Inputs whose
/// crossing data cannot be preserved by any small perturbation are rejected.
pub fn normalize_general_position(
    d: &PLDiagram,
    delta: &Rat,
) -> Result<PLDiagram, GeometryError> {
    let mut work = d.clone();
    // Drop exact consecutive duplicates first; they carry no geometry.
    dedup_points(&mut work);
    if work.validate().is_ok() {
        return Ok(work);
    }
    let original_pairs = work.crossing_pairs();
    for k in 1..=24u32 {
        let step = delta * ratio(1, 1 << k.min(20));
        let mut cand = work.clone();
        let mut touched = false;
        for round in 0..64 {
            match cand.validate() {
                Ok(()) => return Ok(cand),
                Err(GeometryError::MissingOverData(_)) | Err(GeometryError::SpuriousOverData(_)) => {
                    // Geometry fine, data mismatch: not fixable by perturbation.
                    return Err(GeometryError::AmbiguousTangency);
                }
                Err(GeometryError::CollinearOverlap(a, b)) => {
                    if work.over_data.contains_key(&SegPair::new(a, b)) {
                        return Err(GeometryError::AmbiguousTangency);
                    }
                    perturb_seg_vertex(&mut cand, a, round, &step);
                    touched = true;
                }
                Err(GeometryError::Horizontal(r)) => {
                    // Tilt by moving the segment's second vertex down a hair.
                    let p = vertex_mut(&mut cand, r.comp, r.idx + 1);
                    p.y += &step;
                    touched = true;
                }
                Err(GeometryError::Tangency(a, b)) => {
                    if work.over_data.contains_key(&SegPair::new(a, b)) {
                        return Err(GeometryError::AmbiguousTangency);
                    }
                    perturb_seg_vertex(&mut cand, a, round, &step);
                    touched = true;
                }
                Err(GeometryError::TriplePoint(_)) | Err(GeometryError::EndpointOnSegment(_)) => {
                    // Perturb the leg slightly; endpoint contacts involve it
                    // often enough, and triple points break under any jiggle.
                    let p = vertex_mut(&mut cand, 0, 0);
                    p.x += &step * rat(1 + round as i64);
                    p.y += &step;
                    touched = true;
                }
                Err(GeometryError::DuplicatePoint(..)) => {
                    dedup_points(&mut cand);
                    touched = true;
                }
                Err(e) => return Err(e),
            }
            if !touched {
                break;
            }
        }
        if cand.validate().is_ok() && cand.crossing_pairs() == original_pairs {
            return Ok(cand);
        }
    }
    Err(GeometryError::PerturbationExhausted)
}

fn dedup_points(d: &mut PLDiagram) {
    d.open_path.dedup();
    if d.open_path.len() >= 2 && d.open_path.first() == d.open_path.last() {
        d.open_path.pop();
    }
    for c in &mut d.circles {
        c.dedup();
        while c.len() > 1 && c.first() == c.last() {
            c.pop();
        }
    }
}

fn vertex_mut(d: &mut PLDiagram, comp: usize, idx: usize) -> &mut Point {
    if comp == 0 {
        let n = d.open_path.len();
        &mut d.open_path[idx.min(n - 1)]
    } else {
        let c = &mut d.circles[comp - 1];
        let n = c.len();
        &mut c[idx % n]
    }
}

fn perturb_seg_vertex(d: &mut PLDiagram, r: SegRef, round: usize, step: &Rat) {
    // Deterministic pseudo-direction from the segment index and retry round.
    let salt = (r.comp * 7 + r.idx * 3 + round) % 4;
    let (sx, sy) = match salt {
        0 => (1, 1),
        1 => (-1, 1),
        2 => (1, -1),
        _ => (-1, -1),
    };
    let p = vertex_mut(d, r.comp, r.idx);
    p.x += step * rat(sx);
    p.y += step * rat(sy) * ratio(1, 2);
}

/// Split a segment of the diagram at an interior point, remapping over_data
/// so existing crossings keep their relation. Returns the refs of the two
/// pieces.
pub fn subdivide_at(d: &mut PLDiagram, r: SegRef, pt: Point) -> (SegRef, SegRef) {
    debug_assert!(d.segment(r).contains_interior(&pt));
    // Insert the point.
    if r.comp == 0 {
        d.open_path.insert(r.idx + 1, pt.clone());
    } else {
        d.circles[r.comp - 1].insert(r.idx + 1, pt.clone());
    }
    let lo = SegRef { comp: r.comp, idx: r.idx };
    let hi = SegRef { comp: r.comp, idx: r.idx + 1 };
    // Remap over_data: indices in this component at or above r.idx+1 shift by
    // one; crossings on the split segment move to whichever piece holds them.
    let old: Vec<(SegPair, OverSide)> = d.over_data.iter().map(|(k, v)| (*k, *v)).collect();
    d.over_data.clear();
    let remap = |s: SegRef| -> SegRef {
        if s.comp == r.comp && s.idx > r.idx {
            SegRef { comp: s.comp, idx: s.idx + 1 }
        } else {
            s
        }
    };
    for (SegPair(a, b), side) in old {
        let na = remap(a);
        let nb = remap(b);
        // A crossing that sat on the split segment belongs to whichever piece
        // still geometrically crosses the partner. Only one element of a pair
        // can be the split segment.
        let resolve = |cand: SegRef, other: SegRef, d: &PLDiagram| -> SegRef {
            if cand != lo {
                return cand;
            }
            let so = d.segment(other);
            for piece in [lo, hi] {
                if let Meet::Proper(_) = d.segment(piece).meet(&so) {
                    return piece;
                }
            }
            lo
        };
        let a2 = resolve(na, nb, d);
        let b2 = resolve(nb, a2, d);
        let newpair = SegPair::new(a2, b2);
        // The stored pair (a, b) is sorted, so `side == First` means a is
        // over; keep that relation through the renaming.
        let over_is_a = side == OverSide::First;
        let side2 = if (newpair.0 == a2) == over_is_a {
            OverSide::First
        } else {
            OverSide::Second
        };
        d.over_data.insert(newpair, side2);
    }
    (lo, hi)
}

/// Convenience for tests and fixtures: point with integer coordinates.
pub fn pt(x: i64, y: i64) -> Point {
    Point::of(x, y)
}

/// Convenience: rational point.
pub fn ptr(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
    Point::new(ratio(xn, xd), ratio(yn, yd))
}

/// Interpolated point at parameter t on a segment (exported for tests).
pub fn point_on(seg: &Segment, num: i64, den: i64) -> Point {
    lerp(&seg.a, &seg.b, &ratio(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn straight_arc() -> PLDiagram {
        PLDiagram::new(vec![pt(0, 0), pt(1, 3)], vec![])
    }

    #[test]
    fn straight_arc_valid_and_fixed() {
        let d = straight_arc();
        assert!(d.validate().is_ok());
        let nd = normalize_general_position(&d, &ratio(1, 10)).unwrap();
        assert_eq!(nd.open_path, d.open_path);
    }

    #[test]
    fn horizontal_gets_tilted() {
        let d = PLDiagram::new(vec![pt(0, 0), pt(2, 0), pt(3, 4)], vec![]);
        assert_eq!(
            d.validate(),
            Err(GeometryError::Horizontal(SegRef { comp: 0, idx: 0 }))
        );
        let nd = normalize_general_position(&d, &ratio(1, 10)).unwrap();
        assert!(nd.validate().is_ok());
        assert!(nd.intersections().is_empty());
    }

    #[test]
    fn x_crossing_listed_once() {
        let mut d = PLDiagram::new(
            vec![pt(0, 0), pt(2, 2), pt(0, 3), pt(2, 1)],
            vec![],
        );
        // Segments 0 and 2 cross at (1,1)... segment 0 = (0,0)-(2,2),
        // segment 2 = (0,3)-(2,1): they cross where x=y and y=3-x: (1.5, 1.5)? no:
        // y = x and y = 3 - x -> x = 1.5, y = 1.5. Proper.
        let ints = d.intersections();
        assert_eq!(ints.len(), 1);
        let (pair, p) = &ints[0];
        assert_eq!(*pair, SegPair::new(SegRef { comp: 0, idx: 0 }, SegRef { comp: 0, idx: 2 }));
        assert_eq!(p.x, ratio(3, 2));
        assert_eq!(p.y, ratio(3, 2));
        d.over_data.insert(*pair, OverSide::First);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn missing_over_data_rejected() {
        let d = PLDiagram::new(vec![pt(0, 0), pt(2, 2), pt(0, 3), pt(2, 1)], vec![]);
        assert!(matches!(d.validate(), Err(GeometryError::MissingOverData(_))));
    }

    #[test]
    fn circle_component_segments() {
        let d = PLDiagram::new(
            vec![pt(10, 0), pt(11, 1)],
            vec![vec![pt(0, 0), pt(2, 1), pt(1, 3)]],
        );
        assert_eq!(d.seg_count(1), 3);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn subdivision_keeps_crossings() {
        let mut d = PLDiagram::new(vec![pt(0, 0), pt(2, 2), pt(0, 3), pt(2, 1)], vec![]);
        let pair = SegPair::new(SegRef { comp: 0, idx: 0 }, SegRef { comp: 0, idx: 2 });
        d.over_data.insert(pair, OverSide::Second);
        d.validate().unwrap();
        // Split segment 0 below the crossing.
        let seg = d.segment(SegRef { comp: 0, idx: 0 });
        let p = point_on(&seg, 1, 4);
        subdivide_at(&mut d, SegRef { comp: 0, idx: 0 }, p);
        assert!(d.validate().is_ok());
        assert_eq!(d.intersections().len(), 1);
    }
}
