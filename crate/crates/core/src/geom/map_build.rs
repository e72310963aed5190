//! Conversion from PL diagrams to combinatorial knotoid maps.

use super::diagram::{OverSide, PLDiagram, SegPair};
use super::point::{cmp_rotation, Point, Rat, Vector};
use crate::map::knotoid::{KnotoidMap, MapError, MapMode};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A passage of a strand through a crossing point, located on one segment.
#[derive(Clone, Debug)]
struct Passage {
    crossing: usize,
    /// Parameter along the oriented component walk: (segment index within
    /// the component, interpolation parameter numerator order).
    t_seg: usize,
    t_param: Rat,
    /// Direction of travel along the segment at the crossing.
    dir: Vector,
    is_over: bool,
}

/// Build the combinatorial map of a diagram in general position.
///
/// In planar mode the outer face is located geometrically: every bounded
/// face's boundary walk has positive signed area under the face convention
/// used here, so the outer face of the leg's component is the walk with
/// nonpositive area.
pub fn to_knotoid_map(d: &PLDiagram, planar: bool) -> Result<KnotoidMap, MapError> {
    let ints = d.intersections();
    let crossing_pts: Vec<Point> = ints.iter().map(|(_, p)| p.clone()).collect();
    // Passages per component.
    let mut passages: Vec<Vec<Passage>> = vec![Vec::new(); d.component_count()];
    for (ci, (SegPair(a, b), pt)) in ints.iter().enumerate() {
        let over = match d.over_data.get(&SegPair(*a, *b)) {
            Some(OverSide::First) => *a,
            Some(OverSide::Second) => *b,
            None => *a,
        };
        for &r in [a, b].iter() {
            let seg = d.segment(*r);
            let dirv = seg.b.sub(&seg.a);
            let t = param_on(&seg.a, &dirv, pt);
            passages[r.comp].push(Passage {
                crossing: ci,
                t_seg: r.idx,
                t_param: t,
                dir: dirv.clone(),
                is_over: *r == over,
            });
        }
    }
    for comp in passages.iter_mut() {
        comp.sort_by(|p, q| {
            p.t_seg
                .cmp(&q.t_seg)
                .then_with(|| p.t_param.cmp(&q.t_param))
        });
    }
    let n_crossings = ints.len();
    let has_endpoints = true;
    let mut free_loops = 0usize;

    // Dart bookkeeping: entries (crossing passage end) expressed as dart ids
    // in the final numbering. At each crossing we still need the slot
    // arrangement; collect the four (direction, passage-kind) first.
    // For each crossing: [(dir_from_point, comp, seq, incoming)] where
    // incoming means the strand arrives along this dart.
    struct Stub {
        dir: Vector,
        /// (component, passage position within the component, true = the
        /// in-stub of this passage)
        key: (usize, usize, bool),
        is_over: bool,
    }
    let mut stubs: Vec<Vec<Stub>> = (0..n_crossings).map(|_| Vec::new()).collect();
    for (comp, plist) in passages.iter().enumerate() {
        for (pos, pass) in plist.iter().enumerate() {
            // In-stub points back against travel; out-stub along travel.
            let neg = Vector {
                x: -pass.dir.x.clone(),
                y: -pass.dir.y.clone(),
            };
            stubs[pass.crossing].push(Stub {
                dir: neg,
                key: (comp, pos, true),
                is_over: pass.is_over,
            });
            stubs[pass.crossing].push(Stub {
                dir: pass.dir.clone(),
                key: (comp, pos, false),
                is_over: pass.is_over,
            });
        }
    }
    // Slot assignment: sort the four stubs in positive rotation and rotate
    // so the under in-stub lands on slot 0.
    let mut over_in = vec![0u8; n_crossings];
    let mut dart_of: BTreeMap<(usize, usize, bool), usize> = BTreeMap::new();
    for (ci, sv) in stubs.iter_mut().enumerate() {
        assert_eq!(sv.len(), 4, "crossing must have two passages");
        sv.sort_by(|a, b| cmp_rotation(&a.dir, &b.dir));
        let under_in = sv
            .iter()
            .position(|s| !s.is_over && s.key.2)
            .expect("under in-stub");
        for k in 0..4 {
            let stub = &sv[(under_in + k) % 4];
            let dart = 4 * ci + k;
            dart_of.insert(stub.key, dart);
            if stub.is_over && stub.key.2 {
                over_in[ci] = k as u8;
            }
        }
        if over_in[ci] != 1 && over_in[ci] != 3 {
            return Err(MapError::BadOverIn(ci));
        }
    }
    // Edges: walk each component, connecting consecutive passage stubs.
    let leg_dart = 4 * n_crossings;
    let head_dart = 4 * n_crossings + 1;
    let mut alpha = vec![usize::MAX; 4 * n_crossings + 2];
    let mut wire = |a: usize, b: usize, alpha: &mut Vec<usize>| {
        alpha[a] = b;
        alpha[b] = a;
    };
    for (comp, plist) in passages.iter().enumerate() {
        if comp == 0 {
            // Open component: leg -> passages -> head.
            let mut prev = leg_dart;
            for (pos, _) in plist.iter().enumerate() {
                let into = dart_of[&(comp, pos, true)];
                wire(prev, into, &mut alpha);
                prev = dart_of[&(comp, pos, false)];
            }
            wire(prev, head_dart, &mut alpha);
        } else if plist.is_empty() {
            free_loops += 1;
        } else {
            for pos in 0..plist.len() {
                let from = dart_of[&(comp, pos, false)];
                let into = dart_of[&(comp, (pos + 1) % plist.len(), true)];
                wire(from, into, &mut alpha);
            }
        }
    }
    let mode = MapMode::Spherical;
    let m = KnotoidMap::from_parts(over_in, alpha, has_endpoints, free_loops, mode)?;
    if !planar {
        return Ok(m);
    }
    // Outer face: reconstruct each face's geometric boundary in the leg's
    // component and take the one with nonpositive signed area. The geometry
    // of a map edge is the polyline between consecutive passages.
    let outer = locate_outer_face(d, &m, &passages, &crossing_pts)?;
    Ok(m.with_mode(MapMode::Planar { outer_anchor: outer }))
}

fn param_on(a: &Point, dir: &Vector, p: &Point) -> Rat {
    if !dir.x.is_zero() {
        (&p.x - &a.x) / &dir.x
    } else {
        (&p.y - &a.y) / &dir.y
    }
}

/// Map each dart to the polyline of its edge, oriented away from the dart's
/// vertex.
fn walk_points(
    d: &PLDiagram,
    passages: &[Vec<Passage>],
    crossing_pts: &[Point],
) -> BTreeMap<usize, Vec<Point>> {
    // Recompute dart numbering exactly as in `to_knotoid_map`.
    let ints = d.intersections();
    let n_crossings = ints.len();
    let mut dart_of: BTreeMap<(usize, usize, bool), usize> = BTreeMap::new();
    {
        struct Stub {
            dir: Vector,
            key: (usize, usize, bool),
            is_over: bool,
        }
        let mut stubs: Vec<Vec<Stub>> = (0..n_crossings).map(|_| Vec::new()).collect();
        for (comp, plist) in passages.iter().enumerate() {
            for (pos, pass) in plist.iter().enumerate() {
                let neg = Vector {
                    x: -pass.dir.x.clone(),
                    y: -pass.dir.y.clone(),
                };
                stubs[pass.crossing].push(Stub {
                    dir: neg,
                    key: (comp, pos, true),
                    is_over: pass.is_over,
                });
                stubs[pass.crossing].push(Stub {
                    dir: pass.dir.clone(),
                    key: (comp, pos, false),
                    is_over: pass.is_over,
                });
            }
        }
        for (ci, sv) in stubs.iter_mut().enumerate() {
            sv.sort_by(|a, b| cmp_rotation(&a.dir, &b.dir));
            let under_in = sv.iter().position(|s| !s.is_over && s.key.2).unwrap();
            for k in 0..4 {
                dart_of.insert(sv[(under_in + k) % 4].key, 4 * ci + k);
            }
        }
    }
    let leg_dart = 4 * n_crossings;
    let head_dart = 4 * n_crossings + 1;
    // For each component: the chain of points between passages.
    let mut out: BTreeMap<usize, Vec<Point>> = BTreeMap::new();
    for (comp, plist) in passages.iter().enumerate() {
        let pts: Vec<Point> = if comp == 0 {
            d.open_path.clone()
        } else {
            d.circles[comp - 1].clone()
        };
        let nseg = if comp == 0 { pts.len() - 1 } else { pts.len() };
        let seg_start = |i: usize| -> Point { pts[i % pts.len()].clone() };
        // Location of passage: (seg index, point).
        let locs: Vec<(usize, Point)> = plist
            .iter()
            .map(|p| (p.t_seg, crossing_pts[p.crossing].clone()))
            .collect();
        // Chain between passage pos and pos+1 (or endpoints for comp 0).
        let chain = |from: Option<usize>, to: Option<usize>| -> Vec<Point> {
            let mut chain = Vec::new();
            let (s0, p0) = match from {
                Some(i) => (locs[i].0, locs[i].1.clone()),
                None => (0, seg_start(0)),
            };
            let (s1, p1) = match to {
                Some(i) => (locs[i].0, locs[i].1.clone()),
                None => (nseg - 1, pts[pts.len() - 1].clone()),
            };
            chain.push(p0);
            if s1 >= s0 {
                for s in s0..s1 {
                    chain.push(seg_start(s + 1));
                }
            } else {
                // wrapped (circles)
                for s in s0..nseg {
                    chain.push(seg_start((s + 1) % nseg));
                }
                for s in 0..s1 {
                    chain.push(seg_start(s + 1));
                }
            }
            chain.push(p1);
            chain.dedup();
            chain
        };
        if comp == 0 {
            let n = plist.len();
            for pos in 0..=n {
                let from = if pos == 0 { None } else { Some(pos - 1) };
                let to = if pos == n { None } else { Some(pos) };
                let c = chain(from, to);
                let d_from = match from {
                    None => leg_dart,
                    Some(i) => dart_of[&(comp, i, false)],
                };
                let d_to = match to {
                    None => head_dart,
                    Some(i) => dart_of[&(comp, i, true)],
                };
                out.insert(d_from, c.clone());
                let mut rev = c;
                rev.reverse();
                out.insert(d_to, rev);
            }
        } else if !plist.is_empty() {
            let n = plist.len();
            for pos in 0..n {
                let c = chain(Some(pos), Some((pos + 1) % n));
                let d_from = dart_of[&(comp, pos, false)];
                let d_to = dart_of[&(comp, (pos + 1) % n, true)];
                out.insert(d_from, c.clone());
                let mut rev = c;
                rev.reverse();
                out.insert(d_to, rev);
            }
        }
    }
    // Handle a circle wrapping with a single passage: from == to.
    out
}

fn locate_outer_face(
    d: &PLDiagram,
    m: &KnotoidMap,
    passages: &[Vec<Passage>],
    crossing_pts: &[Point],
) -> Result<usize, MapError> {
    let geom = walk_points(d, passages, crossing_pts);
    let leg = m.leg_dart().ok_or(MapError::NoEndpoints)?;
    // Faces of the leg's component.
    let mut candidates: Vec<usize> = Vec::new();
    {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![leg];
        while let Some(x) = stack.pop() {
            if !seen.insert(x) {
                continue;
            }
            stack.push(m.alpha(x));
            stack.push(m.sigma(x));
        }
        let mut fseen = std::collections::BTreeSet::new();
        for &x in &seen {
            let f = m.face_id(x);
            if fseen.insert(f) {
                candidates.push(f);
            }
        }
    }
    if candidates.len() == 1 {
        return Ok(candidates[0]);
    }
    // Signed area of each face walk: bounded faces circulate negatively
    // under the walk convention, so the outer face has the maximal area.
    let two = super::point::rat(2);
    let mut best: Option<(Rat, usize)> = None;
    for &f in &candidates {
        let mut area: Rat = num_traits::Zero::zero();
        for dart in m.face_darts(f) {
            if let Some(chain) = geom.get(&dart) {
                for w in chain.windows(2) {
                    area += &w[0].x * &w[1].y - &w[1].x * &w[0].y;
                }
            }
        }
        area /= &two;
        let better = match &best {
            None => true,
            Some((a, _)) => area > *a,
        };
        if better {
            best = Some((area, f));
        }
    }
    Ok(best.expect("nonempty").1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::diagram::pt;
    use crate::map::moves::is_normal;

    #[test]
    fn zero_crossing_arc() {
        let d = PLDiagram::new(vec![pt(0, 0), pt(1, 3)], vec![]);
        let m = to_knotoid_map(&d, false).unwrap();
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.edge_count(), 1);
        assert_eq!(m.faces().len(), 1);
    }

    /// Kinked arc crossing itself once at (11/6, 11/6).
    pub fn kink_diagram() -> PLDiagram {
        let mut d = PLDiagram::new(
            vec![pt(0, 0), pt(4, 4), pt(6, 1), pt(1, 2), pt(5, 6)],
            vec![],
        );
        let ints = d.intersections();
        assert_eq!(ints.len(), 1, "{ints:?}");
        d.over_data.insert(ints[0].0, OverSide::First);
        d.validate().unwrap();
        d
    }

    #[test]
    fn one_crossing_kink() {
        let d = kink_diagram();
        let m = to_knotoid_map(&d, false).unwrap();
        assert_eq!(m.vertex_count(), 3);
        assert_eq!(m.edge_count(), 3);
        assert_eq!(m.faces().len(), 2);
        assert_eq!(
            m.vertex_count() as i64 - m.edge_count() as i64 + m.face_count_total() as i64,
            2
        );
    }

    /// Open trefoil: two braid strands crossing three times, closed around
    /// the right except for the two free ends.
    pub fn open_trefoil() -> PLDiagram {
        let mut d = PLDiagram::new(
            vec![
                pt(0, 0),
                pt(2, 2),
                pt(0, 4),
                pt(2, 6),
                pt(4, 5),
                pt(4, -1),
                pt(2, 0),
                pt(0, 2),
                pt(2, 4),
                pt(0, 6),
            ],
            vec![],
        );
        let ints = d.intersections();
        assert_eq!(ints.len(), 3, "{ints:?}");
        for (pair, p) in &ints {
            // The +slope braid segment passes over at every crossing.
            let SegPair(a, b) = *pair;
            let sa = d.segment(a);
            let rising = sa.b.x > sa.a.x;
            let side = if rising { OverSide::First } else { OverSide::Second };
            let _ = p;
            d.over_data.insert(*pair, side);
        }
        d.validate().unwrap();
        d
    }

    #[test]
    fn trefoil_with_endpoints_counts() {
        let d = open_trefoil();
        let m = to_knotoid_map(&d, false).unwrap();
        assert_eq!(m.vertex_count(), 5);
        assert_eq!(m.edge_count(), 7);
        assert_eq!(m.faces().len(), 4);
    }

    #[test]
    fn outer_face_and_is_normal() {
        // Leg far west of a kinked arc: the leg must be on the outer face.
        let mut d = PLDiagram::new(
            vec![pt(-10, -1), pt(0, 0), pt(4, 4), pt(6, 1), pt(1, 2), pt(5, 6)],
            vec![],
        );
        let ints = d.intersections();
        assert_eq!(ints.len(), 1);
        d.over_data.insert(ints[0].0, OverSide::Second);
        d.validate().unwrap();
        let m = to_knotoid_map(&d, true).unwrap();
        assert!(is_normal(&m).unwrap());
    }

    #[test]
    fn head_inside_loop_detected() {
        // Reverse the kinked arc so the old leg becomes the head; the head
        // edge then dangles in the unbounded region, and the leg (old head)
        // is likewise outside the loop: both stay normal. The loop face must
        // nevertheless differ from the outer face.
        let d = kink_diagram();
        let m = to_knotoid_map(&d, true).unwrap();
        let outer = m.outer_face().unwrap();
        let faces = m.faces();
        assert_eq!(faces.len(), 2);
        let inner: Vec<_> = faces
            .iter()
            .filter(|f| m.face_id(f[0]) != outer)
            .collect();
        assert_eq!(inner.len(), 1);
        // The loop face of a single kink is a monogon.
        assert_eq!(inner[0].len(), 1);
    }
}
