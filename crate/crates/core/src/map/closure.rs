//! Under- and over-closures: joining the endpoints by an arc passing
//! entirely under (resp. over) every strand it crosses.
//!
//! The route is the shortest face chain from the head's face to the leg's
//! face in the dual graph, with deterministic tie-breaking; route
//! independence up to invariants is a tested property, not an assumption.

use super::edit::MapEdit;
use super::knotoid::{Dart, KnotoidMap, MapError, MapMode};
use std::collections::BTreeMap;

/// Join head to leg with an arc crossing every traversed strand under.
pub fn under_closure(m: &KnotoidMap) -> Result<KnotoidMap, MapError> {
    closure(m, false)
}

/// Join head to leg with an arc crossing every traversed strand over.
pub fn over_closure(m: &KnotoidMap) -> Result<KnotoidMap, MapError> {
    closure(m, true)
}

fn closure(m: &KnotoidMap, arc_over: bool) -> Result<KnotoidMap, MapError> {
    if !matches!(m.mode(), MapMode::Spherical) {
        return Err(MapError::NotSpherical);
    }
    let leg = m.leg_dart().ok_or(MapError::NoEndpoints)?;
    let head = m.head_dart().ok_or(MapError::NoEndpoints)?;
    let start = m.face_id(head);
    let goal = m.face_id(leg);
    let route = dual_route(m, start, goal);
    // Strand stubs left after dissolving the endpoint vertices.
    let x_h = m.alpha(head);
    let x_l = m.alpha(leg);
    let mut ed = MapEdit::new(m);
    ed.drop_endpoints();
    if route.is_empty() {
        if x_h == leg {
            // The open component is a single edge: closing it makes a loop.
            ed.unwire(head);
            ed.add_free_loop();
        } else {
            ed.wire(x_h, x_l);
        }
        let (map, _) = ed.finish(None)?;
        return Ok(map);
    }
    // The arc crosses edges e_1..e_k. At each crossing the arc passes from
    // the current face through the dart side `w` facing it.
    //
    // Positional model at crossing i: arc flows east; the crossed strand
    // runs vertically with the approach face on the walk side of `w`, which
    // puts w's vertex to the north; positive rotation order of the four
    // darts is [strand-N, arc-E, strand-S, arc-W]. The strand pass is
    // {N, S}, the arc pass {E, W}; slot naming picks which pass is over.
    //
    // A crossed edge may be the head's or leg's own edge; the piece of it
    // on the endpoint side then merges into the arc chain instead of being
    // wired to the dissolving endpoint dart.
    let mut chain_start = x_h;
    let mut chain_end = x_l;
    let mut arc_wires: Vec<(Dart, Dart)> = Vec::new(); // (arc-west, arc-east) per crossing
    for &w in &route {
        let ws = m.alpha(w);
        let k = ed.new_crossing(1);
        let (dn, de, ds, dw) = if arc_over {
            (ed.dart(k, 0), ed.dart(k, 1), ed.dart(k, 2), ed.dart(k, 3))
        } else {
            (ed.dart(k, 3), ed.dart(k, 0), ed.dart(k, 1), ed.dart(k, 2))
        };
        // w points north away from its vertex, so its vertex piece is the
        // southern one and takes the south stub.
        for (side_dart, stub) in [(w, ds), (ws, dn)] {
            if side_dart == head {
                chain_start = stub;
            } else if side_dart == leg {
                chain_end = stub;
            } else {
                ed.wire(side_dart, stub);
            }
        }
        arc_wires.push((dw, de));
    }
    let mut prev = chain_start;
    for (dw, de) in arc_wires {
        ed.wire(prev, dw);
        prev = de;
    }
    ed.wire(prev, chain_end);
    let (map, _) = ed.finish(None)?;
    Ok(map)
}

/// Shortest dual path between two faces; returns the darts whose sides face
/// the region the arc leaves when crossing (the approach side).
fn dual_route(m: &KnotoidMap, start: Dart, goal: Dart) -> Vec<Dart> {
    if start == goal {
        return vec![];
    }
    // BFS over faces; neighbor faces across each boundary dart's edge.
    let mut prev: BTreeMap<Dart, (Dart, Dart)> = BTreeMap::new(); // face -> (prev face, crossing dart)
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    prev.insert(start, (start, usize::MAX));
    while let Some(f) = queue.pop_front() {
        if f == goal {
            break;
        }
        let mut darts = m.face_darts(f);
        darts.sort_unstable();
        for d in darts {
            let g = m.face_id(m.alpha(d));
            if g != f && !prev.contains_key(&g) {
                prev.insert(g, (f, d));
                queue.push_back(g);
            }
        }
    }
    let mut route = Vec::new();
    let mut cur = goal;
    while cur != start {
        let (p, d) = prev[&cur];
        route.push(d);
        cur = p;
    }
    route.reverse();
    route
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::knotoid::KnotoidMap;

    #[test]
    fn trivial_knotoid_closes_to_unknot() {
        let m = KnotoidMap::trivial_knotoid(false);
        let c = under_closure(&m).unwrap();
        assert_eq!(c.n_crossings(), 0);
        assert_eq!(c.free_loops(), 1);
        assert!(!c.has_endpoints());
    }

    #[test]
    fn kink_closure_keeps_crossing() {
        // One-kink arc: leg and head share the big face, so the closure arc
        // crosses nothing.
        let over_out = 1usize;
        let mut alpha = vec![0; 6];
        let wire = |alpha: &mut Vec<usize>, a: usize, b: usize| {
            alpha[a] = b;
            alpha[b] = a;
        };
        wire(&mut alpha, 4, 0);
        wire(&mut alpha, 2, 3);
        wire(&mut alpha, over_out, 5);
        let m = KnotoidMap::from_parts(vec![3], alpha, true, 0, MapMode::Spherical).unwrap();
        let c = under_closure(&m).unwrap();
        assert_eq!(c.n_crossings(), 1);
        assert_eq!(c.free_loops(), 0);
        assert!(c.validate().is_ok());
    }
}
