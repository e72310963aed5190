//! Reidemeister moves on knotoid maps, the spherical move, and greedy
//! simplification.
//!
//! Moves are compiled through `MapEdit`: the wiring below fixes the cyclic
//! slot arrangement of each touched crossing (positional model relative to
//! the host face) and leaves strand flow to the compile-time orientation
//! solver. Univalent endpoints can never sit inside a move's local disk:
//! a monogon, bigon or triangle face whose boundary passes an endpoint has
//! extra walk corners and fails the pattern, so the "away from the
//! endpoints" restriction holds by construction.

use super::edit::MapEdit;
use super::knotoid::{Dart, KnotoidMap, MapError, MapMode};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveSite {
    /// Remove the kink whose monogon face contains this dart.
    R1Neg { monogon: Dart },
    /// Insert a kink on `host`'s edge, the loop poking into face_of(host).
    /// `loop_over` picks which new pass goes over (the writhe sign).
    R1Pos { host: Dart, loop_over: bool },
    /// Remove the bigon face containing this dart.
    R2Neg { bigon: Dart },
    /// Push the strand side at `push` across the side at `across` (same
    /// face); `over` makes the pushed strand pass over.
    R2Pos { push: Dart, across: Dart, over: bool },
    /// Flip the triangle face containing this dart.
    R3 { face: Dart },
}

impl MoveSite {
    pub fn tag(&self) -> &'static str {
        match self {
            MoveSite::R1Neg { .. } => "r1-",
            MoveSite::R1Pos { .. } => "r1+",
            MoveSite::R2Neg { .. } => "r2-",
            MoveSite::R2Pos { .. } => "r2+",
            MoveSite::R3 { .. } => "r3",
        }
    }

    pub fn is_reducing(&self) -> bool {
        matches!(self, MoveSite::R1Neg { .. } | MoveSite::R2Neg { .. })
    }
}

fn monogon_pattern(m: &KnotoidMap, d: Dart) -> Option<Dart> {
    // A monogon's walk is a single dart: sigma(alpha(d)) == d.
    if m.is_crossing_dart(d) && m.next_in_face(d) == d {
        Some(d)
    } else {
        None
    }
}

struct BigonPattern {
    d: Dart,
    e: Dart,
    c1: usize,
    c2: usize,
}

fn bigon_pattern(m: &KnotoidMap, d0: Dart) -> Option<BigonPattern> {
    let e = m.next_in_face(d0);
    if e == d0 || m.next_in_face(e) != d0 {
        return None;
    }
    if !m.is_crossing_dart(d0) || !m.is_crossing_dart(e) {
        return None;
    }
    let (c1, c2) = (m.crossing_of(d0), m.crossing_of(m.alpha(d0)));
    if c1 == c2 {
        return None;
    }
    // Strand along edge(d) must pass the same way at both crossings.
    let p1 = m.slot_of(d0) % 2;
    let p2 = m.slot_of(m.alpha(d0)) % 2;
    if p1 != p2 {
        return None;
    }
    Some(BigonPattern { d: d0, e, c1, c2 })
}

struct TrianglePattern {
    darts: [Dart; 3],
}

fn triangle_pattern(m: &KnotoidMap, d0: Dart) -> Option<TrianglePattern> {
    let d1 = d0;
    let d2 = m.next_in_face(d1);
    let d3 = m.next_in_face(d2);
    if d2 == d1 || d3 == d1 || m.next_in_face(d3) != d1 {
        return None;
    }
    for d in [d1, d2, d3] {
        if !m.is_crossing_dart(d) {
            return None;
        }
    }
    let cs = [m.crossing_of(d1), m.crossing_of(d2), m.crossing_of(d3)];
    if cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2] {
        return None;
    }
    // At least one edge of the triangle must pass uniformly over or
    // uniformly under both other strands; otherwise no strand can slide.
    let uniform = [d1, d2, d3].iter().any(|&d| {
        m.slot_of(d) % 2 == m.slot_of(m.alpha(d)) % 2
    });
    if !uniform {
        return None;
    }
    Some(TrianglePattern { darts: [d1, d2, d3] })
}

/// All applicable move sites. Increasing sites are included unless
/// `reducing_only`; `budget` caps the crossing count after the move.
pub fn reidemeister_sites(m: &KnotoidMap, budget: usize, reducing_only: bool) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let faces = m.faces();
    for f in &faces {
        if f.len() == 1 {
            if monogon_pattern(m, f[0]).is_some() {
                out.push(MoveSite::R1Neg { monogon: f[0] });
            }
        } else if f.len() == 2 {
            if bigon_pattern(m, f[0]).is_some() {
                out.push(MoveSite::R2Neg { bigon: f[0] });
            }
        } else if f.len() == 3 && triangle_pattern(m, f[0]).is_some() {
            out.push(MoveSite::R3 { face: f[0] });
        }
    }
    if !reducing_only {
        if m.n_crossings() + 1 <= budget {
            for d in 0..m.n_darts() {
                for loop_over in [false, true] {
                    out.push(MoveSite::R1Pos { host: d, loop_over });
                }
            }
        }
        if m.n_crossings() + 2 <= budget {
            for f in &faces {
                for &a in f {
                    for &b in f {
                        if a == b {
                            continue;
                        }
                        for over in [false, true] {
                            out.push(MoveSite::R2Pos { push: a, across: b, over });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Apply a move. Returns the new map and a site that undoes it.
pub fn apply_reidemeister(m: &KnotoidMap, site: MoveSite) -> Result<(KnotoidMap, MoveSite), MapError> {
    match site {
        MoveSite::R1Neg { monogon } => apply_r1neg(m, monogon),
        MoveSite::R1Pos { host, loop_over } => apply_r1pos(m, host, loop_over),
        MoveSite::R2Neg { bigon } => apply_r2neg(m, bigon),
        MoveSite::R2Pos { push, across, over } => apply_r2pos(m, push, across, over),
        MoveSite::R3 { face } => apply_r3(m, face),
    }
}

fn old_outer_hint(m: &KnotoidMap, avoid: &[Dart]) -> Option<Dart> {
    match m.mode() {
        MapMode::Spherical => None,
        MapMode::Planar { .. } => {
            let outer = m.outer_face().ok()?;
            m.face_darts(outer)
                .into_iter()
                .find(|d| !avoid.contains(d))
        }
    }
}

fn apply_r1neg(m: &KnotoidMap, monogon: Dart) -> Result<(KnotoidMap, MoveSite), MapError> {
    let d = monogon_pattern(m, monogon).ok_or(MapError::StaleSite)?;
    let c = m.crossing_of(d);
    let loop_in = m.alpha(d);
    debug_assert_eq!(m.crossing_of(loop_in), c);
    // Through-strand slots: the two not in the loop.
    let loop_slots = [m.slot_of(d), m.slot_of(loop_in)];
    let through: Vec<Dart> = (0..4u8)
        .filter(|s| !loop_slots.contains(s))
        .map(|s| m.dart_at(c, s))
        .collect();
    let loop_was_over = m.slot_of(d) % 2 == 1 && m.slot_of(loop_in) % 2 == 1;
    let _ = loop_was_over;
    // The re-inserted kink's loop pass: the loop edge uses one dart of each
    // pass, so record which pass of the through strand was under.
    let loop_pass_over = loop_slots.iter().any(|&s| s % 2 == 1);
    let x = m.alpha(through[0]);
    let y = m.alpha(through[1]);
    let crossing_darts: Vec<Dart> = (0..4).map(|s| m.dart_at(c, s)).collect();
    let hint = old_outer_hint(m, &crossing_darts).or_else(|| {
        if crossing_darts.contains(&x) {
            None
        } else {
            Some(x)
        }
    });
    let mut ed = MapEdit::new(m);
    ed.splice_delete_crossings(&[c]);
    let (new_map, tr) = ed.finish(hint)?;
    // Undo hint: re-insert the kink on the spliced edge, poking into the
    // face that absorbed the monogon.
    let inv_host = tr.get(x).or_else(|| tr.get(y)).unwrap_or(0);
    Ok((
        new_map,
        MoveSite::R1Pos { host: inv_host, loop_over: loop_pass_over },
    ))
}

fn apply_r1pos(m: &KnotoidMap, host: Dart, loop_over: bool) -> Result<(KnotoidMap, MoveSite), MapError> {
    if host >= m.n_darts() {
        return Err(MapError::StaleSite);
    }
    let d = host;
    let d2 = m.alpha(d);
    let mut ed = MapEdit::new(m);
    // Positional model: host edge vertical, d pointing north, loop west
    // (into face_of(d)). Crossing darts n, e, s, w in positive rotation.
    // Main pass {n, s}, loop-return pass {e, w}; loop edge n-w; stubs:
    // d <-> s, d2 <-> e.
    // Slot naming: if the loop pass {e,w} is over: slots [n,e,s,w]=[0..3].
    // Otherwise rotate so the main pass sits at odd slots: [e,s,w,n]=[0..3].
    let k = ed.new_crossing(1);
    let (n, e, s, w) = if loop_over {
        (ed.dart(k, 0), ed.dart(k, 1), ed.dart(k, 2), ed.dart(k, 3))
    } else {
        (ed.dart(k, 3), ed.dart(k, 0), ed.dart(k, 1), ed.dart(k, 2))
    };
    ed.wire(d, s);
    ed.wire(n, w);
    ed.wire(e, d2);
    let hint = old_outer_hint(m, &[]);
    let (new_map, tr) = ed.finish(hint)?;
    // The monogon of the new kink is the face walked by exactly one of the
    // new darts; locate it.
    let mut inv = None;
    for s in 0..4u8 {
        if let Some(nd) = probe_new_dart(&tr, m, k, s) {
            if new_map.next_in_face(nd) == nd {
                inv = Some(nd);
                break;
            }
        }
    }
    let inv = inv.ok_or(MapError::StaleSite)?;
    Ok((new_map, MoveSite::R1Neg { monogon: inv }))
}

// The extended dart id of crossing k slot s matches MapEdit::dart; rebuild it
// here for translation lookups after the edit has been consumed.
fn probe_new_dart(tr: &super::edit::DartTranslation, m: &KnotoidMap, k: usize, s: u8) -> Option<Dart> {
    let base = 4 * m.n_crossings() + if m.has_endpoints() { 2 } else { 0 };
    let ext = base + 4 * (k - m.n_crossings()) + s as usize;
    tr.get(ext)
}

fn apply_r2neg(m: &KnotoidMap, bigon: Dart) -> Result<(KnotoidMap, MoveSite), MapError> {
    let p = bigon_pattern(m, bigon).ok_or(MapError::StaleSite)?;
    let BigonPattern { d, e, c1: _, c2: _ } = p;
    let ca = m.crossing_of(d);
    let cb = m.crossing_of(m.alpha(d));
    // Outside partners for the undo site: strand 1 beyond ca, strand 2
    // beyond ca.
    let strand1_out_ca = m.alpha(m.pass_opposite(d));
    let strand2_out_ca = m.alpha(m.pass_opposite(m.alpha(e)));
    let strand1_over = m.slot_of(d) % 2 == 1;
    let dead_darts: Vec<Dart> = [ca, cb]
        .iter()
        .flat_map(|&c| (0..4).map(move |s| m.dart_at(c, s as u8)))
        .collect();
    let hint = old_outer_hint(m, &dead_darts).or_else(|| {
        [strand1_out_ca, strand2_out_ca]
            .into_iter()
            .find(|x| !dead_darts.contains(x))
    });
    let mut ed = MapEdit::new(m);
    ed.splice_delete_crossings(&[ca, cb]);
    let (new_map, tr) = ed.finish(hint)?;
    let push = tr.get(strand1_out_ca);
    let across = tr.get(strand2_out_ca);
    let inv = match (push, across) {
        (Some(p1), Some(p2)) => {
            // Use the dart sides bordering the merged face.
            let f = new_map.face_id(p1);
            let across = if new_map.face_id(p2) == f {
                p2
            } else {
                new_map.alpha(p2)
            };
            MoveSite::R2Pos { push: p1, across, over: strand1_over }
        }
        _ => MoveSite::R2Pos { push: 0, across: 0, over: strand1_over },
    };
    Ok((new_map, inv))
}

fn apply_r2pos(m: &KnotoidMap, push: Dart, across: Dart, over: bool) -> Result<(KnotoidMap, MoveSite), MapError> {
    if push >= m.n_darts() || across >= m.n_darts() || push == across {
        return Err(MapError::StaleSite);
    }
    if m.face_id(push) != m.face_id(across) {
        return Err(MapError::StaleSite);
    }
    let a = push;
    let b = across;
    let mut ed = MapEdit::new(m);
    if m.alpha(a) == b {
        // Same-edge self-clasp: the pushed side crosses the partner side of
        // its own edge twice near the far end.
        // Positional picture: hairpin with a at the left-south vertex;
        // crossings k1 (north, hit first by the finger) and k2.
        let k1 = ed.new_crossing(1);
        let k2 = ed.new_crossing(1);
        // Positional slots: finger pass {e,w}; arm pass {n,s}.
        let slots = |over_finger: bool, ed: &MapEdit, k: usize| -> (Dart, Dart, Dart, Dart) {
            if over_finger {
                (ed.dart(k, 0), ed.dart(k, 1), ed.dart(k, 2), ed.dart(k, 3))
            } else {
                (ed.dart(k, 3), ed.dart(k, 0), ed.dart(k, 1), ed.dart(k, 2))
            }
        };
        let (n1, e1, s1, w1) = slots(over, &ed, k1);
        let (n2, e2, s2, w2) = slots(over, &ed, k2);
        ed.wire(a, w1);
        ed.wire(e1, e2);
        ed.wire(w2, n1);
        ed.wire(s1, n2);
        ed.wire(s2, b);
        let hint = old_outer_hint(m, &[]);
        let (new_map, tr) = ed.finish(hint)?;
        let bigon = probe_new_dart(&tr, m, k1, if over { 2 } else { 1 });
        let inv_dart = find_bigon_near(&new_map, bigon);
        Ok((new_map, MoveSite::R2Neg { bigon: inv_dart }))
    } else {
        // Two distinct edges. Positional picture: A east (a pointing north),
        // B west (b pointing south), F between; finger pushes west; k_s hit
        // first along A's arm order, k_n first along B from b's vertex.
        let a2 = m.alpha(a);
        let b2 = m.alpha(b);
        let ks = ed.new_crossing(1);
        let kn = ed.new_crossing(1);
        // Positional slots per crossing: A-pass {e,w}, B-pass {n,s}.
        let slots = |a_over: bool, ed: &MapEdit, k: usize| -> (Dart, Dart, Dart, Dart) {
            if a_over {
                (ed.dart(k, 0), ed.dart(k, 1), ed.dart(k, 2), ed.dart(k, 3))
            } else {
                (ed.dart(k, 3), ed.dart(k, 0), ed.dart(k, 1), ed.dart(k, 2))
            }
        };
        let (ns, es, ss, ws) = slots(over, &ed, ks);
        let (nn, en, sn, wn) = slots(over, &ed, kn);
        ed.wire(a, es);
        ed.wire(a2, en);
        ed.wire(ws, wn);
        ed.wire(b, nn);
        ed.wire(b2, ss);
        ed.wire(sn, ns);
        let hint = old_outer_hint(m, &[]);
        let (new_map, tr) = ed.finish(hint)?;
        let probe = probe_new_dart(&tr, m, ks, 0);
        let inv_dart = find_bigon_near(&new_map, probe);
        Ok((new_map, MoveSite::R2Neg { bigon: inv_dart }))
    }
}

/// Find the dart of the bigon face created at/near the given new dart.
fn find_bigon_near(m: &KnotoidMap, seed: Option<Dart>) -> Dart {
    if let Some(s) = seed {
        let c = m.crossing_of(s);
        for slot in 0..4u8 {
            let d = m.dart_at(c, slot);
            let e = m.next_in_face(d);
            if e != d && m.next_in_face(e) == d && bigon_pattern(m, d).is_some() {
                return d;
            }
        }
    }
    // Fallback: any bigon.
    for f in m.faces() {
        if f.len() == 2 && bigon_pattern(m, f[0]).is_some() {
            return f[0];
        }
    }
    0
}

fn apply_r3(m: &KnotoidMap, face: Dart) -> Result<(KnotoidMap, MoveSite), MapError> {
    let p = triangle_pattern(m, face).ok_or(MapError::StaleSite)?;
    let [d1, d2, d3] = p.darts;
    let boundary = [d1, d2, d3, m.alpha(d1), m.alpha(d2), m.alpha(d3)];
    let mut tset = vec![false; m.n_darts()];
    for &b in &boundary {
        tset[b] = true;
        tset[m.pass_opposite(b)] = true;
    }
    let t = |d: Dart| -> Dart {
        if tset[d] {
            m.pass_opposite(d)
        } else {
            d
        }
    };
    let mut ed = MapEdit::new(m);
    for c in [m.crossing_of(d1), m.crossing_of(d2), m.crossing_of(d3)] {
        ed.float_crossing(c);
    }
    // alpha' = T . alpha . T over the whole dart set.
    let mut seen = vec![false; m.n_darts()];
    let mut new_pairs: Vec<(Dart, Dart)> = Vec::new();
    for d in 0..m.n_darts() {
        if seen[d] {
            continue;
        }
        let img = t(m.alpha(t(d)));
        seen[d] = true;
        seen[img] = true;
        new_pairs.push((d, img));
    }
    for (x, y) in new_pairs {
        ed.wire(x, y);
    }
    let hint = match m.mode() {
        MapMode::Spherical => None,
        MapMode::Planar { .. } => {
            let outer = m.outer_face()?;
            let od = m.face_darts(outer);
            od.iter()
                .find(|d| !tset[**d])
                .copied()
                .or_else(|| Some(t(od[0])))
        }
    };
    let (new_map, tr) = ed.finish(hint)?;
    // The flipped triangle contains the images of the opposite darts.
    let inv_seed = tr.get(m.pass_opposite(d1)).unwrap_or(0);
    let mut inv = inv_seed;
    // Locate the triangle face at the image.
    let c = new_map.crossing_of(inv_seed.min(new_map.n_darts().saturating_sub(1)));
    'outer: for slot in 0..4u8 {
        let d = new_map.dart_at(c, slot);
        if triangle_pattern(&new_map, d).is_some() {
            inv = d;
            break 'outer;
        }
        let e = new_map.next_in_face(d);
        if triangle_pattern(&new_map, e).is_some() {
            inv = e;
            break 'outer;
        }
    }
    Ok((new_map, MoveSite::R3 { face: inv }))
}

/// Re-choose the outer face across an edge on it.
pub fn spherical_move(m: &KnotoidMap, edge_dart: Dart) -> Result<KnotoidMap, MapError> {
    let outer = m.outer_face()?;
    if edge_dart >= m.n_darts() {
        return Err(MapError::StaleSite);
    }
    let d_side = m.face_id(edge_dart);
    let a_side = m.face_id(m.alpha(edge_dart));
    let new_anchor = if d_side == outer {
        m.alpha(edge_dart)
    } else if a_side == outer {
        edge_dart
    } else {
        return Err(MapError::NotOuterEdge);
    };
    Ok(m.with_mode(MapMode::Planar { outer_anchor: new_anchor }))
}

/// Leg incident to the outer face.
pub fn is_normal(m: &KnotoidMap) -> Result<bool, MapError> {
    let leg = m.leg_dart().ok_or(MapError::NoEndpoints)?;
    let outer = m.outer_face()?;
    Ok(m.face_id(leg) == outer)
}

/// Greedy monotone simplification: apply reducing moves until none apply.
pub fn simplify(m: &KnotoidMap) -> KnotoidMap {
    let mut cur = m.clone();
    loop {
        let sites = reidemeister_sites(&cur, cur.n_crossings(), true);
        let site = sites.iter().find(|s| s.is_reducing());
        match site {
            Some(&s) => match apply_reidemeister(&cur, s) {
                Ok((next, _)) => cur = next,
                Err(_) => break,
            },
            None => break,
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::knotoid::KnotoidMap;

    fn kink(over_in: u8) -> KnotoidMap {
        let over_out = 4 - over_in as usize;
        let mut alpha = vec![0; 6];
        let wire = |alpha: &mut Vec<usize>, a: usize, b: usize| {
            alpha[a] = b;
            alpha[b] = a;
        };
        wire(&mut alpha, 4, 0);
        wire(&mut alpha, 2, over_in as usize);
        wire(&mut alpha, over_out, 5);
        KnotoidMap::from_parts(vec![over_in], alpha, true, 0, crate::map::knotoid::MapMode::Spherical)
            .unwrap()
    }

    #[test]
    fn kink_reduces_to_trivial() {
        for oi in [1u8, 3] {
            let m = kink(oi);
            let sites = reidemeister_sites(&m, 10, true);
            assert_eq!(sites.len(), 1, "exactly one reducing site on a kink");
            let (reduced, _) = apply_reidemeister(&m, sites[0]).unwrap();
            assert_eq!(reduced.canonical_code(), KnotoidMap::trivial_knotoid(false).canonical_code());
        }
    }

    #[test]
    fn trivial_arc_sites_are_insertions_only() {
        let m = KnotoidMap::trivial_knotoid(false);
        let sites = reidemeister_sites(&m, 10, false);
        assert!(sites.iter().all(|s| !s.is_reducing()));
        assert!(sites.iter().any(|s| matches!(s, MoveSite::R1Pos { .. })));
        assert!(sites.iter().any(|s| matches!(s, MoveSite::R2Pos { .. })));
    }

    #[test]
    fn r1pos_then_inverse_roundtrips() {
        let m = KnotoidMap::trivial_knotoid(false);
        for loop_over in [false, true] {
            let (bigger, inv) = apply_reidemeister(&m, MoveSite::R1Pos { host: 0, loop_over }).unwrap();
            assert_eq!(bigger.n_crossings(), 1);
            let (back, _) = apply_reidemeister(&bigger, inv).unwrap();
            assert_eq!(back.canonical_code(), m.canonical_code());
        }
    }

    #[test]
    fn r2pos_then_inverse_roundtrips() {
        let m = kink(1);
        let sites = reidemeister_sites(&m, 10, false);
        let mut tried = 0;
        for s in sites {
            if let MoveSite::R2Pos { .. } = s {
                let (bigger, inv) = apply_reidemeister(&m, s).unwrap();
                assert_eq!(bigger.n_crossings(), 3);
                let (back, _) = apply_reidemeister(&bigger, inv).unwrap();
                assert_eq!(back.canonical_code(), m.canonical_code(), "site {s:?}");
                tried += 1;
            }
        }
        assert!(tried > 0);
    }

    #[test]
    fn self_clasp_on_trivial_arc() {
        let m = KnotoidMap::trivial_knotoid(false);
        // face of the single edge contains both darts 0 (leg) and 1 (head).
        for over in [false, true] {
            let site = MoveSite::R2Pos { push: 0, across: 1, over };
            let (bigger, inv) = apply_reidemeister(&m, site).unwrap();
            assert_eq!(bigger.n_crossings(), 2);
            let (back, _) = apply_reidemeister(&bigger, inv).unwrap();
            assert_eq!(back.canonical_code(), m.canonical_code());
        }
    }

    #[test]
    fn simplify_kills_kinks() {
        let m = KnotoidMap::trivial_knotoid(false);
        let (m1, _) = apply_reidemeister(&m, MoveSite::R1Pos { host: 0, loop_over: true }).unwrap();
        let (m2, _) = apply_reidemeister(&m1, MoveSite::R1Pos { host: 0, loop_over: false }).unwrap();
        let s = simplify(&m2);
        assert_eq!(s.canonical_code(), m.canonical_code());
    }
}
