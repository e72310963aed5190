//! Combinatorial knotoid/multi-knotoid diagrams as maps on the sphere.
//!
//! Darts are numbered 4c+s for crossing c and slot s, followed by the leg
//! and head darts when endpoints are present. Slots run in the fixed
//! positive-determinant rotation order with slot 0 the incoming under-strand
//! (the extended PD convention); the over strand occupies slots 1 and 3 and
//! `over_in` records where it enters. Crossing-free circle components carry
//! no darts and are tracked by count; their planar nesting is quotiented
//! away, which identifies only Reidemeister-equivalent diagrams.
//!
//! Face orbits follow next = sigma(alpha(d)) and trace the region on the
//! negative-determinant side of each dart.

use std::collections::BTreeMap;
use thiserror::Error;

pub type Dart = usize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapMode {
    Spherical,
    /// Outer face identified by any dart of its orbit.
    Planar { outer_anchor: Dart },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KnotoidMap {
    n_crossings: usize,
    has_endpoints: bool,
    /// Per crossing: the slot (1 or 3) where the over strand enters.
    over_in: Vec<u8>,
    alpha: Vec<Dart>,
    free_loops: usize,
    mode: MapMode,
}

/// A canonical string fingerprint: equal exactly for isomorphic maps in the
/// same mode (and with the same outer face in planar mode).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode(pub String);

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("alpha is not a fixed-point-free involution at dart {0}")]
    BadInvolution(Dart),
    #[error("edge {0}-{1} violates orientation (both ends flow the same way)")]
    BadOrientation(Dart, Dart),
    #[error("component failed the Euler relation (V-E+F = {0}, expected 2)")]
    BadEuler(i64),
    #[error("over_in slot must be 1 or 3, crossing {0}")]
    BadOverIn(usize),
    #[error("planar outer anchor must sit in the leg's component")]
    BadOuterAnchor,
    #[error("operation requires endpoints")]
    NoEndpoints,
    #[error("operation requires a closed diagram (no endpoints)")]
    HasEndpoints,
    #[error("operation requires spherical mode")]
    NotSpherical,
    #[error("operation requires planar mode")]
    NotPlanar,
    #[error("edge is not on the outer face")]
    NotOuterEdge,
    #[error("stale or inapplicable move site")]
    StaleSite,
    #[error("crossing cap exceeded ({0} crossings)")]
    CapExceeded(usize),
    #[error("inconsistent surgery produced no valid orientation")]
    OrientationConflict,
}

impl KnotoidMap {
    pub fn from_parts(
        over_in: Vec<u8>,
        alpha: Vec<Dart>,
        has_endpoints: bool,
        free_loops: usize,
        mode: MapMode,
    ) -> Result<Self, MapError> {
        let m = KnotoidMap {
            n_crossings: over_in.len(),
            has_endpoints,
            over_in,
            alpha,
            free_loops,
            mode,
        };
        m.validate()?;
        Ok(m)
    }

    /// The trivial knotoid: a single arc from leg to head.
    pub fn trivial_knotoid(mode_planar: bool) -> Self {
        let mode = if mode_planar {
            MapMode::Planar { outer_anchor: 0 }
        } else {
            MapMode::Spherical
        };
        KnotoidMap {
            n_crossings: 0,
            has_endpoints: true,
            over_in: vec![],
            alpha: vec![1, 0],
            free_loops: 0,
            mode,
        }
    }

    /// A closed diagram with no crossings: a split union of unknots.
    pub fn unlink(loops: usize) -> Self {
        KnotoidMap {
            n_crossings: 0,
            has_endpoints: false,
            over_in: vec![],
            alpha: vec![],
            free_loops: loops,
            mode: MapMode::Spherical,
        }
    }

    pub fn n_crossings(&self) -> usize {
        self.n_crossings
    }

    pub fn has_endpoints(&self) -> bool {
        self.has_endpoints
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn mode(&self) -> MapMode {
        self.mode
    }

    pub fn over_in(&self, c: usize) -> u8 {
        self.over_in[c]
    }

    pub fn n_darts(&self) -> usize {
        4 * self.n_crossings + if self.has_endpoints { 2 } else { 0 }
    }

    pub fn leg_dart(&self) -> Option<Dart> {
        self.has_endpoints.then_some(4 * self.n_crossings)
    }

    pub fn head_dart(&self) -> Option<Dart> {
        self.has_endpoints.then_some(4 * self.n_crossings + 1)
    }

    pub fn is_crossing_dart(&self, d: Dart) -> bool {
        d < 4 * self.n_crossings
    }

    pub fn crossing_of(&self, d: Dart) -> usize {
        debug_assert!(self.is_crossing_dart(d));
        d / 4
    }

    pub fn slot_of(&self, d: Dart) -> u8 {
        debug_assert!(self.is_crossing_dart(d));
        (d % 4) as u8
    }

    pub fn dart_at(&self, c: usize, slot: u8) -> Dart {
        4 * c + slot as usize
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }

    /// Next dart in the rotation at the same vertex.
    pub fn sigma(&self, d: Dart) -> Dart {
        if self.is_crossing_dart(d) {
            4 * (d / 4) + (d % 4 + 1) % 4
        } else {
            d
        }
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        if self.is_crossing_dart(d) {
            4 * (d / 4) + (d % 4 + 3) % 4
        } else {
            d
        }
    }

    /// Opposite slot at the same crossing: the other end of the strand pass.
    pub fn pass_opposite(&self, d: Dart) -> Dart {
        debug_assert!(self.is_crossing_dart(d));
        4 * (d / 4) + (d % 4 + 2) % 4
    }

    /// Whether the strand leaves the vertex through this dart.
    pub fn is_out(&self, d: Dart) -> bool {
        if self.is_crossing_dart(d) {
            let s = self.slot_of(d);
            let c = self.crossing_of(d);
            s == 2 || s == 4 - self.over_in[c]
        } else if Some(d) == self.leg_dart() {
            true
        } else {
            false
        }
    }

    /// Whether the dart's strand pass goes over at its crossing.
    pub fn is_over_pass(&self, d: Dart) -> bool {
        self.is_crossing_dart(d) && self.slot_of(d) % 2 == 1
    }

    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.sigma(self.alpha(d))
    }

    /// All face orbits, each starting from its minimal dart, sorted.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let n = self.n_darts();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for d0 in 0..n {
            if seen[d0] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = d0;
            loop {
                seen[d] = true;
                orbit.push(d);
                d = self.next_in_face(d);
                if d == d0 {
                    break;
                }
            }
            out.push(orbit);
        }
        out
    }

    /// Identify a face by the minimal dart of its orbit.
    pub fn face_id(&self, d: Dart) -> Dart {
        let mut min = d;
        let mut cur = self.next_in_face(d);
        while cur != d {
            if cur < min {
                min = cur;
            }
            cur = self.next_in_face(cur);
        }
        min
    }

    pub fn face_darts(&self, d: Dart) -> Vec<Dart> {
        let start = self.face_id(d);
        let mut orbit = vec![start];
        let mut cur = self.next_in_face(start);
        while cur != start {
            orbit.push(cur);
            cur = self.next_in_face(cur);
        }
        orbit
    }

    pub fn outer_face(&self) -> Result<Dart, MapError> {
        match self.mode {
            MapMode::Planar { outer_anchor } => Ok(self.face_id(outer_anchor)),
            MapMode::Spherical => Err(MapError::NotPlanar),
        }
    }

    pub fn with_mode(&self, mode: MapMode) -> Self {
        let mut m = self.clone();
        m.mode = mode;
        m
    }

    pub fn to_spherical(&self) -> Self {
        self.with_mode(MapMode::Spherical)
    }

    /// Total face count including the crossing-free circles and the base
    /// region of an empty map, so that V - E + F = 1 + C holds.
    pub fn face_count_total(&self) -> usize {
        let orbits = self.faces().len();
        let comps = self.dart_components().len();
        let base = if self.n_darts() == 0 { 1 } else { 0 };
        orbits + base + self.free_loops - comps.saturating_sub(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.n_crossings + if self.has_endpoints { 2 } else { 0 }
    }

    pub fn edge_count(&self) -> usize {
        self.n_darts() / 2
    }

    pub fn component_count_total(&self) -> usize {
        self.dart_components().len() + self.free_loops
    }

    /// Connected components of the dart structure (vertex sets).
    fn dart_components(&self) -> Vec<Vec<Dart>> {
        let n = self.n_darts();
        let mut comp = vec![usize::MAX; n];
        let mut comps: Vec<Vec<Dart>> = Vec::new();
        for d0 in 0..n {
            if comp[d0] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![d0];
            let mut members = Vec::new();
            comp[d0] = id;
            while let Some(d) = stack.pop() {
                members.push(d);
                for nb in [self.alpha(d), self.sigma(d)] {
                    if comp[nb] == usize::MAX {
                        comp[nb] = id;
                        stack.push(nb);
                    }
                }
            }
            comps.push(members);
        }
        comps
    }

    /// Full structural validation, including the per-component Euler
    /// relation; this is the global assertion hook and runs on every
    /// construction.
    pub fn validate(&self) -> Result<(), MapError> {
        let n = self.n_darts();
        if self.alpha.len() != n {
            return Err(MapError::BadInvolution(self.alpha.len()));
        }
        for c in 0..self.n_crossings {
            if self.over_in[c] != 1 && self.over_in[c] != 3 {
                return Err(MapError::BadOverIn(c));
            }
        }
        for d in 0..n {
            let a = self.alpha[d];
            if a >= n || a == d || self.alpha[a] != d {
                return Err(MapError::BadInvolution(d));
            }
            if self.is_out(d) == self.is_out(a) {
                return Err(MapError::BadOrientation(d, a));
            }
        }
        // Per-component Euler relation: each piece embeds in its own sphere.
        let comps = self.dart_components();
        for members in &comps {
            let mut verts: BTreeMap<usize, ()> = BTreeMap::new();
            for &d in members {
                let v = if self.is_crossing_dart(d) {
                    d / 4
                } else {
                    self.n_crossings + (d - 4 * self.n_crossings)
                };
                verts.insert(v, ());
            }
            let v = verts.len() as i64;
            let e = (members.len() / 2) as i64;
            // Count face orbits restricted to this component.
            let mut seen: BTreeMap<Dart, ()> = BTreeMap::new();
            let mut f = 0i64;
            for &d0 in members {
                if seen.contains_key(&d0) {
                    continue;
                }
                f += 1;
                let mut d = d0;
                loop {
                    seen.insert(d, ());
                    d = self.next_in_face(d);
                    if d == d0 {
                        break;
                    }
                }
            }
            let euler = v - e + f;
            if euler != 2 {
                return Err(MapError::BadEuler(euler));
            }
        }
        if self.has_endpoints {
            // Leg and head must exist; check outer anchor placement.
            if let MapMode::Planar { outer_anchor } = self.mode {
                if outer_anchor >= n {
                    return Err(MapError::BadOuterAnchor);
                }
                let leg = self.leg_dart().unwrap();
                let leg_comp: Vec<Dart> = {
                    let comps = self.dart_components();
                    comps
                        .into_iter()
                        .find(|m| m.contains(&leg))
                        .unwrap_or_default()
                };
                if !leg_comp.contains(&outer_anchor) {
                    return Err(MapError::BadOuterAnchor);
                }
            }
        } else if let MapMode::Planar { outer_anchor } = self.mode {
            if n > 0 && outer_anchor >= n {
                return Err(MapError::BadOuterAnchor);
            }
        }
        Ok(())
    }

    /// BFS dart relabeling from a start dart; returns discovery order (new
    /// id -> old dart).
    fn bfs_order(&self, start: Dart) -> Vec<Dart> {
        let n = self.n_darts();
        let mut newid = vec![usize::MAX; n];
        let mut order = Vec::new();
        newid[start] = 0;
        order.push(start);
        let mut qi = 0;
        while qi < order.len() {
            let d = order[qi];
            qi += 1;
            for nb in [self.alpha(d), self.sigma(d)] {
                if newid[nb] == usize::MAX {
                    newid[nb] = order.len();
                    order.push(nb);
                }
            }
        }
        order
    }

    fn dump_component(&self, order: &[Dart]) -> String {
        let mut newid = BTreeMap::new();
        for (i, &d) in order.iter().enumerate() {
            newid.insert(d, i);
        }
        let mut s = String::new();
        for &d in order {
            let a = newid[&self.alpha(d)];
            let g = newid[&self.sigma(d)];
            let class = if Some(d) == self.leg_dart() {
                'l'
            } else if Some(d) == self.head_dart() {
                'h'
            } else {
                let c = self.crossing_of(d);
                match self.slot_of(d) {
                    0 => 'u',
                    s if s == self.over_in[c] => 'i',
                    s if s % 2 == 1 => 'o',
                    _ => 'd',
                }
            };
            s.push_str(&format!("{a}.{g}{class},"));
        }
        s
    }

    /// Canonical relabeling: leg component first (when present), remaining
    /// components sorted by their minimal dump. Returns the global dart
    /// order and the component dumps in that same arrangement.
    fn canonical_order(&self) -> (Vec<Dart>, Vec<String>) {
        let n = self.n_darts();
        let mut assigned = vec![false; n];
        let mut parts: Vec<(String, Vec<Dart>)> = Vec::new();
        let mut leg_part: Option<(String, Vec<Dart>)> = None;
        if let Some(leg) = self.leg_dart() {
            let o = self.bfs_order(leg);
            for &d in &o {
                assigned[d] = true;
            }
            leg_part = Some((self.dump_component(&o), o));
        }
        // Remaining components: minimize the dump over all start darts.
        for d0 in 0..n {
            if assigned[d0] {
                continue;
            }
            let comp = self.bfs_order(d0);
            let mut best: Option<(String, Vec<Dart>)> = None;
            for &s0 in &comp {
                let o = self.bfs_order(s0);
                let dump = self.dump_component(&o);
                if best.as_ref().map(|(b, _)| dump < *b).unwrap_or(true) {
                    best = Some((dump, o));
                }
            }
            let part = best.unwrap();
            for &d in &part.1 {
                assigned[d] = true;
            }
            parts.push(part);
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        let mut order = Vec::new();
        let mut dumps = Vec::new();
        if let Some((dump, o)) = leg_part {
            dumps.push(dump);
            order.extend(o);
        }
        for (dump, o) in parts {
            dumps.push(dump);
            order.extend(o);
        }
        (order, dumps)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        self.code_with_mode(matches!(self.mode, MapMode::Planar { .. }))
    }

    /// The code of the underlying spherical map (outer face ignored).
    pub fn spherical_code(&self) -> CanonicalCode {
        self.code_with_mode(false)
    }

    fn code_with_mode(&self, planar: bool) -> CanonicalCode {
        let n = self.n_darts();
        let mut head = String::new();
        head.push(if planar { 'P' } else { 'S' });
        head.push_str(&format!("o{};", self.free_loops));
        if n == 0 {
            return CanonicalCode(head);
        }
        let (order, dumps) = self.canonical_order();
        head.push_str(&dumps.join("|"));
        if planar {
            // Outer face id under the canonical labeling: minimal new id in
            // the outer orbit.
            let mut newid = BTreeMap::new();
            for (i, &d) in order.iter().enumerate() {
                newid.insert(d, i);
            }
            let outer = self.outer_face().expect("planar");
            let min_new = self
                .face_darts(outer)
                .iter()
                .map(|d| newid[d])
                .min()
                .unwrap();
            head.push_str(&format!(";out{min_new}"));
        }
        CanonicalCode(head)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One-kink arc: leg -> under pass -> loop -> over pass -> head.
    pub fn kink(over_in: u8) -> KnotoidMap {
        // darts 0..3 crossing, 4 leg, 5 head.
        // alpha: leg-0, loop 2-over_in, overout-head.
        let over_out = 4 - over_in as usize;
        let mut alpha = vec![0; 6];
        let wire = |alpha: &mut Vec<usize>, a: usize, b: usize| {
            alpha[a] = b;
            alpha[b] = a;
        };
        wire(&mut alpha, 4, 0);
        wire(&mut alpha, 2, over_in as usize);
        wire(&mut alpha, over_out, 5);
        KnotoidMap::from_parts(vec![over_in], alpha, true, 0, MapMode::Spherical).unwrap()
    }

    #[test]
    fn trivial_knotoid_has_one_face() {
        let m = KnotoidMap::trivial_knotoid(false);
        assert_eq!(m.faces().len(), 1);
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.edge_count(), 1);
        assert_eq!(m.face_count_total(), 1);
    }

    #[test]
    fn kink_has_two_faces() {
        for oi in [1, 3] {
            let m = kink(oi);
            assert_eq!(m.faces().len(), 2, "over_in={oi}");
            assert_eq!(m.vertex_count(), 3);
            assert_eq!(m.edge_count(), 3);
            // V - E + F = 1 + C
            assert_eq!(3 - 3 + m.face_count_total() as i64, 1 + 1);
        }
    }

    #[test]
    fn kink_chirality_distinguished() {
        assert_ne!(kink(1).canonical_code(), kink(3).canonical_code());
    }

    #[test]
    fn trivial_code_documented() {
        let code = KnotoidMap::trivial_knotoid(false).canonical_code();
        assert_eq!(code.0, "So0;1.0l,0.1h,");
    }

    #[test]
    fn unlink_codes() {
        assert_eq!(KnotoidMap::unlink(1).canonical_code().0, "So1;");
        assert_ne!(
            KnotoidMap::unlink(1).canonical_code(),
            KnotoidMap::unlink(2).canonical_code()
        );
    }
}
