//! Mutable surgery buffer for knotoid maps.
//!
//! Moves and closures work on an extended dart space (old darts plus darts
//! of freshly added crossings), rewire alpha, delete vertices with a generic
//! splice that detects newborn free loops, and finally compile back into a
//! validated `KnotoidMap`. Compilation solves the in/out orientation of every
//! touched crossing by propagation, rotating slot labels by two where the
//! strand flow demands it; untouched crossings are pinned so component
//! orientations never drift.

use super::knotoid::{Dart, KnotoidMap, MapError, MapMode};
use std::collections::BTreeMap;

pub struct MapEdit {
    base_crossings: usize,
    has_endpoints: bool,
    /// over_in per crossing (old then new); None = deleted.
    over_in: Vec<Option<u8>>,
    /// Whether the crossing's orientation may be re-solved.
    floats: Vec<bool>,
    /// alpha over the extended dart space; usize::MAX = unwired.
    alpha: Vec<usize>,
    free_loops: usize,
    drop_endpoints: bool,
    mode: MapMode,
}

const UNWIRED: usize = usize::MAX;

impl MapEdit {
    pub fn new(m: &KnotoidMap) -> Self {
        let mut alpha = vec![UNWIRED; m.n_darts()];
        for d in 0..m.n_darts() {
            alpha[d] = m.alpha(d);
        }
        MapEdit {
            base_crossings: m.n_crossings(),
            has_endpoints: m.has_endpoints(),
            over_in: (0..m.n_crossings()).map(|c| Some(m.over_in(c))).collect(),
            floats: vec![false; m.n_crossings()],
            alpha,
            free_loops: m.free_loops(),
            drop_endpoints: false,
            mode: m.mode(),
        }
    }

    pub fn leg_dart(&self) -> Option<Dart> {
        self.has_endpoints.then_some(4 * self.base_crossings)
    }

    pub fn head_dart(&self) -> Option<Dart> {
        self.has_endpoints.then_some(4 * self.base_crossings + 1)
    }

    /// Add a crossing; returns its index in the extended numbering. Its
    /// darts are `self.dart(c, slot)`. New crossings float (their final
    /// rotation is solved at compile time).
    pub fn new_crossing(&mut self, over_in: u8) -> usize {
        let c = self.over_in.len();
        self.over_in.push(Some(over_in));
        self.floats.push(true);
        self.alpha.extend_from_slice(&[UNWIRED; 4]);
        c
    }

    /// Extended dart id for crossing c, slot s. Endpoint darts keep their
    /// original ids from the base map.
    pub fn dart(&self, c: usize, slot: u8) -> Dart {
        if c < self.base_crossings {
            4 * c + slot as usize
        } else {
            4 * self.base_crossings
                + if self.has_endpoints { 2 } else { 0 }
                + 4 * (c - self.base_crossings)
                + slot as usize
        }
    }

    fn dart_home(&self, d: Dart) -> DartHome {
        let base = 4 * self.base_crossings;
        if d < base {
            DartHome::Crossing(d / 4, (d % 4) as u8)
        } else if self.has_endpoints && d < base + 2 {
            DartHome::Endpoint(d - base)
        } else {
            let k = d - base - if self.has_endpoints { 2 } else { 0 };
            DartHome::Crossing(self.base_crossings + k / 4, (k % 4) as u8)
        }
    }

    pub fn alpha_of(&self, d: Dart) -> Dart {
        self.alpha[d]
    }

    /// Mark a pre-existing crossing as orientation-floating (used by moves
    /// that legitimately flip strand directions through it, like RIII).
    pub fn float_crossing(&mut self, c: usize) {
        self.floats[c] = true;
    }

    pub fn unwire(&mut self, d: Dart) {
        let a = self.alpha[d];
        if a != UNWIRED {
            self.alpha[a] = UNWIRED;
        }
        self.alpha[d] = UNWIRED;
    }

    pub fn wire(&mut self, a: Dart, b: Dart) {
        debug_assert!(a != b);
        self.unwire(a);
        self.unwire(b);
        self.alpha[a] = b;
        self.alpha[b] = a;
    }

    /// Delete crossings, splicing every strand that ran through them:
    /// outside darts wired into the deleted set get re-wired to where the
    /// strand re-emerges. Chains that never leave the deleted set become
    /// free loops.
    pub fn splice_delete_crossings(&mut self, dead: &[usize]) {
        let dead_set: Vec<bool> = {
            let mut v = vec![false; self.over_in.len()];
            for &c in dead {
                v[c] = true;
            }
            v
        };
        let is_dead = |this: &Self, d: Dart| -> bool {
            match this.dart_home(d) {
                DartHome::Crossing(c, _) => dead_set[c],
                DartHome::Endpoint(_) => false,
            }
        };
        let tunnel = |this: &Self, d: Dart| -> Dart {
            match this.dart_home(d) {
                DartHome::Crossing(c, s) => this.dart(c, (s + 2) % 4),
                DartHome::Endpoint(_) => unreachable!(),
            }
        };
        // Re-wire boundary strands: start from each live dart whose partner
        // is dead and tunnel through until the strand re-emerges.
        let n = self.alpha.len();
        let mut visited_dead = vec![false; n];
        for x in 0..n {
            if is_dead(self, x) {
                continue;
            }
            let a = self.alpha[x];
            if a == UNWIRED || !is_dead(self, a) {
                continue;
            }
            let mut cur = a;
            loop {
                visited_dead[cur] = true;
                let t = tunnel(self, cur);
                visited_dead[t] = true;
                let nxt = self.alpha[t];
                assert!(nxt != UNWIRED, "dangling wire inside splice");
                if is_dead(self, nxt) {
                    cur = nxt;
                } else {
                    self.alpha[x] = nxt;
                    self.alpha[nxt] = x;
                    break;
                }
            }
        }
        // Count fully interior chains: closed loops through dead crossings.
        for d0 in 0..n {
            if !is_dead(self, d0) || visited_dead[d0] || self.alpha[d0] == UNWIRED {
                continue;
            }
            // Trace the alpha/tunnel cycle.
            let mut cur = d0;
            let mut len = 0usize;
            loop {
                visited_dead[cur] = true;
                let t = tunnel(self, cur);
                visited_dead[t] = true;
                let nxt = self.alpha[t];
                len += 1;
                if nxt == d0 {
                    break;
                }
                cur = nxt;
                if len > n {
                    panic!("splice loop failed to close");
                }
            }
            self.free_loops += 1;
        }
        for &c in dead {
            self.over_in[c] = None;
            for s in 0..4 {
                let d = self.dart(c, s);
                self.alpha[d] = UNWIRED;
            }
        }
    }

    /// Dissolve leg and head (used by the closure maps): their darts must
    /// already be re-wired away by the caller.
    pub fn drop_endpoints(&mut self) {
        self.drop_endpoints = true;
    }

    pub fn add_free_loop(&mut self) {
        self.free_loops += 1;
    }

    pub fn set_mode(&mut self, mode: MapMode) {
        self.mode = mode;
    }

    /// Compile into a validated map. `outer_hint` is a dart (in the extended
    /// space) whose face becomes the outer face in planar mode.
    ///
    /// Each floating crossing carries two strand-direction unknowns: whether
    /// the under flow runs against the slot labels (forcing a slot rotation
    /// by two) and whether the over flow runs against `over_in`. Both are
    /// solved from the edge constraints "one end flows out, the other in";
    /// pinned crossings anchor the propagation so component orientations
    /// stay put.
    pub fn finish(self, outer_hint: Option<Dart>) -> Result<(KnotoidMap, DartTranslation), MapError> {
        let ncr = self.over_in.len();
        let live: Vec<usize> = (0..ncr).filter(|&c| self.over_in[c].is_some()).collect();
        // Variables: 2c = under-reversed, 2c+1 = over-reversed.
        let mut var: Vec<Option<bool>> = vec![None; 2 * ncr];
        for &c in &live {
            if !self.floats[c] {
                var[2 * c] = Some(false);
                var[2 * c + 1] = Some(false);
            }
        }
        // For a dart: (variable id or None for constants, out-ness with all
        // variables false). Dropped endpoints have no constraint.
        let dart_term = |this: &Self, d: Dart| -> Option<(Option<usize>, bool)> {
            match this.dart_home(d) {
                DartHome::Crossing(c, s) => {
                    let oi = this.over_in[c].expect("live crossing");
                    if s % 2 == 0 {
                        Some((Some(2 * c), s == 2))
                    } else {
                        Some((Some(2 * c + 1), s == 4 - oi))
                    }
                }
                DartHome::Endpoint(e) => {
                    if this.drop_endpoints {
                        None
                    } else {
                        Some((None, e == 0))
                    }
                }
            }
        };
        // Gather XOR constraints: var(x) ^ var(y) = 1 ^ base(x) ^ base(y).
        let mut constraints: Vec<(Option<usize>, Option<usize>, bool)> = Vec::new();
        for d in 0..self.alpha.len() {
            let a = self.alpha[d];
            if a == UNWIRED || a < d {
                continue;
            }
            let (Some((vx, bx)), Some((vy, by))) = (dart_term(&self, d), dart_term(&self, a))
            else {
                continue;
            };
            constraints.push((vx, vy, true ^ bx ^ by));
        }
        let mut changed = true;
        while changed {
            changed = false;
            for &(vx, vy, parity) in &constraints {
                match (vx, vy) {
                    (None, None) => {
                        if parity {
                            return Err(MapError::OrientationConflict);
                        }
                    }
                    (Some(x), None) => match var[x] {
                        None => {
                            var[x] = Some(parity);
                            changed = true;
                        }
                        Some(v) => {
                            if v != parity {
                                return Err(MapError::OrientationConflict);
                            }
                        }
                    },
                    (None, Some(y)) => match var[y] {
                        None => {
                            var[y] = Some(parity);
                            changed = true;
                        }
                        Some(v) => {
                            if v != parity {
                                return Err(MapError::OrientationConflict);
                            }
                        }
                    },
                    (Some(x), Some(y)) => match (var[x], var[y]) {
                        (Some(a), Some(b)) => {
                            if a ^ b != parity {
                                return Err(MapError::OrientationConflict);
                            }
                        }
                        (Some(a), None) => {
                            var[y] = Some(a ^ parity);
                            changed = true;
                        }
                        (None, Some(b)) => {
                            var[x] = Some(b ^ parity);
                            changed = true;
                        }
                        (None, None) => {}
                    },
                }
            }
            // Unanchored components: pin the first unknown and resume. This
            // fixes a free circle's orientation deterministically.
            if !changed {
                if let Some(first) = var.iter().position(|v| v.is_none()) {
                    let c = first / 2;
                    if self.over_in[c].is_some() {
                        var[first] = Some(false);
                        changed = true;
                    } else {
                        var[first] = Some(false);
                        changed = true;
                    }
                }
            }
        }
        let ru = |c: usize| var[2 * c] == Some(true);
        let ro = |c: usize| var[2 * c + 1] == Some(true);
        // Rotation applies when the under flow was reversed.
        let rot = |this: &Self, d: Dart| -> Dart {
            match this.dart_home(d) {
                DartHome::Crossing(c, s) => {
                    if ru(c) {
                        this.dart(c, (s + 2) % 4)
                    } else {
                        d
                    }
                }
                DartHome::Endpoint(_) => d,
            }
        };
        // Compact: surviving crossings renumber in order; endpoints last.
        let mut cross_rename: BTreeMap<usize, usize> = BTreeMap::new();
        let mut next = 0usize;
        for &c in &live {
            cross_rename.insert(c, next);
            next += 1;
        }
        let keep_endpoints = self.has_endpoints && !self.drop_endpoints;
        let final_dart = |this: &Self, d: Dart| -> Option<Dart> {
            let d = rot(this, d);
            match this.dart_home(d) {
                DartHome::Crossing(c, s) => cross_rename.get(&c).map(|&nc| 4 * nc + s as usize),
                DartHome::Endpoint(e) => {
                    if keep_endpoints {
                        Some(4 * next + e)
                    } else {
                        None
                    }
                }
            }
        };
        let n_final = 4 * next + if keep_endpoints { 2 } else { 0 };
        let mut alpha_final = vec![UNWIRED; n_final];
        for d in 0..self.alpha.len() {
            let a = self.alpha[d];
            if a == UNWIRED {
                continue;
            }
            let (Some(fd), Some(fa)) = (final_dart(&self, d), final_dart(&self, a)) else {
                continue;
            };
            alpha_final[fd] = fa;
        }
        // over_in follows both reversals: each toggles the odd in-slot.
        let mut over_final = Vec::with_capacity(next);
        for &c in &live {
            let oi = self.over_in[c].unwrap();
            let oi = if ru(c) ^ ro(c) { 4 - oi } else { oi };
            over_final.push(oi);
        }
        let mode = match self.mode {
            MapMode::Spherical => MapMode::Spherical,
            MapMode::Planar { outer_anchor } => {
                let anchor = outer_hint.unwrap_or(outer_anchor);
                let fd = final_dart(&self, anchor)
                    .or_else(|| if n_final > 0 { Some(0) } else { None })
                    .unwrap_or(0);
                MapMode::Planar { outer_anchor: fd }
            }
        };
        let translation = DartTranslation {
            mapping: (0..self.alpha.len()).map(|d| final_dart(&self, d)).collect(),
        };
        let m = KnotoidMap::from_parts(over_final, alpha_final, keep_endpoints, self.free_loops, mode)?;
        Ok((m, translation))
    }
}

enum DartHome {
    Crossing(usize, u8),
    Endpoint(usize),
}

/// Mapping from extended-space darts to the compiled map's darts.
pub struct DartTranslation {
    mapping: Vec<Option<Dart>>,
}

impl DartTranslation {
    pub fn get(&self, d: Dart) -> Option<Dart> {
        self.mapping.get(d).copied().flatten()
    }
}
