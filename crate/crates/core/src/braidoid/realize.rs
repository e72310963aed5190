//! Canonical piecewise-linear realization of a braidoid word.
//!
//! Columns sit at integer abscissae 1..n with the top line at y = 0, one
//! event per integer height, and the bottom line at y = M+1. Active strands
//! occupy integer lanes 1..count between events; a crossing swaps two lanes
//! by diagonals inside the band [t-1/4, t+1/4]. At a node event every other
//! strand receives a waypoint at the node's height: strands whose natural
//! path would fall on the wrong side of the node (possible because node
//! strips are independent of order positions) detour around it, packed
//! order-preservingly next to the node. Sweepline re-extraction of the word
//! from this geometry is the identity.

use super::word::{BraidoidEvent, CrossSign, Label, LabeledBraidoid, WordError};
use crate::geom::point::{rat, ratio, Point, Rat};
use crate::geom::segment::Segment;
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StrandEnd {
    /// Attached to the top or bottom line at the column with this index
    /// (0-based into `columns`).
    Column(usize),
    Leg,
    Head,
}

#[derive(Clone, Debug)]
pub struct Strand {
    /// Strictly descending polyline.
    pub points: Vec<Point>,
    pub start: StrandEnd,
    pub end: StrandEnd,
}

impl Strand {
    /// Abscissa at a given height (must lie within the strand's y-range).
    pub fn x_at(&self, y: &Rat) -> Option<Rat> {
        for w in self.points.windows(2) {
            if &w[0].y <= y && y <= &w[1].y {
                let seg = Segment::new(w[0].clone(), w[1].clone());
                return seg.x_at(y);
            }
        }
        None
    }

    pub fn push_point(&mut self, p: Point) {
        // Merge collinear continuations.
        if self.points.len() >= 2 {
            let n = self.points.len();
            let a = &self.points[n - 2];
            let b = &self.points[n - 1];
            if crate::geom::point::orient(a, b, &p) == crate::geom::point::Orient::Collinear
                && b != &p
            {
                self.points.pop();
            }
        }
        if self.points.last() != Some(&p) {
            self.points.push(p);
        }
    }
}

/// A strand-strand crossing of the realization with its over/under data.
#[derive(Clone, Debug)]
pub struct RealizedCrossing {
    pub at: Point,
    /// The strand arriving from the upper left passes over.
    pub upper_left_over: bool,
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub strands: Vec<Strand>,
    /// Column abscissae in increasing order (canonical: 1..n).
    pub columns: Vec<Rat>,
    pub labels: Vec<Label>,
    pub y_top: Rat,
    pub y_bottom: Rat,
    pub leg: Point,
    pub head: Point,
    pub crossings: Vec<RealizedCrossing>,
}

impl Realization {
    pub fn x_left_of_everything(&self) -> Rat {
        let mut m = rat(0);
        for s in &self.strands {
            for p in &s.points {
                if p.x < m {
                    m = p.x.clone();
                }
            }
        }
        m - rat(1)
    }

    pub fn x_right_of_everything(&self) -> Rat {
        let mut m = rat(0);
        for s in &self.strands {
            for p in &s.points {
                if p.x > m {
                    m = p.x.clone();
                }
            }
        }
        for c in &self.columns {
            if *c > m {
                m = c.clone();
            }
        }
        m + rat(1)
    }
}

/// Deterministic canonical embedding of a valid word.
pub fn realize(b: &LabeledBraidoid) -> Result<Realization, WordError> {
    b.validate()?;
    let n = b.n_columns;
    let m_events = b.events.len();
    let y_bottom = rat(m_events as i64 + 1);
    // Active strand slots: strand index per position (0-based).
    let mut strands: Vec<Strand> = Vec::new();
    let mut active: Vec<ActiveSlot> = Vec::new();
    for j in 0..n {
        strands.push(Strand {
            points: vec![Point::new(rat(j as i64 + 1), rat(0))],
            start: StrandEnd::Column(j),
            end: StrandEnd::Column(usize::MAX),
        });
        active.push(ActiveSlot { strand: j });
    }
    let mut crossings: Vec<RealizedCrossing> = Vec::new();
    let mut leg = Point::new(rat(0), rat(0));
    let mut head = Point::new(rat(0), rat(0));
    let quarter = ratio(1, 4);
    for (k, ev) in b.events.iter().enumerate() {
        let t = rat(k as i64 + 1);
        let y_hi = &t - &quarter; // entering the band
        let y_lo = &t + &quarter; // leaving the band
        match ev {
            BraidoidEvent::Cross { i, sign } => {
                let li = i - 1; // 0-based position
                // Straight continuation for everyone; diagonals for i, i+1.
                for (pos, a) in active.iter().enumerate() {
                    let lane = rat(pos as i64 + 1);
                    if pos == li || pos == li + 1 {
                        let target = if pos == li { pos as i64 + 2 } else { pos as i64 };
                        strands[a.strand].push_point(Point::new(lane.clone(), y_hi.clone()));
                        strands[a.strand].push_point(Point::new(rat(target), y_lo.clone()));
                    } else {
                        strands[a.strand].push_point(Point::new(lane, y_lo.clone()));
                    }
                }
                let mid = Point::new(rat(li as i64 + 1) + ratio(1, 2), t.clone());
                crossings.push(RealizedCrossing {
                    at: mid,
                    upper_left_over: *sign == CrossSign::Plus,
                });
                active.swap(li, li + 1);
            }
            BraidoidEvent::LegBirth { i, node_x } => {
                let node = Point::new(node_x.clone(), t.clone());
                leg = node.clone();
                let li = i - 1;
                route_through_node(&mut strands, &active, &y_hi, &t, &y_lo, node_x, li, None);
                // Newborn: from the node to its lane.
                let mut s = Strand {
                    points: vec![node],
                    start: StrandEnd::Leg,
                    end: StrandEnd::Column(usize::MAX),
                };
                s.push_point(Point::new(rat(li as i64 + 1), y_lo.clone()));
                strands.push(s);
                active.insert(li, ActiveSlot { strand: strands.len() - 1 });
            }
            BraidoidEvent::HeadEnd { i, node_x } => {
                let node = Point::new(node_x.clone(), t.clone());
                head = node.clone();
                let li = i - 1;
                route_through_node(&mut strands, &active, &y_hi, &t, &y_lo, node_x, li, Some(li));
                let dying = active[li].strand;
                strands[dying].push_point(Point::new(rat(li as i64 + 1), y_hi.clone()));
                strands[dying].push_point(node);
                strands[dying].end = StrandEnd::Head;
                active.remove(li);
            }
        }
    }
    // Tails to the bottom line.
    for (pos, a) in active.iter().enumerate() {
        let lane = rat(pos as i64 + 1);
        strands[a.strand].push_point(Point::new(lane, y_bottom.clone()));
        strands[a.strand].end = StrandEnd::Column(pos);
    }
    Ok(Realization {
        strands,
        columns: (0..n).map(|j| rat(j as i64 + 1)).collect(),
        labels: b.labels.clone(),
        y_top: rat(0),
        y_bottom,
        leg,
        head,
        crossings,
    })
}

/// Route every active strand through a node event band: survivors whose
/// natural path would sit on the wrong side of the node get waypoints
/// packed beside it, preserving the left-to-right order at all heights.
/// `skip` marks the dying strand's position (it is routed by the caller).
#[allow(clippy::too_many_arguments)]
fn route_through_node(
    strands: &mut [Strand],
    active: &[ActiveSlot],
    y_hi: &Rat,
    t: &Rat,
    y_lo: &Rat,
    node_x: &Rat,
    li: usize,
    skip: Option<usize>,
) {
    // Survivor target lanes after the event.
    let is_birth = skip.is_none();
    let count = active.len();
    // For each surviving strand: (position, lane_before, lane_after,
    // should_be_left_of_node).
    struct Plan {
        strand: usize,
        before: i64,
        after: i64,
        left: bool,
    }
    let mut plans: Vec<Plan> = Vec::new();
    for (pos, a) in active.iter().enumerate() {
        if Some(pos) == skip {
            continue;
        }
        let before = pos as i64 + 1;
        let after = if is_birth {
            if pos >= li {
                pos as i64 + 2
            } else {
                pos as i64 + 1
            }
        } else if pos > li {
            pos as i64
        } else {
            pos as i64 + 1
        };
        // Left of the node: survivors at positions < li (birth) or < li
        // (death, excluding the dying strand itself).
        let left = pos < li;
        plans.push(Plan { strand: a.strand, before, after, left });
        let _ = count;
    }
    // Natural waypoint: midpoint abscissa.
    let two = rat(2);
    let naturals: Vec<Rat> = plans
        .iter()
        .map(|p| (rat(p.before) + rat(p.after)) / &two)
        .collect();
    // Packing bounds: left detours squeeze between the last natural-left
    // keeper and the node; right detours mirror.
    let mut left_keep_max: Option<Rat> = None;
    let mut right_keep_min: Option<Rat> = None;
    let mut n_left_detour = 0usize;
    let mut n_right_detour = 0usize;
    for (p, nat) in plans.iter().zip(naturals.iter()) {
        if p.left {
            if nat < node_x {
                let bigger = left_keep_max.map(|m: Rat| m.max(nat.clone())).unwrap_or(nat.clone());
                left_keep_max = Some(bigger);
            } else {
                n_left_detour += 1;
            }
        } else if nat > node_x {
            let smaller = right_keep_min.map(|m: Rat| m.min(nat.clone())).unwrap_or(nat.clone());
            right_keep_min = Some(smaller);
        } else {
            n_right_detour += 1;
        }
    }
    let left_base = left_keep_max.unwrap_or(node_x - rat(1));
    let right_base = right_keep_min.unwrap_or(node_x + rat(1));
    let left_step = (node_x - &left_base) / rat(n_left_detour as i64 + 1);
    let right_step = (&right_base - node_x) / rat(n_right_detour as i64 + 1);
    let mut left_seen = 0i64;
    let mut right_seen = 0i64;
    for (p, nat) in plans.iter().zip(naturals.iter()) {
        let wp = if p.left {
            if nat < node_x {
                nat.clone()
            } else {
                left_seen += 1;
                &left_base + &left_step * rat(left_seen)
            }
        } else if nat > node_x {
            nat.clone()
        } else {
            right_seen += 1;
            node_x + &right_step * rat(right_seen)
        };
        let s = &mut strands[p.strand];
        s.push_point(Point::new(rat(p.before), y_hi.clone()));
        s.push_point(Point::new(wp, t.clone()));
        s.push_point(Point::new(rat(p.after), y_lo.clone()));
    }
}

#[derive(Clone)]
pub struct ActiveSlot {
    pub strand: usize,
}

/// Gather every pairwise strand crossing of a strand set with exact points.
pub fn strand_intersections(strands: &[Strand]) -> Vec<(usize, usize, Point)> {
    let mut out = Vec::new();
    for i in 0..strands.len() {
        for j in i..strands.len() {
            let a = &strands[i];
            let b = &strands[j];
            for (si, wa) in a.points.windows(2).enumerate() {
                let range_j = b.points.windows(2).enumerate();
                for (sj, wb) in range_j {
                    if i == j && sj <= si + 1 {
                        continue;
                    }
                    let s1 = Segment::new(wa[0].clone(), wa[1].clone());
                    let s2 = Segment::new(wb[0].clone(), wb[1].clone());
                    if let crate::geom::segment::Meet::Proper(p) = s1.meet(&s2) {
                        out.push((i, j, p));
                    }
                }
            }
        }
    }
    out
}

/// Order map: node canonical abscissae used by the extractor when the
/// geometry is not already canonical.
pub fn canonical_node_slots(strip: usize, rank_in_strip: usize) -> Rat {
    let base = rat(strip as i64);
    match rank_in_strip {
        0 => base + ratio(1, 2),
        1 => base + ratio(3, 4),
        k => base + ratio(1, 2) + ratio(k as i64, 4 * (k as i64 + 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point::ratio;

    #[test]
    fn minimal_realizes_to_single_descending_strand() {
        let r = realize(&LabeledBraidoid::minimal()).unwrap();
        assert_eq!(r.strands.len(), 1);
        let s = &r.strands[0];
        assert_eq!(s.start, StrandEnd::Leg);
        assert_eq!(s.end, StrandEnd::Head);
        assert!(s.points.windows(2).all(|w| w[0].y < w[1].y));
        assert!(r.crossings.is_empty());
        assert!(strand_intersections(&r.strands).is_empty());
    }

    #[test]
    fn one_column_disjoint_pair() {
        let b = LabeledBraidoid::new(
            1,
            vec![Label::U],
            vec![
                BraidoidEvent::LegBirth { i: 2, node_x: ratio(3, 2) },
                BraidoidEvent::HeadEnd { i: 2, node_x: ratio(8, 5) },
            ],
        );
        let r = realize(&b).unwrap();
        assert_eq!(r.strands.len(), 2);
        assert!(strand_intersections(&r.strands).is_empty());
        for s in &r.strands {
            assert!(s.points.windows(2).all(|w| w[0].y < w[1].y), "{:?}", s.points);
        }
    }

    #[test]
    fn crossing_word_realizes_with_one_crossing() {
        let b = LabeledBraidoid::new(
            2,
            vec![Label::U, Label::O],
            vec![
                BraidoidEvent::Cross { i: 1, sign: CrossSign::Plus },
                BraidoidEvent::LegBirth { i: 1, node_x: ratio(1, 2) },
                BraidoidEvent::HeadEnd { i: 1, node_x: ratio(2, 5) },
            ],
        );
        let r = realize(&b).unwrap();
        assert_eq!(r.crossings.len(), 1);
        let ints = strand_intersections(&r.strands);
        assert_eq!(ints.len(), 1);
        assert_eq!(ints[0].2, r.crossings[0].at);
    }

    #[test]
    fn detour_when_node_strip_exceeds_position() {
        // Leg at position 1 but in strip 2 of a 2-column braidoid: both
        // strands must detour left of the node at its height.
        let b = LabeledBraidoid::new(
            2,
            vec![Label::U, Label::U],
            vec![
                BraidoidEvent::LegBirth { i: 1, node_x: ratio(5, 2) },
                BraidoidEvent::HeadEnd { i: 1, node_x: ratio(1, 2) },
            ],
        );
        b.validate().unwrap();
        let r = realize(&b).unwrap();
        // No strand-strand crossings arise from detours.
        assert!(strand_intersections(&r.strands).is_empty());
        // At the leg's height, no strand is left of the node.
        let t = rat(1);
        for s in &r.strands {
            if s.start == StrandEnd::Leg {
                continue;
            }
            if let Some(x) = s.x_at(&t) {
                assert!(x > ratio(5, 2), "strand at {x} not right of the leg");
            }
        }
    }
}
