//! Labeled braidoids as top-to-bottom event words.
//!
//! A word over n columns starts with n active strands (one per column),
//! contains exactly one leg birth and one head termination, and ends with n
//! strands again. Endpoint abscissae are stored explicitly as rationals:
//! floor(node_x) counts the column verticals left of the node, which is
//! independent of the node's order position among the strands (strands may
//! wander). Nodes sit strictly right of the closure vertical of the column
//! on their left, mirroring closure arcs that hug their column arbitrarily
//! closely.

use crate::geom::point::{rat_floor, Rat};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Label {
    O,
    U,
}

impl Label {
    pub fn as_char(self) -> char {
        match self {
            Label::O => 'o',
            Label::U => 'u',
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CrossSign {
    /// The strand at the smaller order position passes over.
    Plus,
    Minus,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BraidoidEvent {
    /// Strands at order positions i, i+1 cross (1-based).
    Cross { i: usize, sign: CrossSign },
    /// A new strand starts at order position i with its leg node at the
    /// given abscissa.
    LegBirth { i: usize, node_x: Rat },
    /// The strand at order position i terminates at the head node.
    HeadEnd { i: usize, node_x: Rat },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Endpoint {
    Leg,
    Head,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledBraidoid {
    pub n_columns: usize,
    pub labels: Vec<Label>,
    pub events: Vec<BraidoidEvent>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("labels count {0} differs from column count {1}")]
    LabelCount(usize, usize),
    #[error("endpoint multiplicity: expected exactly one leg birth and one head end")]
    EndpointMultiplicity,
    #[error("index range: event {0} uses position {1} with {2} strands active")]
    IndexRange(usize, usize, usize),
    #[error("node abscissa at event {0} must be a positive non-integer")]
    NodeAbscissa(usize),
    #[error("node abscissa at event {0} lies within a quarter unit right of a column vertical")]
    NodeOnClosureLane(usize),
    #[error("node abscissa at event {0} lies beyond the rightmost strip")]
    NodeBeyondStrips(usize),
    #[error("active count must return to {0} at the bottom, got {1}")]
    ProfileMismatch(usize, usize),
}

impl LabeledBraidoid {
    pub fn new(n_columns: usize, labels: Vec<Label>, events: Vec<BraidoidEvent>) -> Self {
        LabeledBraidoid {
            n_columns,
            labels,
            events,
        }
    }

    /// The minimal braidoid: no columns, a leg immediately joined to a head.
    pub fn minimal() -> Self {
        use num_rational::BigRational;
        use num_bigint::BigInt;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        LabeledBraidoid::new(
            0,
            vec![],
            vec![
                BraidoidEvent::LegBirth { i: 1, node_x: half.clone() },
                BraidoidEvent::HeadEnd { i: 1, node_x: half },
            ],
        )
    }

    pub fn leg_event(&self) -> Option<(usize, &Rat, usize)> {
        self.events.iter().enumerate().find_map(|(k, e)| match e {
            BraidoidEvent::LegBirth { i, node_x } => Some((*i, node_x, k)),
            _ => None,
        })
    }

    pub fn head_event(&self) -> Option<(usize, &Rat, usize)> {
        self.events.iter().enumerate().find_map(|(k, e)| match e {
            BraidoidEvent::HeadEnd { i, node_x } => Some((*i, node_x, k)),
            _ => None,
        })
    }

    pub fn endpoint_event(&self, which: Endpoint) -> Option<(usize, &Rat, usize)> {
        match which {
            Endpoint::Leg => self.leg_event(),
            Endpoint::Head => self.head_event(),
        }
    }

    /// Check every word invariant; the first violation is reported with its
    /// event index.
    pub fn validate(&self) -> Result<(), WordError> {
        if self.labels.len() != self.n_columns {
            return Err(WordError::LabelCount(self.labels.len(), self.n_columns));
        }
        let mut births = 0usize;
        let mut deaths = 0usize;
        let mut active = self.n_columns;
        for (k, e) in self.events.iter().enumerate() {
            match e {
                BraidoidEvent::Cross { i, .. } => {
                    if *i < 1 || i + 1 > active {
                        return Err(WordError::IndexRange(k, *i, active));
                    }
                }
                BraidoidEvent::LegBirth { i, node_x } => {
                    births += 1;
                    if births > 1 {
                        return Err(WordError::EndpointMultiplicity);
                    }
                    if *i < 1 || *i > active + 1 {
                        return Err(WordError::IndexRange(k, *i, active));
                    }
                    self.check_node(k, node_x)?;
                    active += 1;
                }
                BraidoidEvent::HeadEnd { i, node_x } => {
                    deaths += 1;
                    if deaths > 1 {
                        return Err(WordError::EndpointMultiplicity);
                    }
                    if *i < 1 || *i > active {
                        return Err(WordError::IndexRange(k, *i, active));
                    }
                    if active == 0 {
                        return Err(WordError::IndexRange(k, *i, active));
                    }
                    self.check_node(k, node_x)?;
                    active -= 1;
                }
            }
        }
        if births != 1 || deaths != 1 {
            return Err(WordError::EndpointMultiplicity);
        }
        if active != self.n_columns {
            return Err(WordError::ProfileMismatch(self.n_columns, active));
        }
        Ok(())
    }

    fn check_node(&self, k: usize, x: &Rat) -> Result<(), WordError> {
        if x <= &Rat::zero() || x.is_integer() {
            return Err(WordError::NodeAbscissa(k));
        }
        let j = rat_floor(x);
        if j as usize > self.n_columns {
            return Err(WordError::NodeBeyondStrips(k));
        }
        if j >= 1 {
            // Strictly right of the closure vertical at j + 1/4.
            let quarter = Rat::new(1.into(), 4.into());
            let bound = Rat::from_integer(j.into()) + quarter;
            if *x <= bound {
                return Err(WordError::NodeOnClosureLane(k));
            }
        }
        Ok(())
    }

    /// Number of active strands just before each event, plus the final count.
    pub fn active_profile(&self) -> Vec<usize> {
        let mut out = vec![self.n_columns];
        let mut active = self.n_columns;
        for e in &self.events {
            match e {
                BraidoidEvent::Cross { .. } => {}
                BraidoidEvent::LegBirth { .. } => active += 1,
                BraidoidEvent::HeadEnd { .. } => active -= 1,
            }
        }
        out.push(active);
        out
    }

    /// Active strand count just before event k.
    pub fn active_before(&self, k: usize) -> usize {
        let mut active = self.n_columns;
        for e in &self.events[..k] {
            match e {
                BraidoidEvent::Cross { .. } => {}
                BraidoidEvent::LegBirth { .. } => active += 1,
                BraidoidEvent::HeadEnd { .. } => active -= 1,
            }
        }
        active
    }
}

impl fmt::Display for LabeledBraidoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::codec::braidoid_text::print_braidoid(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point::ratio;

    #[test]
    fn minimal_braidoid_validates() {
        assert_eq!(LabeledBraidoid::minimal().validate(), Ok(()));
    }

    #[test]
    fn double_leg_rejected() {
        let half = ratio(1, 2);
        let b = LabeledBraidoid::new(
            0,
            vec![],
            vec![
                BraidoidEvent::LegBirth { i: 1, node_x: half.clone() },
                BraidoidEvent::LegBirth { i: 1, node_x: half.clone() },
                BraidoidEvent::HeadEnd { i: 1, node_x: half },
            ],
        );
        assert_eq!(b.validate(), Err(WordError::EndpointMultiplicity));
    }

    #[test]
    fn cross_index_out_of_range_rejected() {
        let b = LabeledBraidoid::new(
            2,
            vec![Label::U, Label::U],
            vec![
                BraidoidEvent::Cross { i: 3, sign: CrossSign::Plus },
                BraidoidEvent::LegBirth { i: 1, node_x: ratio(1, 2) },
                BraidoidEvent::HeadEnd { i: 1, node_x: ratio(2, 3) },
            ],
        );
        assert!(matches!(b.validate(), Err(WordError::IndexRange(0, 3, 2))));
    }

    #[test]
    fn equal_endpoint_abscissae_are_legal() {
        // The minimal braidoid has both nodes at 1/2; ties in the sL
        // direction rule are broken by a recorded swing instead.
        assert_eq!(LabeledBraidoid::minimal().validate(), Ok(()));
    }

    #[test]
    fn closure_lane_collision_rejected() {
        let b = LabeledBraidoid::new(
            1,
            vec![Label::U],
            vec![
                BraidoidEvent::LegBirth { i: 2, node_x: ratio(5, 4) },
                BraidoidEvent::HeadEnd { i: 2, node_x: ratio(3, 2) },
            ],
        );
        assert!(matches!(b.validate(), Err(WordError::NodeOnClosureLane(0))));
    }

    #[test]
    fn spec_example_one_column() {
        let b = LabeledBraidoid::new(
            1,
            vec![Label::U],
            vec![
                BraidoidEvent::LegBirth { i: 2, node_x: ratio(3, 2) },
                BraidoidEvent::HeadEnd { i: 2, node_x: ratio(8, 5) },
            ],
        );
        assert_eq!(b.validate(), Ok(()));
    }
}
