//! Bounded search (to come).
