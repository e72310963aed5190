//! Kauffman bracket state sum and the writhe-normalized polynomial.
//!
//! Conventions are pinned by the kink computation: with slots in positive
//! rotation and slot 0 the incoming under-strand, the A-smoothing joins dart
//! pairs (0,1) and (2,3), the B-smoothing (1,2) and (3,0), and a crossing is
//! positive exactly when the over strand enters at slot 3. Under these
//! choices an isolated positive kink contributes the factor -A^3.

use super::laurent::LaurentPoly;
use crate::map::knotoid::{KnotoidMap, MapError};

pub const DEFAULT_CROSSING_CAP: usize = 20;

/// Writhe of a closed diagram: the sum of crossing signs.
pub fn writhe(m: &KnotoidMap) -> i64 {
    (0..m.n_crossings())
        .map(|c| if m.over_in(c) == 3 { 1 } else { -1 })
        .sum()
}

/// Kauffman bracket with <unknot> = 1.
pub fn kauffman_bracket(m: &KnotoidMap, cap: usize) -> Result<LaurentPoly, MapError> {
    if m.has_endpoints() {
        return Err(MapError::HasEndpoints);
    }
    let c = m.n_crossings();
    if c > cap {
        return Err(MapError::CapExceeded(c));
    }
    let mut total = LaurentPoly::zero();
    let delta = LaurentPoly::loop_factor();
    for state in 0u64..(1u64 << c) {
        let mut a_count = 0i64;
        // Smoothing partner of each dart under this state.
        let partner = |d: usize| -> usize {
            let cr = d / 4;
            let s = d % 4;
            let a_smoothing = state & (1 << cr) == 0;
            // A: (0,1)(2,3); B: (1,2)(3,0)
            let p = if a_smoothing {
                match s {
                    0 => 1,
                    1 => 0,
                    2 => 3,
                    _ => 2,
                }
            } else {
                match s {
                    1 => 2,
                    2 => 1,
                    3 => 0,
                    _ => 3,
                }
            };
            4 * cr + p
        };
        for cr in 0..c {
            if state & (1 << cr) == 0 {
                a_count += 1;
            }
        }
        let b_count = c as i64 - a_count;
        // Count loops: cycles of partner . alpha.
        let n = m.n_darts();
        let mut seen = vec![false; n];
        let mut loops = m.free_loops();
        for d0 in 0..n {
            if seen[d0] {
                continue;
            }
            loops += 1;
            let mut d = d0;
            loop {
                seen[d] = true;
                let p = partner(d);
                seen[p] = true;
                d = m.alpha(p);
                if d == d0 {
                    break;
                }
            }
        }
        let term = if loops == 0 {
            // Empty diagram: multiplicative unit by convention.
            LaurentPoly::one()
        } else {
            delta.pow((loops - 1) as u32)
        };
        total += &(&LaurentPoly::monomial(a_count - b_count, 1) * &term);
    }
    Ok(total)
}

/// Bracket times (-A^3)^(-writhe): invariant under all Reidemeister moves.
pub fn normalized_polynomial(m: &KnotoidMap, cap: usize) -> Result<LaurentPoly, MapError> {
    let b = kauffman_bracket(m, cap)?;
    Ok(b.times_neg_a_cubed(-writhe(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::knotoid::{KnotoidMap, MapMode};

    fn closed_kink(over_in: u8) -> KnotoidMap {
        // One crossing; loop edge joins under-out (2) to the over-in slot;
        // the remaining two slots close up.
        let mut alpha = vec![0usize; 4];
        let over_out = (4 - over_in) as usize;
        alpha[2] = over_in as usize;
        alpha[over_in as usize] = 2;
        alpha[0] = over_out;
        alpha[over_out] = 0;
        KnotoidMap::from_parts(vec![over_in], alpha, false, 0, MapMode::Spherical).unwrap()
    }

    pub fn trefoil_map() -> KnotoidMap {
        // PD X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)
        let mut alpha = vec![0usize; 12];
        let mut wire = |a: usize, b: usize, alpha: &mut Vec<usize>| {
            alpha[a] = b;
            alpha[b] = a;
        };
        wire(0, 7, &mut alpha);
        wire(2, 9, &mut alpha);
        wire(4, 11, &mut alpha);
        wire(1, 6, &mut alpha);
        wire(3, 8, &mut alpha);
        wire(5, 10, &mut alpha);
        KnotoidMap::from_parts(vec![1, 1, 1], alpha, false, 0, MapMode::Spherical).unwrap()
    }

    pub fn figure8_map() -> KnotoidMap {
        // PD X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)
        let mut alpha = vec![0usize; 16];
        let mut wire = |a: usize, b: usize, alpha: &mut Vec<usize>| {
            alpha[a] = b;
            alpha[b] = a;
        };
        wire(3, 6, &mut alpha);
        wire(1, 12, &mut alpha);
        wire(9, 14, &mut alpha);
        wire(0, 11, &mut alpha);
        wire(2, 7, &mut alpha);
        wire(5, 8, &mut alpha);
        wire(10, 13, &mut alpha);
        wire(4, 15, &mut alpha);
        KnotoidMap::from_parts(vec![3, 3, 1, 1], alpha, false, 0, MapMode::Spherical).unwrap()
    }

    #[test]
    fn unknot_bracket_is_one() {
        let m = KnotoidMap::unlink(1);
        assert!(kauffman_bracket(&m, 20).unwrap().is_one());
    }

    #[test]
    fn positive_kink_bracket() {
        // over_in = 3 is the positive crossing.
        let k = closed_kink(3);
        assert_eq!(writhe(&k), 1);
        assert_eq!(kauffman_bracket(&k, 20).unwrap().to_string(), "-1*A^3");
        assert!(normalized_polynomial(&k, 20).unwrap().is_one());
        let k = closed_kink(1);
        assert_eq!(writhe(&k), -1);
        assert_eq!(kauffman_bracket(&k, 20).unwrap().to_string(), "-1*A^-3");
        assert!(normalized_polynomial(&k, 20).unwrap().is_one());
    }

    #[test]
    fn trefoil_and_figure8_differ() {
        let t = normalized_polynomial(&trefoil_map(), 20).unwrap();
        let f = normalized_polynomial(&figure8_map(), 20).unwrap();
        assert_ne!(t, f);
        assert!(!t.is_one());
        assert!(!f.is_one());
        // The figure-eight is amphichiral.
        assert_eq!(f, f.mirror());
        // The trefoil polynomial has 3 terms spanning 16 degrees.
        assert_eq!(t.terms().count(), 3);
    }

    #[test]
    fn split_union_multiplies_by_loop_factor() {
        let mut t = trefoil_map();
        t = KnotoidMap::from_parts(
            (0..t.n_crossings()).map(|c| t.over_in(c)).collect(),
            (0..t.n_darts()).map(|d| t.alpha(d)).collect(),
            false,
            1,
            MapMode::Spherical,
        )
        .unwrap();
        let b = kauffman_bracket(&t, 20).unwrap();
        let plain = kauffman_bracket(&trefoil_map(), 20).unwrap();
        assert_eq!(b, &plain * &LaurentPoly::loop_factor());
    }
}
