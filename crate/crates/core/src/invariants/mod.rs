//! Invariant computation and equivalence search.

pub mod bracket;
pub mod laurent;
pub mod search;

pub use bracket::{kauffman_bracket, normalized_polynomial, writhe, DEFAULT_CROSSING_CAP};
pub use laurent::LaurentPoly;

use crate::map::closure::{over_closure, under_closure};
use crate::map::knotoid::{KnotoidMap, MapError};
use crate::map::moves::simplify;

/// The spherical multi-knotoid invariant used as the inequivalence witness:
/// normalized polynomials of the under- and over-closures. Closures are
/// simplified by reducing moves first, which the polynomials ignore.
pub fn closure_pair_invariant(
    k: &KnotoidMap,
    cap: usize,
) -> Result<(LaurentPoly, LaurentPoly), MapError> {
    let under = simplify(&under_closure(k)?);
    let over = simplify(&over_closure(k)?);
    Ok((
        normalized_polynomial(&under, cap)?,
        normalized_polynomial(&over, cap)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_knotoid_pair_is_one_one() {
        let m = KnotoidMap::trivial_knotoid(false);
        let (u, o) = closure_pair_invariant(&m, 20).unwrap();
        assert!(u.is_one());
        assert!(o.is_one());
    }
}
