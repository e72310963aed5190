//! Exact rational points in the strip plane.
//!
//! The y-axis increases downward: a strand "descends" when its y-coordinate
//! grows along the orientation. All predicates are exact; no floating point
//! enters any decision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact rational coordinate type used throughout the geometry layer.
pub type Rat = BigRational;

/// Build a rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Build a rational from numerator and denominator.
pub fn ratio(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Floor of a rational as an i64 (panics on overflow; coordinates stay tiny).
pub fn rat_floor(r: &Rat) -> i64 {
    let f = r.floor();
    let n = f.to_integer();
    i64::try_from(n).expect("coordinate out of i64 range")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn of(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    pub fn of_ratio(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(ratio(xn, xd), ratio(yn, yd))
    }

    /// Lexicographic comparison by (y, x); the sweep order used by the
    /// intersection listing.
    pub fn cmp_yx(&self, other: &Point) -> Ordering {
        self.y.cmp(&other.y).then_with(|| self.x.cmp(&other.x))
    }

    pub fn sub(&self, other: &Point) -> Vector {
        Vector {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector {
    pub x: Rat,
    pub y: Rat,
}

impl Vector {
    pub fn cross(&self, other: &Vector) -> Rat {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vector) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// Orientation of the ordered triple (a, b, c).
///
/// With the downward y-axis this is the raw determinant sign; `Ccw` is the
/// positive-determinant class. Visual handedness is irrelevant as long as one
/// convention is used consistently everywhere, which the map layer does.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orient {
    Ccw,
    Cw,
    Collinear,
}

pub fn orient(a: &Point, b: &Point, c: &Point) -> Orient {
    let d = b.sub(a).cross(&c.sub(a));
    if d.is_positive() {
        Orient::Ccw
    } else if d.is_negative() {
        Orient::Cw
    } else {
        Orient::Collinear
    }
}

/// Half-plane index for direction vectors: 0 for the (y<0) or (y=0, x>0)
/// half, 1 otherwise. Zero vectors are rejected by callers.
fn half(v: &Vector) -> u8 {
    if v.y.is_negative() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Compare two nonzero direction vectors by rotational angle starting from
/// the direction (1, -1e-...) i.e. sweeping through half 0 then half 1 in
/// positive-determinant order. Used to sort the four strand directions around
/// a crossing into a consistent rotation.
pub fn cmp_rotation(u: &Vector, v: &Vector) -> Ordering {
    debug_assert!(!u.is_zero() && !v.is_zero());
    let (hu, hv) = (half(u), half(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    let c = u.cross(v);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// midpoint of two points
pub fn midpoint(a: &Point, b: &Point) -> Point {
    let two = rat(2);
    Point::new((&a.x + &b.x) / &two, (&a.y + &b.y) / &two)
}

/// Linear interpolation a + t*(b-a).
pub fn lerp(a: &Point, b: &Point, t: &Rat) -> Point {
    let one: Rat = One::one();
    Point::new(
        (&one - t) * &a.x + t * &b.x,
        (&one - t) * &a.y + t * &b.y,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_order_sorts_full_turn() {
        // east, then the half-0 sweep, then half-1.
        let e = Vector { x: rat(1), y: rat(0) };
        let n = Vector { x: rat(0), y: rat(-1) }; // "up" on screen
        let w = Vector { x: rat(-1), y: rat(0) };
        let s = Vector { x: rat(0), y: rat(1) };
        // n and e share half 0, s and w share half 1; the positive-determinant
        // sweep visits n, e, s, w and closes up (det of each consecutive pair is +1).
        assert_eq!(cmp_rotation(&n, &e), Ordering::Less);
        let mut dirs = vec![s.clone(), n.clone(), w.clone(), e.clone()];
        dirs.sort_by(|a, b| cmp_rotation(a, b));
        assert_eq!(dirs, vec![n, e, s, w]);
    }

    #[test]
    fn orientation_sign() {
        let a = Point::of(0, 0);
        let b = Point::of(1, 0);
        let c = Point::of(0, 1);
        assert_eq!(orient(&a, &b, &c), Orient::Ccw);
        assert_eq!(orient(&a, &c, &b), Orient::Cw);
        let d = Point::of(2, 0);
        assert_eq!(orient(&a, &b, &d), Orient::Collinear);
    }
}
