//! Exact segment intersection classification.

use super::point::{lerp, orient, Orient, Point, Rat};
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    /// No common point.
    None,
    /// Transversal crossing at a point interior to both segments.
    Proper(Point),
    /// A single common point that is an endpoint of at least one segment.
    Touch(Point),
    /// Collinear with a shared sub-segment of positive length.
    Overlap,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }

    /// x-coordinate at a given y for a non-horizontal segment, if y is within
    /// the closed y-range.
    pub fn x_at(&self, y: &Rat) -> Option<Rat> {
        let (ylo, yhi) = if self.a.y <= self.b.y {
            (&self.a.y, &self.b.y)
        } else {
            (&self.b.y, &self.a.y)
        };
        if y < ylo || y > yhi || self.is_horizontal() {
            return None;
        }
        let t = (y - &self.a.y) / (&self.b.y - &self.a.y);
        Some(lerp(&self.a, &self.b, &t).x)
    }

    /// Classify the intersection of two segments.
    pub fn meet(&self, other: &Segment) -> Meet {
        let p = &self.a;
        let r = self.b.sub(&self.a);
        let q = &other.a;
        let s = other.b.sub(&other.a);
        let denom = r.cross(&s);
        let qp = q.sub(p);
        if denom.is_zero() {
            if qp.cross(&r).is_zero() {
                // Collinear: check 1-d overlap using the parameter along r.
                let rr = r.dot(&r);
                if rr.is_zero() {
                    // self is a point
                    return if on_segment(other, p) {
                        Meet::Touch(p.clone())
                    } else {
                        Meet::None
                    };
                }
                let t0 = qp.dot(&r) / &rr;
                let t1 = &t0 + s.dot(&r) / &rr;
                let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
                let zero: Rat = Zero::zero();
                let one: Rat = One::one();
                if hi < zero || lo > one {
                    Meet::None
                } else if hi == zero {
                    Meet::Touch(self.a.clone())
                } else if lo == one {
                    Meet::Touch(self.b.clone())
                } else {
                    Meet::Overlap
                }
            } else {
                Meet::None
            }
        } else {
            let t = qp.cross(&s) / &denom;
            let u = qp.cross(&r) / &denom;
            let zero: Rat = Zero::zero();
            let one: Rat = One::one();
            if t < zero || t > one || u < zero || u > one {
                Meet::None
            } else {
                let pt = lerp(&self.a, &self.b, &t);
                if t > zero && t < one && u > zero && u < one {
                    Meet::Proper(pt)
                } else {
                    Meet::Touch(pt)
                }
            }
        }
    }

    /// True when `pt` lies strictly inside the open segment.
    pub fn contains_interior(&self, pt: &Point) -> bool {
        if orient(&self.a, &self.b, pt) != Orient::Collinear {
            return false;
        }
        let d = self.b.sub(&self.a);
        let v = pt.sub(&self.a);
        let t = if !d.x.is_zero() {
            &v.x / &d.x
        } else if !d.y.is_zero() {
            &v.y / &d.y
        } else {
            return false;
        };
        let zero: Rat = Zero::zero();
        let one: Rat = One::one();
        t > zero && t < one
    }
}

fn on_segment(seg: &Segment, pt: &Point) -> bool {
    if orient(&seg.a, &seg.b, pt) != Orient::Collinear {
        return false;
    }
    let minx = seg.a.x.clone().min(seg.b.x.clone());
    let maxx = seg.a.x.clone().max(seg.b.x.clone());
    let miny = seg.a.y.clone().min(seg.b.y.clone());
    let maxy = seg.a.y.clone().max(seg.b.y.clone());
    pt.x >= minx && pt.x <= maxx && pt.y >= miny && pt.y <= maxy
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point::rat;

    #[test]
    fn unit_x_shape() {
        let s1 = Segment::new(Point::of(0, 0), Point::of(2, 2));
        let s2 = Segment::new(Point::of(0, 2), Point::of(2, 0));
        match s1.meet(&s2) {
            Meet::Proper(p) => {
                assert_eq!(p, Point::of(1, 1));
            }
            m => panic!("expected proper crossing, got {m:?}"),
        }
    }

    #[test]
    fn disjoint() {
        let s1 = Segment::new(Point::of(0, 0), Point::of(1, 1));
        let s2 = Segment::new(Point::of(5, 5), Point::of(6, 7));
        assert_eq!(s1.meet(&s2), Meet::None);
    }

    #[test]
    fn endpoint_touch_and_overlap() {
        let s1 = Segment::new(Point::of(0, 0), Point::of(2, 2));
        let s2 = Segment::new(Point::of(2, 2), Point::of(3, 1));
        assert!(matches!(s1.meet(&s2), Meet::Touch(_)));
        let s3 = Segment::new(Point::of(1, 1), Point::of(3, 3));
        assert_eq!(s1.meet(&s3), Meet::Overlap);
    }

    #[test]
    fn x_at_interpolates() {
        let s = Segment::new(Point::of(0, 0), Point::of(4, 2));
        assert_eq!(s.x_at(&rat(1)).unwrap(), rat(2));
        assert!(s.x_at(&rat(5)).is_none());
    }
}
