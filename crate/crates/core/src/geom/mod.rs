//! Exact rational planar geometry.
//!
//! Everything here works over [`Rat`] (arbitrary precision rationals) so that
//! transversality, point location and winding numbers are decided exactly.

mod arrangement;
mod winding;

pub use arrangement::{Arrangement, Carrier, Edge, Face, Location};
pub use winding::{signed_area, winding_by_raycast};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number in canonical form.
pub type Rat = BigRational;

/// Builds the rational `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("degenerate contact between arc {0:?} and arc {1:?}")]
    DegenerateContact((usize, usize), (usize, usize)),
    #[error("zero-length segment {1} in arc {0}")]
    DegenerateSegment(usize, usize),
    #[error("winding propagation is inconsistent across edge {0}")]
    InconsistentPropagation(usize),
    #[error("point lies on the loop")]
    PointOnLoop,
}

/// A point (or vector) of the plane with exact coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pt {
    pub x: Rat,
    pub y: Rat,
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Pt {
    pub fn new(x: Rat, y: Rat) -> Self {
        Pt { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Pt::new(int(x), int(y))
    }

    pub fn zero() -> Self {
        Pt::new(Rat::zero(), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, other: &Pt) -> Rat {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Pt) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scale(&self, s: &Rat) -> Pt {
        Pt::new(&self.x * s, &self.y * s)
    }

    /// Point `self + t (other - self)`.
    pub fn lerp(&self, other: &Pt, t: &Rat) -> Pt {
        self + &(other - self).scale(t)
    }

    pub fn norm2(&self) -> Rat {
        self.dot(self)
    }

    /// Counterclockwise perpendicular.
    pub fn perp(&self) -> Pt {
        Pt::new(-self.y.clone(), self.x.clone())
    }
}

impl<'a> Add<&'a Pt> for &'a Pt {
    type Output = Pt;
    fn add(self, rhs: &'a Pt) -> Pt {
        Pt::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Sub<&'a Pt> for &'a Pt {
    type Output = Pt;
    fn sub(self, rhs: &'a Pt) -> Pt {
        Pt::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, rhs: Pt) -> Pt {
        &self + &rhs
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, rhs: Pt) -> Pt {
        &self - &rhs
    }
}

impl Neg for Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        Pt::new(-self.x, -self.y)
    }
}

impl Neg for &Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        Pt::new(-self.x.clone(), -self.y.clone())
    }
}

impl Mul<&Rat> for &Pt {
    type Output = Pt;
    fn mul(self, rhs: &Rat) -> Pt {
        self.scale(rhs)
    }
}

pub fn sign(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `det(q - p, r - p)`: `+1` for a left turn, `-1` for a right turn.
pub fn orient(p: &Pt, q: &Pt, r: &Pt) -> i8 {
    sign(&(q - p).cross(&(r - p)))
}

/// Total order on nonzero directions by counterclockwise angle from the
/// positive x axis, using only a half-plane test and a cross product.
pub fn angle_cmp(a: &Pt, b: &Pt) -> std::cmp::Ordering {
    fn half(d: &Pt) -> u8 {
        if d.y.is_positive() || (d.y.is_zero() && d.x.is_positive()) {
            0
        } else {
            1
        }
    }
    half(a).cmp(&half(b)).then_with(|| match sign(&a.cross(b)) {
        1 => std::cmp::Ordering::Less,
        -1 => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Pt,
    pub b: Pt,
}

impl Segment {
    pub fn new(a: Pt, b: Pt) -> Self {
        Segment { a, b }
    }

    pub fn dir(&self) -> Pt {
        &self.b - &self.a
    }

    /// True if `p` lies on the closed segment.
    pub fn contains(&self, p: &Pt) -> bool {
        orient(&self.a, &self.b, p) == 0 && self.in_box(p)
    }

    /// True if `p` lies on the segment but is not an endpoint.
    pub fn contains_interior(&self, p: &Pt) -> bool {
        self.contains(p) && p != &self.a && p != &self.b
    }

    fn in_box(&self, p: &Pt) -> bool {
        let (x0, x1) = minmax(&self.a.x, &self.b.x);
        let (y0, y1) = minmax(&self.a.y, &self.b.y);
        x0 <= &p.x && &p.x <= x1 && y0 <= &p.y && &p.y <= y1
    }

    /// Parameter `t` with `p = a + t (b - a)`, for `p` on the carrier line.
    pub fn param_of(&self, p: &Pt) -> Rat {
        let d = self.dir();
        (p - &self.a).dot(&d) / d.norm2()
    }

    /// Squared distance from `p` to the closed segment.
    pub fn dist2(&self, p: &Pt) -> Rat {
        let t = self.param_of(p);
        let t = if t < Rat::zero() {
            Rat::zero()
        } else if t > Rat::one() {
            Rat::one()
        } else {
            t
        };
        (p - &self.a.lerp(&self.b, &t)).norm2()
    }
}

fn minmax<'a>(a: &'a Rat, b: &'a Rat) -> (&'a Rat, &'a Rat) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Why two segments meet in a way that is not a clean crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    /// Collinear with a common sub-segment of positive length.
    Overlap,
    /// An endpoint of one segment lies in the interior of the other.
    Touch(Pt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contact {
    Disjoint,
    Crossing(Pt),
    SharedEndpoint(Pt),
    Degenerate(Degeneracy),
}

/// Classifies how two segments with distinct endpoints meet.
pub fn seg_intersect(s1: &Segment, s2: &Segment) -> Contact {
    let o1 = orient(&s1.a, &s1.b, &s2.a);
    let o2 = orient(&s1.a, &s1.b, &s2.b);
    let o3 = orient(&s2.a, &s2.b, &s1.a);
    let o4 = orient(&s2.a, &s2.b, &s1.b);

    if o1 == 0 && o2 == 0 {
        // collinear
        let shared: Vec<&Pt> = [&s2.a, &s2.b]
            .into_iter()
            .filter(|p| **p == s1.a || **p == s1.b)
            .collect();
        let inner = s1.contains_interior(&s2.a)
            || s1.contains_interior(&s2.b)
            || s2.contains_interior(&s1.a)
            || s2.contains_interior(&s1.b)
            || (shared.len() == 2);
        if inner {
            return Contact::Degenerate(Degeneracy::Overlap);
        }
        return match shared.first() {
            Some(p) => Contact::SharedEndpoint((*p).clone()),
            None => Contact::Disjoint,
        };
    }

    if o1 * o2 < 0 && o3 * o4 < 0 {
        let d1 = s1.dir();
        let d2 = s2.dir();
        let t = (&s2.a - &s1.a).cross(&d2) / d1.cross(&d2);
        return Contact::Crossing(s1.a.lerp(&s1.b, &t));
    }

    for p in [&s2.a, &s2.b] {
        if p == &s1.a || p == &s1.b {
            return Contact::SharedEndpoint(p.clone());
        }
    }
    for p in [&s2.a, &s2.b] {
        if s1.contains_interior(p) {
            return Contact::Degenerate(Degeneracy::Touch(p.clone()));
        }
    }
    for p in [&s1.a, &s1.b] {
        if s2.contains_interior(p) {
            return Contact::Degenerate(Degeneracy::Touch(p.clone()));
        }
    }
    Contact::Disjoint
}

/// An ordered list of vertices; closed polylines have an implied closing
/// segment from the last vertex back to the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyline {
    pub vertices: Vec<Pt>,
    pub closed: bool,
}

impl Polyline {
    pub fn open(vertices: Vec<Pt>) -> Self {
        Polyline {
            vertices,
            closed: false,
        }
    }

    pub fn closed(vertices: Vec<Pt>) -> Self {
        Polyline { vertices, closed: true }
    }

    pub fn segments(&self) -> Vec<Segment> {
        let n = self.vertices.len();
        let mut out: Vec<Segment> = self
            .vertices
            .windows(2)
            .map(|w| Segment::new(w[0].clone(), w[1].clone()))
            .collect();
        if self.closed && n >= 2 {
            out.push(Segment::new(self.vertices[n - 1].clone(), self.vertices[0].clone()));
        }
        out
    }

    pub fn reversed(&self) -> Polyline {
        let mut v = self.vertices.clone();
        v.reverse();
        Polyline {
            vertices: v,
            closed: self.closed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orient_examples() {
        let o = Pt::ints(0, 0);
        assert_eq!(orient(&o, &Pt::ints(1, 0), &Pt::ints(0, 1)), 1);
        assert_eq!(orient(&o, &Pt::ints(1, 0), &Pt::ints(2, 0)), 0);
        assert_eq!(orient(&o, &Pt::ints(0, 1), &Pt::ints(1, 0)), -1);
    }

    #[test]
    fn seg_intersect_examples() {
        let s = |a: (i64, i64), b: (i64, i64)| Segment::new(Pt::ints(a.0, a.1), Pt::ints(b.0, b.1));
        assert_eq!(
            seg_intersect(&s((0, 0), (2, 0)), &s((1, -1), (1, 1))),
            Contact::Crossing(Pt::ints(1, 0))
        );
        assert_eq!(seg_intersect(&s((0, 0), (1, 0)), &s((2, 0), (3, 0))), Contact::Disjoint);
        assert_eq!(
            seg_intersect(&s((0, 0), (2, 0)), &s((1, 0), (1, 2))),
            Contact::Degenerate(Degeneracy::Touch(Pt::ints(1, 0)))
        );
        assert_eq!(
            seg_intersect(&s((0, 0), (2, 0)), &s((1, 0), (3, 0))),
            Contact::Degenerate(Degeneracy::Overlap)
        );
        assert_eq!(
            seg_intersect(&s((0, 0), (2, 0)), &s((2, 0), (3, 5))),
            Contact::SharedEndpoint(Pt::ints(2, 0))
        );
        assert_eq!(
            seg_intersect(&s((0, 0), (2, 0)), &s((2, 0), (3, 0))),
            Contact::SharedEndpoint(Pt::ints(2, 0))
        );
    }

    #[test]
    fn crossing_point_is_exact() {
        let a = Segment::new(Pt::ints(0, 0), Pt::ints(3, 1));
        let b = Segment::new(Pt::ints(0, 1), Pt::ints(1, 0));
        match seg_intersect(&a, &b) {
            Contact::Crossing(p) => {
                assert_eq!(p, Pt::new(rat(3, 4), rat(1, 4)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn angle_order_is_counterclockwise() {
        let mut dirs = vec![
            Pt::ints(0, -1),
            Pt::ints(-1, 0),
            Pt::ints(1, 1),
            Pt::ints(1, 0),
            Pt::ints(0, 1),
            Pt::ints(1, -1),
        ];
        dirs.sort_by(angle_cmp);
        assert_eq!(
            dirs,
            vec![
                Pt::ints(1, 0),
                Pt::ints(1, 1),
                Pt::ints(0, 1),
                Pt::ints(-1, 0),
                Pt::ints(0, -1),
                Pt::ints(1, -1),
            ]
        );
    }
}
