use num_traits::Zero;

use super::{int, orient, GeomError, Polyline, Pt, Rat, Segment};

/// Shoelace area of a closed polyline; positive for counterclockwise loops.
pub fn signed_area(poly: &Polyline) -> Rat {
    let n = poly.vertices.len();
    let mut acc = Rat::zero();
    for i in 0..n {
        let p = &poly.vertices[i];
        let q = &poly.vertices[(i + 1) % n];
        acc += p.cross(q);
    }
    acc / int(2)
}

/// Ray direction `(1, k)` for the smallest `k >= 1` whose line through `p`
/// avoids every point in `avoid`.
pub(crate) fn ray_direction<'a>(p: &Pt, avoid: impl Iterator<Item = &'a Pt> + Clone) -> Pt {
    let mut k = 1i64;
    loop {
        let d = Pt::ints(1, k);
        if avoid.clone().all(|v| !d.cross(&(v - p)).is_zero()) {
            return d;
        }
        k += 1;
    }
}

/// Parameter `t > 0` where the ray `p + t d` crosses the segment, provided the
/// segment endpoints lie strictly on opposite sides of the ray's line.
pub(crate) fn ray_hit(p: &Pt, d: &Pt, s: &Segment) -> Option<Rat> {
    let q = p + d;
    let oa = orient(p, &q, &s.a);
    let ob = orient(p, &q, &s.b);
    if oa * ob >= 0 {
        return None;
    }
    let e = s.dir();
    let t = (&s.a - p).cross(&e) / d.cross(&e);
    if t > Rat::zero() {
        Some(t)
    } else {
        None
    }
}

/// Winding number of a closed polyline about `p` by signed ray crossings.
pub fn winding_by_raycast(poly: &Polyline, p: &Pt) -> Result<i64, GeomError> {
    let segs = poly.segments();
    if segs.iter().any(|s| s.contains(p)) || (segs.is_empty() && poly.vertices.first() == Some(p)) {
        return Err(GeomError::PointOnLoop);
    }
    let d = ray_direction(p, poly.vertices.iter());
    let mut w = 0i64;
    for s in &segs {
        if ray_hit(p, &d, s).is_some() {
            if d.cross(&s.dir()) > Rat::zero() {
                w += 1;
            } else {
                w -= 1;
            }
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    fn square(ccw: bool) -> Polyline {
        let mut v = vec![Pt::ints(0, 0), Pt::ints(1, 0), Pt::ints(1, 1), Pt::ints(0, 1)];
        if !ccw {
            v.reverse();
        }
        Polyline::closed(v)
    }

    #[test]
    fn raycast_examples() {
        let c = Pt::new(rat(1, 2), rat(1, 2));
        assert_eq!(winding_by_raycast(&square(true), &c), Ok(1));
        assert_eq!(winding_by_raycast(&square(true), &Pt::ints(10, -3)), Ok(0));
        let mut twice = square(true).vertices;
        twice.extend(square(true).vertices);
        assert_eq!(winding_by_raycast(&Polyline::closed(twice), &c), Ok(2));
        assert_eq!(winding_by_raycast(&square(false), &c), Ok(-1));
        assert_eq!(
            winding_by_raycast(&square(true), &Pt::new(rat(1, 2), rat(0, 1))),
            Err(GeomError::PointOnLoop)
        );
    }

    #[test]
    fn area_examples() {
        assert_eq!(signed_area(&square(true)), int(1));
        assert_eq!(signed_area(&square(false)), int(-1));
        let tri = Polyline::closed(vec![Pt::ints(0, 0), Pt::ints(1, 0), Pt::ints(0, 1)]);
        assert_eq!(signed_area(&tri), rat(1, 2));
    }

    #[test]
    fn ray_direction_skips_collinear_vertices() {
        let p = Pt::ints(0, 0);
        let pts = [Pt::ints(1, 1), Pt::ints(-2, -4)];
        assert_eq!(ray_direction(&p, pts.iter()), Pt::ints(1, 3));
    }
}
