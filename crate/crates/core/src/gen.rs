//! Random inputs for the property suites: plane loops, pairs of plane
//! polygons, and torus pairs wiggled by random fingers.

use rand::Rng;

use crate::geom::{angle_cmp, rat, Polyline, Pt};
use crate::isotopy::random_create;
use crate::surface::{Curve, CurvePair, Deck, SurfaceKind};

/// A random point with coordinates `k / den`, `|k| <= r`.
pub fn random_point<R: Rng>(rng: &mut R, r: i64, den: i64) -> Pt {
    Pt::new(rat(rng.gen_range(-r..=r), den), rat(rng.gen_range(-r..=r), den))
}

/// A closed polyline through random points; it may cross itself.
pub fn random_loop<R: Rng>(rng: &mut R, n: usize, r: i64) -> Polyline {
    let mut pts: Vec<Pt> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = random_point(rng, r, 1);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    Polyline::closed(pts)
}

/// A simple polygon, star-shaped about `center`, counterclockwise.
pub fn random_star_polygon<R: Rng>(rng: &mut R, n: usize, r: i64, center: &Pt) -> Vec<Pt> {
    let mut dirs: Vec<Pt> = Vec::with_capacity(n);
    while dirs.len() < n {
        let d = random_point(rng, r, 1);
        if d.is_zero() || dirs.iter().any(|e| angle_cmp(e, &d).is_eq()) {
            continue;
        }
        dirs.push(d);
    }
    dirs.sort_by(angle_cmp);
    // a gap of at least a half turn would fold the polygon over the
    // center; quarter-turn fillers close it
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let b = &dirs[(i + 1) % n];
        let mut cur = dirs[i].clone();
        out.push(&cur + center);
        while cur.cross(b) <= rat(0, 1) {
            cur = cur.perp();
            out.push(&cur + center);
        }
    }
    out
}

/// Two transverse star polygons in the plane that cross.
pub fn random_plane_pair<R: Rng>(rng: &mut R, n: usize) -> CurvePair {
    loop {
        let a = random_star_polygon(rng, n, 6, &Pt::zero());
        let c = Pt::new(rat(rng.gen_range(-9..=9), 7), rat(rng.gen_range(-9..=9), 5));
        let b = random_star_polygon(rng, n, 6, &c);
        if let Ok(p) = CurvePair::new(SurfaceKind::Plane, Curve::new(a, Deck(0, 0)), Curve::new(b, Deck(0, 0))) {
            if p.num() > 0 {
                return p;
            }
        }
    }
}

/// `base` with up to `fingers` random fingers pushed across alpha.
pub fn random_wiggle<R: Rng>(rng: &mut R, base: &CurvePair, fingers: usize) -> CurvePair {
    let mut pair = base.clone();
    for _ in 0..fingers {
        if let Some(mv) = random_create(rng, &pair, 64) {
            pair = mv.after;
        }
    }
    pair
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{signed_area, winding_by_raycast, Arrangement, GeomError};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn propagation_matches_raycast(seed in any::<u64>(), n in 3usize..8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let poly = random_loop(&mut rng, n, 5);
            let arr = match Arrangement::build(std::slice::from_ref(&poly)) {
                Ok(a) => a,
                // collinear overlaps of a random loop are not a valid input
                Err(GeomError::DegenerateContact(..)) => return Ok(()),
                Err(e) => return Err(TestCaseError::fail(format!("{e:?}"))),
            };
            let mult = vec![1; arr.edges.len()];
            let w = arr.winding_by_propagation(&mult).unwrap();
            let mut total = rat(0, 1);
            for f in 0..arr.faces.len() {
                if let Some(p) = arr.sample_point(f) {
                    prop_assert_eq!(winding_by_raycast(&poly, &p).unwrap(), w[f]);
                }
                if let Some(a) = &arr.faces[f].area {
                    total += a * rat(w[f], 1);
                }
            }
            prop_assert_eq!(total, signed_area(&poly));
            prop_assert_eq!(arr.integrate(&w), signed_area(&poly));
        }

        #[test]
        fn star_polygons_are_simple(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_star_polygon(&mut rng, 6, 5, &Pt::zero());
            let errs = crate::surface::validate_curve(
                &Curve::new(c, Deck(0, 0)), SurfaceKind::Plane, crate::surface::Which::Alpha);
            prop_assert!(errs.is_empty(), "{:?}", errs);
        }
    }

    #[test]
    fn wiggles_add_crossings_in_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let base = crate::fixtures::torus1();
        let p = random_wiggle(&mut rng, &base, 2);
        assert_eq!(p.num() % 2, 1);
        assert_eq!(p.alg(), base.alg());
        assert!(p.num() > 1);
    }
}
