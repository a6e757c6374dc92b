//! Named curve pairs used by the tests, the acceptance suite and the CLI.
//!
//! The same pairs ship as JSON under `fixtures/` in this crate.

use crate::geom::{rat, Pt};
use crate::surface::{Curve, CurvePair, Deck, SurfaceKind};

fn p(x: (i64, i64), y: (i64, i64)) -> Pt {
    Pt::new(rat(x.0, x.1), rat(y.0, y.1))
}

fn pair(surface: SurfaceKind, alpha: Curve, beta: Curve) -> CurvePair {
    CurvePair::new(surface, alpha, beta).expect("fixture is a valid pair")
}

fn horizontal(y: (i64, i64)) -> Curve {
    Curve::new(vec![p((0, 1), y)], Deck(1, 0))
}

/// Straight (1,0) against straight (0,1): one crossing.
pub fn torus1() -> CurvePair {
    pair(
        SurfaceKind::Torus,
        horizontal((1, 2)),
        Curve::new(vec![p((1, 2), (0, 1))], Deck(0, 1)),
    )
}

/// Straight (1,0) against straight (1,2): two crossings, two components.
pub fn torus2() -> CurvePair {
    pair(
        SurfaceKind::Torus,
        horizontal((1, 4)),
        Curve::new(vec![Pt::ints(0, 0)], Deck(1, 2)),
    )
}

/// The (0,1) curve of `torus1` with a wiggle adding two crossings at
/// x = 3/4 and x = 7/8.
pub fn torus3() -> CurvePair {
    pair(
        SurfaceKind::Torus,
        horizontal((1, 2)),
        Curve::new(
            vec![
                p((1, 2), (0, 1)),
                p((1, 2), (5, 8)),
                p((3, 4), (5, 8)),
                p((3, 4), (3, 8)),
                p((7, 8), (3, 8)),
                p((7, 8), (7, 8)),
            ],
            Deck(0, 1),
        ),
    )
}

/// A contractible square beta crossing the horizontal alpha twice.
pub fn torus4() -> CurvePair {
    pair(
        SurfaceKind::Torus,
        horizontal((1, 2)),
        Curve::new(
            vec![
                p((1, 4), (1, 4)),
                p((3, 4), (1, 4)),
                p((3, 4), (3, 4)),
                p((1, 4), (3, 4)),
            ],
            Deck(0, 0),
        ),
    )
}

fn offset_squares(surface: SurfaceKind) -> CurvePair {
    pair(
        surface,
        Curve::new(
            vec![Pt::ints(0, 0), Pt::ints(4, 0), Pt::ints(4, 4), Pt::ints(0, 4)],
            Deck(0, 0),
        ),
        Curve::new(
            vec![Pt::ints(2, 2), Pt::ints(6, 2), Pt::ints(6, 6), Pt::ints(2, 6)],
            Deck(0, 0),
        ),
    )
}

/// Two counterclockwise squares overlapping in `[2,4]^2`.
pub fn plane() -> CurvePair {
    offset_squares(SurfaceKind::Plane)
}

/// The squares of [`plane`] on the sphere.
pub fn sphere() -> CurvePair {
    offset_squares(SurfaceKind::Sphere)
}

/// Core circle of the annulus against a zigzag core circle.
pub fn annulus() -> CurvePair {
    pair(
        SurfaceKind::Annulus,
        Curve::new(vec![Pt::ints(0, 0)], Deck(1, 0)),
        Curve::new(vec![Pt::ints(0, 1), p((1, 2), (-1, 1))], Deck(1, 0)),
    )
}

/// A (0,1) curve crossing y = 1/2 five times, with a bigon nested inside a
/// larger one.
pub fn nest() -> CurvePair {
    pair(
        SurfaceKind::Torus,
        horizontal((1, 2)),
        Curve::new(
            vec![
                p((1, 8), (0, 1)),
                p((1, 8), (7, 8)),
                p((3, 4), (7, 8)),
                p((3, 4), (1, 4)),
                p((1, 2), (1, 4)),
                p((1, 2), (3, 4)),
                p((3, 8), (3, 4)),
                p((3, 8), (1, 8)),
                p((7, 8), (1, 8)),
                p((7, 8), (15, 16)),
            ],
            Deck(0, 1),
        ),
    )
}

/// Every named fixture with its file stem.
pub fn all() -> Vec<(&'static str, CurvePair)> {
    vec![
        ("torus1", torus1()),
        ("torus2", torus2()),
        ("torus3", torus3()),
        ("torus4", torus4()),
        ("plane", plane()),
        ("sphere", sphere()),
        ("annulus", annulus()),
        ("nest", nest()),
    ]
}
