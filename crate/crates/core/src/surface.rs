//! Surfaces, curves given by one lift plus a deck vector, hypothesis checks
//! and intersection points.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{int, seg_intersect, sign, Contact, Polyline, Pt, Rat, Segment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Plane,
    Sphere,
    Annulus,
    Torus,
}

impl SurfaceKind {
    pub fn in_lattice(&self, d: Deck) -> bool {
        match self {
            SurfaceKind::Plane | SurfaceKind::Sphere => d.is_zero(),
            SurfaceKind::Annulus => d.1 == 0,
            SurfaceKind::Torus => true,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SurfaceKind::Plane => "plane",
            SurfaceKind::Sphere => "sphere",
            SurfaceKind::Annulus => "annulus",
            SurfaceKind::Torus => "torus",
        }
    }

    /// Lattice vectors `g` for which the box `[lo, hi]` translated by `g`
    /// meets `[lo2, hi2]` (boxes closed, compared exactly).
    fn translates_meeting(&self, a: &BBox, b: &BBox) -> Vec<Deck> {
        match self {
            SurfaceKind::Plane | SurfaceKind::Sphere => vec![Deck(0, 0)],
            SurfaceKind::Annulus => {
                let (x0, x1) = shift_range(&a.x0, &a.x1, &b.x0, &b.x1);
                (x0..=x1).map(|i| Deck(i, 0)).collect()
            }
            SurfaceKind::Torus => {
                let (x0, x1) = shift_range(&a.x0, &a.x1, &b.x0, &b.x1);
                let (y0, y1) = shift_range(&a.y0, &a.y1, &b.y0, &b.y1);
                let mut out = Vec::new();
                for i in x0..=x1 {
                    for j in y0..=y1 {
                        out.push(Deck(i, j));
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Integer shifts `k` such that `[a0 + k, a1 + k]` meets `[b0, b1]`.
fn shift_range(a0: &Rat, a1: &Rat, b0: &Rat, b1: &Rat) -> (i64, i64) {
    let lo = (b0 - a1).ceil().to_integer();
    let hi = (b1 - a0).floor().to_integer();
    (lo.to_i64().unwrap_or(0), hi.to_i64().unwrap_or(-1))
}

#[derive(Clone, Debug)]
struct BBox {
    x0: Rat,
    x1: Rat,
    y0: Rat,
    y1: Rat,
}

impl BBox {
    fn of<'a>(pts: impl Iterator<Item = &'a Pt>) -> BBox {
        let mut it = pts.peekable();
        let first = it.peek().cloned().cloned().unwrap_or_else(Pt::zero);
        let mut b = BBox {
            x0: first.x.clone(),
            x1: first.x.clone(),
            y0: first.y.clone(),
            y1: first.y,
        };
        for p in it {
            if p.x < b.x0 {
                b.x0 = p.x.clone();
            }
            if p.x > b.x1 {
                b.x1 = p.x.clone();
            }
            if p.y < b.y0 {
                b.y0 = p.y.clone();
            }
            if p.y > b.y1 {
                b.y1 = p.y.clone();
            }
        }
        b
    }
}

/// A lattice vector of the deck group, in plane coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Deck(pub i64, pub i64);

impl Deck {
    pub fn is_zero(&self) -> bool {
        self.0 == 0 && self.1 == 0
    }

    pub fn to_pt(self) -> Pt {
        Pt::ints(self.0, self.1)
    }

    pub fn scale(self, k: i64) -> Deck {
        Deck(self.0 * k, self.1 * k)
    }

    pub fn det(self, other: Deck) -> i64 {
        self.0 * other.1 - self.1 * other.0
    }

    /// Lattice vector equal to `p`, if `p` has integer coordinates.
    pub fn from_pt(p: &Pt) -> Option<Deck> {
        if p.x.is_integer() && p.y.is_integer() {
            Some(Deck(p.x.to_integer().to_i64()?, p.y.to_integer().to_i64()?))
        } else {
            None
        }
    }
}

impl std::ops::Add for Deck {
    type Output = Deck;
    fn add(self, o: Deck) -> Deck {
        Deck(self.0 + o.0, self.1 + o.1)
    }
}

impl std::ops::Sub for Deck {
    type Output = Deck;
    fn sub(self, o: Deck) -> Deck {
        Deck(self.0 - o.0, self.1 - o.1)
    }
}

impl std::ops::Neg for Deck {
    type Output = Deck;
    fn neg(self) -> Deck {
        Deck(-self.0, -self.1)
    }
}

/// Selects one of the two curves of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Alpha,
    Beta,
}

/// A closed PL curve on a surface, stored as one lift.
///
/// The lifted curve is the bi-infinite polyline with vertices
/// `v_k = vertices[k mod n] + (k div n) * deck`; a real parameter `s` names
/// the point `v_i + (s - i)(v_{i+1} - v_i)` with `i = floor(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub vertices: Vec<Pt>,
    pub deck: Deck,
}

impl Curve {
    pub fn new(vertices: Vec<Pt>, deck: Deck) -> Self {
        Curve { vertices, deck }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Period of the parameter.
    pub fn period(&self) -> Rat {
        int(self.vertices.len() as i64)
    }

    pub fn lifted_vertex(&self, k: i64) -> Pt {
        let n = self.vertices.len() as i64;
        let (q, r) = k.div_mod_floor(&n);
        &self.vertices[r as usize] + &self.deck.scale(q).to_pt()
    }

    pub fn segment(&self, k: i64) -> Segment {
        Segment::new(self.lifted_vertex(k), self.lifted_vertex(k + 1))
    }

    pub fn point_at(&self, s: &Rat) -> Pt {
        let i = s.floor();
        let t = s - &i;
        let k = i.to_integer().to_i64().expect("parameter in range");
        self.lifted_vertex(k).lerp(&self.lifted_vertex(k + 1), &t)
    }

    /// Direction of the segment containing parameter `s` (taken from the
    /// segment starting at `floor(s)`).
    pub fn direction_at(&self, s: &Rat) -> Pt {
        let k = s.floor().to_integer().to_i64().expect("parameter in range");
        self.segment(k).dir()
    }

    /// Polyline traced from parameter `from` to `to` (in that order).
    pub fn path_polyline(&self, from: &Rat, to: &Rat) -> Polyline {
        let mut pts = vec![self.point_at(from)];
        if from < to {
            let mut k = from.floor() + int(1);
            while &k < to {
                pts.push(self.point_at(&k));
                k += int(1);
            }
        } else if to < from {
            let mut k = from.ceil() - int(1);
            while &k > to {
                pts.push(self.point_at(&k));
                k -= int(1);
            }
        }
        if from != to {
            pts.push(self.point_at(to));
        }
        Polyline::open(pts)
    }

    /// The closed polyline of one period (only meaningful when `deck == 0`).
    pub fn polygon(&self) -> Polyline {
        Polyline::closed(self.vertices.clone())
    }

    pub fn translate(&self, g: &Pt) -> Curve {
        Curve::new(self.vertices.iter().map(|v| v + g).collect(), self.deck)
    }

    /// Same curve with the parameter origin moved to vertex `k`.
    pub fn rotate(&self, k: usize) -> Curve {
        let n = self.vertices.len();
        let vs = (0..n).map(|i| self.lifted_vertex((k + i) as i64)).collect();
        Curve::new(vs, self.deck)
    }

    fn period_bbox(&self) -> BBox {
        let n = self.vertices.len() as i64;
        let pts: Vec<Pt> = (0..=n).map(|k| self.lifted_vertex(k)).collect();
        BBox::of(pts.iter())
    }

    /// The index `m` with `g = m * deck`, if any.
    fn deck_multiple(&self, g: Deck) -> Option<i64> {
        if self.deck.is_zero() {
            return if g.is_zero() { Some(0) } else { None };
        }
        if self.deck.det(g) != 0 {
            return None;
        }
        let (num, den) = if self.deck.0 != 0 {
            (g.0, self.deck.0)
        } else {
            (g.1, self.deck.1)
        };
        if num % den == 0 {
            Some(num / den)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("{0}: curve has too few vertices")]
    TooFewVertices(Which),
    #[error("{which}: deck vector {deck:?} is not in the lattice of the {surface}")]
    BadDeck {
        which: Which,
        deck: Deck,
        surface: SurfaceKind,
    },
    #[error("{0}: segment {1} has zero length or folds back onto its predecessor")]
    DegenerateSegment(Which, usize),
    #[error("{which}: segment {a} meets segment {b} translated by {translate:?}")]
    NotEmbedded {
        which: Which,
        a: usize,
        b: usize,
        translate: Deck,
    },
    #[error(
        "alpha segment {alpha} (translated by {translate:?}) and beta segment {beta} are not transverse: {contact}"
    )]
    NotTransverse {
        alpha: usize,
        beta: usize,
        translate: Deck,
        contact: String,
    },
    #[error("unsupported surface {0}: genus >= 2 needs a word-problem backend behind the covering-space interface")]
    Unsupported(String),
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::Alpha => "alpha",
            Which::Beta => "beta",
        })
    }
}

/// Checks lattice membership, PL regularity and embeddedness of one curve.
pub fn validate_curve(curve: &Curve, surface: SurfaceKind, which: Which) -> Vec<CurveError> {
    let mut errs = Vec::new();
    let n = curve.len();
    if n == 0 || (curve.deck.is_zero() && n < 3) {
        errs.push(CurveError::TooFewVertices(which));
        return errs;
    }
    if !surface.in_lattice(curve.deck) {
        errs.push(CurveError::BadDeck {
            which,
            deck: curve.deck,
            surface,
        });
        return errs;
    }
    for k in 0..n as i64 {
        let s = curve.segment(k);
        if s.a == s.b {
            errs.push(CurveError::DegenerateSegment(which, k as usize));
        }
    }
    if !errs.is_empty() {
        return errs;
    }
    for k in 0..n as i64 {
        let d0 = curve.segment(k - 1).dir();
        let d1 = curve.segment(k).dir();
        if d0.cross(&d1).is_zero() && d0.dot(&d1).is_negative() {
            errs.push(CurveError::DegenerateSegment(which, k as usize));
        }
    }
    if !errs.is_empty() {
        return errs;
    }

    let bb = curve.period_bbox();
    for g in surface.translates_meeting(&bb, &bb) {
        let gp = g.to_pt();
        let m = curve.deck_multiple(g);
        for i in 0..n as i64 {
            let si = curve.segment(i);
            let si = Segment::new(&si.a + &gp, &si.b + &gp);
            for j in 0..n as i64 {
                // lifted index of the translated segment, when it lies on the same line
                let same_line_gap = m.map(|m| {
                    let gap = i + m * n as i64 - j;
                    if curve.deck.is_zero() {
                        gap.rem_euclid(n as i64)
                    } else {
                        gap
                    }
                });
                if same_line_gap == Some(0) {
                    continue;
                }
                if g.is_zero() && i > j {
                    continue;
                }
                let sj = curve.segment(j);
                let contact = seg_intersect(&si, &sj);
                let adjacent = match same_line_gap {
                    Some(gap) if curve.deck.is_zero() => gap == 1 || gap == n as i64 - 1,
                    Some(gap) => gap == 1 || gap == -1,
                    None => false,
                };
                let ok = match contact {
                    Contact::Disjoint => true,
                    Contact::SharedEndpoint(_) => adjacent,
                    _ => false,
                };
                if !ok {
                    errs.push(CurveError::NotEmbedded {
                        which,
                        a: i as usize,
                        b: j as usize,
                        translate: g,
                    });
                }
            }
        }
    }
    errs.sort_by_key(|e| format!("{e:?}"));
    errs.dedup();
    errs
}

/// Hypothesis flags computed from the curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub noncontractible_alpha: bool,
    pub noncontractible_beta: bool,
    pub nonisotopic: bool,
}

impl Flags {
    pub fn all(&self) -> bool {
        self.noncontractible_alpha && self.noncontractible_beta && self.nonisotopic
    }
}

/// A transverse crossing of alpha and beta.
///
/// `pos` lies on the base lift of alpha at parameter `along_alpha`; the lift
/// of beta through `pos` is the base lift translated by `beta_shift`, where
/// `pos` has parameter `along_beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub id: usize,
    pub pos: Pt,
    pub eps: i8,
    pub along_alpha: Rat,
    pub along_beta: Rat,
    pub beta_shift: Deck,
}

/// A validated pair of curves with its crossings.
#[derive(Clone, Debug)]
pub struct CurvePair {
    pub surface: SurfaceKind,
    pub alpha: Curve,
    pub beta: Curve,
    pub flags: Flags,
    pub points: Vec<IntersectionPoint>,
}

fn compute_flags(surface: SurfaceKind, alpha: &Curve, beta: &Curve) -> Flags {
    let a = !alpha.deck.is_zero();
    let b = !beta.deck.is_zero();
    let nonisotopic = match surface {
        SurfaceKind::Torus => a && b && alpha.deck != beta.deck && alpha.deck != -beta.deck,
        SurfaceKind::Annulus => false,
        SurfaceKind::Plane | SurfaceKind::Sphere => false,
    };
    Flags {
        noncontractible_alpha: a,
        noncontractible_beta: b,
        nonisotopic,
    }
}

impl CurvePair {
    /// Validates both curves and their transversality, then computes the
    /// crossings. Errors list every violation found.
    pub fn new(surface: SurfaceKind, alpha: Curve, beta: Curve) -> Result<CurvePair, Vec<CurveError>> {
        let mut errs = validate_curve(&alpha, surface, Which::Alpha);
        errs.extend(validate_curve(&beta, surface, Which::Beta));
        if !errs.is_empty() {
            return Err(errs);
        }
        let mut points = Vec::new();
        let ba = alpha.period_bbox();
        let bb = beta.period_bbox();
        let na = alpha.len() as i64;
        let nb = beta.len() as i64;
        for g in surface.translates_meeting(&ba, &bb) {
            let gp = g.to_pt();
            for i in 0..na {
                let sa = alpha.segment(i);
                let sa_t = Segment::new(&sa.a + &gp, &sa.b + &gp);
                for j in 0..nb {
                    let sb = beta.segment(j);
                    match seg_intersect(&sa_t, &sb) {
                        Contact::Disjoint => {}
                        Contact::Crossing(p) => {
                            let ta = sa_t.param_of(&p);
                            let tb = sb.param_of(&p);
                            let eps = sign(&sa.dir().cross(&sb.dir()));
                            points.push(IntersectionPoint {
                                id: 0,
                                pos: &p - &gp,
                                eps,
                                along_alpha: int(i) + ta,
                                along_beta: int(j) + tb,
                                beta_shift: -g,
                            });
                        }
                        other => errs.push(CurveError::NotTransverse {
                            alpha: i as usize,
                            beta: j as usize,
                            translate: g,
                            contact: format!("{other:?}"),
                        }),
                    }
                }
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        points.sort_by(|a, b| a.along_alpha.cmp(&b.along_alpha).then(a.along_beta.cmp(&b.along_beta)));
        for (k, p) in points.iter_mut().enumerate() {
            p.id = k;
        }
        let flags = compute_flags(surface, &alpha, &beta);
        Ok(CurvePair {
            surface,
            alpha,
            beta,
            flags,
            points,
        })
    }

    pub fn curve(&self, which: Which) -> &Curve {
        match which {
            Which::Alpha => &self.alpha,
            Which::Beta => &self.beta,
        }
    }

    pub fn num(&self) -> usize {
        self.points.len()
    }

    pub fn alg(&self) -> i64 {
        self.points.iter().map(|p| p.eps as i64).sum()
    }

    /// Parameter of an intersection point on the given curve's base lift.
    pub fn param(&self, which: Which, p: &IntersectionPoint) -> Rat {
        match which {
            Which::Alpha => p.along_alpha.clone(),
            Which::Beta => p.along_beta.clone(),
        }
    }

    /// Offset of the lift of the given curve that passes through `p.pos`.
    pub fn offset(&self, which: Which, p: &IntersectionPoint) -> Deck {
        match which {
            Which::Alpha => Deck(0, 0),
            Which::Beta => p.beta_shift,
        }
    }

    /// Sorted parameters of all crossings along one curve, in `[0, n)`.
    pub fn breakpoints(&self, which: Which) -> Vec<(Rat, usize)> {
        let mut v: Vec<(Rat, usize)> = self.points.iter().map(|p| (self.param(which, p), p.id)).collect();
        v.sort();
        v
    }

    /// The intersection point whose lifts include `q`, together with the
    /// lattice vector `q - pos`.
    pub fn lift_of(&self, q: &Pt) -> Option<(usize, Deck)> {
        self.points.iter().find_map(|p| {
            let d = Deck::from_pt(&(q - &p.pos))?;
            self.surface.in_lattice(d).then_some((p.id, d))
        })
    }

    /// Lattice vectors `g` whose translate of the bounding box of one alpha
    /// period meets the box `[lo, hi]`.
    pub fn lattice_near(&self, pts: &[Pt]) -> Vec<Deck> {
        let a = self.alpha.period_bbox();
        let b = BBox::of(pts.iter());
        let mut merged = a.clone();
        let bb = self.beta.period_bbox();
        merged.x0 = merged.x0.clone().min(bb.x0);
        merged.y0 = merged.y0.clone().min(bb.y0);
        merged.x1 = merged.x1.clone().max(bb.x1);
        merged.y1 = merged.y1.clone().max(bb.y1);
        self.surface.translates_meeting(&merged, &b)
    }

    /// Segments of all lifts of one curve whose period box meets the
    /// bounding box of `pts`.
    pub fn segments_near(&self, which: Which, pts: &[Pt]) -> Vec<Segment> {
        let curve = self.curve(which);
        let b = BBox::of(pts.iter());
        let mut out = Vec::new();
        for g in self.surface.translates_meeting(&curve.period_bbox(), &b) {
            let gp = g.to_pt();
            for i in 0..curve.len() as i64 {
                let s = curve.segment(i);
                out.push(Segment::new(&s.a + &gp, &s.b + &gp));
            }
        }
        out
    }

    pub fn translate(&self, g: &Pt) -> Result<CurvePair, Vec<CurveError>> {
        CurvePair::new(self.surface, self.alpha.translate(g), self.beta.translate(g))
    }
}

/// Direction of travel plus extra full turns for a lifted arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcSpec {
    pub forward: bool,
    pub wraps: i64,
}

impl ArcSpec {
    pub const FORWARD: ArcSpec = ArcSpec {
        forward: true,
        wraps: 0,
    };
    pub const BACKWARD: ArcSpec = ArcSpec {
        forward: false,
        wraps: 0,
    };

    pub fn new(forward: bool, wraps: i64) -> Self {
        ArcSpec { forward, wraps }
    }
}

fn rem_period(x: &Rat, n: &Rat) -> Rat {
    x - n * (x / n).floor()
}

/// End parameter of the arc that leaves parameter `from` and first reaches
/// a parameter congruent to `target` (mod the period), then adds `wraps`
/// full periods. With `from == target` and no wraps the arc is constant.
pub fn arc_end(curve: &Curve, from: &Rat, target: &Rat, spec: ArcSpec) -> Rat {
    let n = curve.period();
    let extra = &n * int(spec.wraps);
    if spec.forward {
        from + rem_period(&(target - from), &n) + extra
    } else {
        from - rem_period(&(from - target), &n) - extra
    }
}

/// A path along a lift of one curve, given by parameters on that lift.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftedPath {
    pub which: Which,
    pub offset: Deck,
    pub from: Rat,
    pub to: Rat,
}

impl LiftedPath {
    pub fn start(&self, pair: &CurvePair) -> Pt {
        &pair.curve(self.which).point_at(&self.from) + &self.offset.to_pt()
    }

    pub fn end(&self, pair: &CurvePair) -> Pt {
        &pair.curve(self.which).point_at(&self.to) + &self.offset.to_pt()
    }

    pub fn polyline(&self, pair: &CurvePair) -> Polyline {
        let g = self.offset.to_pt();
        let p = pair.curve(self.which).path_polyline(&self.from, &self.to);
        Polyline::open(p.vertices.iter().map(|v| v + &g).collect())
    }

    pub fn is_forward(&self) -> bool {
        self.to >= self.from
    }
}

/// Lifts the arc of the selected curve from `start` to `target`.
pub fn lift_path(
    pair: &CurvePair,
    which: Which,
    start: &IntersectionPoint,
    target: &IntersectionPoint,
    spec: ArcSpec,
) -> (LiftedPath, Pt) {
    let curve = pair.curve(which);
    let from = pair.param(which, start);
    let to = arc_end(curve, &from, &pair.param(which, target), spec);
    let path = LiftedPath {
        which,
        offset: pair.offset(which, start),
        from,
        to,
    };
    let end = path.end(pair);
    (path, end)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Integers `(k, l)` with `k a - l b = d`, or `None`.
pub fn solve_lattice(a: Deck, b: Deck, d: Deck) -> Option<(i64, i64)> {
    let det = a.det(b);
    if det != 0 {
        // [a, -b] (k, l)^T = d
        let m = -det;
        let kn = d.0 * (-b.1) - (-b.0) * d.1;
        let ln = a.0 * d.1 - a.1 * d.0;
        if kn % m == 0 && ln % m == 0 {
            return Some((kn / m, ln / m));
        }
        return None;
    }
    if a.is_zero() && b.is_zero() {
        return d.is_zero().then_some((0, 0));
    }
    // a, b parallel: write everything as multiples of a primitive u
    let dir = if a.is_zero() { b } else { a };
    let g = dir.0.gcd(&dir.1);
    let u = Deck(dir.0 / g, dir.1 / g);
    let coef = |v: Deck| -> Option<i64> {
        if u.det(v) != 0 {
            return None;
        }
        Some(if u.0 != 0 { v.0 / u.0 } else { v.1 / u.1 })
    };
    let (ca, cb, cd) = (coef(a)?, coef(b)?, coef(d)?);
    // k ca - l cb = cd
    if ca == 0 {
        return (cd % cb == 0).then_some((0, -cd / cb));
    }
    if cb == 0 {
        return (cd % ca == 0).then_some((cd / ca, 0));
    }
    let (g, x, y) = ext_gcd(ca, -cb);
    if cd % g != 0 {
        return None;
    }
    let (k0, l0) = (x * (cd / g), y * (cd / g));
    // general solution k = k0 + t (cb/g'), l = l0 + t (ca/g'); pick smallest |k|
    let step_k = (-cb / g).abs();
    let step_l = ca / g * (-cb / g).signum();
    if step_k == 0 {
        return Some((k0, l0));
    }
    let t = -(k0.div_euclid(step_k));
    let (mut k, mut l) = (k0 + t * step_k, l0 + t * step_l);
    if (k - step_k).abs() < k.abs() {
        k -= step_k;
        l -= step_l;
    }
    debug_assert_eq!(k * ca - l * cb, cd);
    Some((k, l))
}

/// Decides whether `x` and `y` lie in the same component of the space of
/// paths from alpha to beta; returns the wrap counts `(k, l)` that make the
/// forward lifts of both arcs end at the same point.
pub fn same_component(pair: &CurvePair, x: &IntersectionPoint, y: &IntersectionPoint) -> Option<(i64, i64)> {
    if x.id == y.id {
        return Some((0, 0));
    }
    let (_, ea) = lift_path(pair, Which::Alpha, x, y, ArcSpec::FORWARD);
    let (_, eb) = lift_path(pair, Which::Beta, x, y, ArcSpec::FORWARD);
    let d = Deck::from_pt(&(&eb - &ea))?;
    solve_lattice(pair.alpha.deck, pair.beta.deck, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    fn p(x: (i64, i64), y: (i64, i64)) -> Pt {
        Pt::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    pub(crate) fn torus1() -> CurvePair {
        CurvePair::new(
            SurfaceKind::Torus,
            Curve::new(vec![p((0, 1), (1, 2))], Deck(1, 0)),
            Curve::new(vec![p((1, 2), (0, 1))], Deck(0, 1)),
        )
        .unwrap()
    }

    fn torus2() -> CurvePair {
        CurvePair::new(
            SurfaceKind::Torus,
            Curve::new(vec![p((0, 1), (1, 4))], Deck(1, 0)),
            Curve::new(vec![Pt::ints(0, 0)], Deck(1, 2)),
        )
        .unwrap()
    }

    #[test]
    fn torus1_single_crossing() {
        let pair = torus1();
        assert!(pair.flags.all());
        assert_eq!(pair.num(), 1);
        assert_eq!(pair.alg(), 1);
        assert_eq!(pair.points[0].pos, p((1, 2), (1, 2)));
        let x = &pair.points[0];
        let (_, end) = lift_path(&pair, Which::Alpha, x, x, ArcSpec::new(true, 1));
        assert_eq!(end, p((3, 2), (1, 2)));
    }

    #[test]
    fn torus2_crossings_and_components() {
        let pair = torus2();
        let pos: Vec<Pt> = pair.points.iter().map(|q| q.pos.clone()).collect();
        assert_eq!(pos, vec![p((1, 8), (1, 4)), p((5, 8), (1, 4))]);
        assert!(pair.points.iter().all(|q| q.eps == 1));
        assert_eq!(same_component(&pair, &pair.points[0], &pair.points[1]), None);
        assert_eq!(same_component(&pair, &pair.points[0], &pair.points[0]), Some((0, 0)));
    }

    #[test]
    fn single_curve_validation() {
        let ok = Curve::new(vec![p((0, 1), (1, 2))], Deck(1, 0));
        assert!(validate_curve(&ok, SurfaceKind::Torus, Which::Alpha).is_empty());

        let eight = Curve::new(
            vec![Pt::ints(0, 0), Pt::ints(2, 2), Pt::ints(2, 0), Pt::ints(0, 2)],
            Deck(0, 0),
        );
        let errs = validate_curve(&eight, SurfaceKind::Plane, Which::Alpha);
        assert!(matches!(errs[0], CurveError::NotEmbedded { .. }));

        // wanders right by more than a period and comes back: hits its translate
        let wander = Curve::new(
            vec![
                Pt::ints(0, 0),
                Pt::new(rat(3, 2), int(0)),
                Pt::new(rat(3, 2), rat(1, 2)),
                Pt::new(rat(1, 2), rat(1, 2)),
            ],
            Deck(1, 0),
        );
        let errs = validate_curve(&wander, SurfaceKind::Torus, Which::Beta);
        assert!(
            errs.iter().any(|e| matches!(e, CurveError::NotEmbedded { .. })),
            "{errs:?}"
        );

        let bad = Curve::new(vec![Pt::ints(0, 0)], Deck(0, 1));
        assert!(matches!(
            validate_curve(&bad, SurfaceKind::Annulus, Which::Alpha)[0],
            CurveError::BadDeck { .. }
        ));
    }

    #[test]
    fn overlapping_curves_are_not_transverse() {
        let a = Curve::new(vec![p((0, 1), (1, 2))], Deck(1, 0));
        let r = CurvePair::new(SurfaceKind::Torus, a.clone(), a);
        assert!(matches!(r.unwrap_err()[0], CurveError::NotTransverse { .. }));
    }

    #[test]
    fn plane_squares_signs() {
        let a = Curve::new(
            vec![Pt::ints(0, 0), Pt::ints(4, 0), Pt::ints(4, 4), Pt::ints(0, 4)],
            Deck(0, 0),
        );
        let b = Curve::new(
            vec![Pt::ints(2, 2), Pt::ints(6, 2), Pt::ints(6, 6), Pt::ints(2, 6)],
            Deck(0, 0),
        );
        let pair = CurvePair::new(SurfaceKind::Plane, a, b).unwrap();
        let got: Vec<(Pt, i8)> = pair.points.iter().map(|q| (q.pos.clone(), q.eps)).collect();
        assert_eq!(got, vec![(Pt::ints(4, 2), -1), (Pt::ints(2, 4), 1)]);
        assert_eq!(pair.alg(), 0);
        assert!(!pair.flags.noncontractible_alpha);
    }

    #[test]
    fn lattice_solver() {
        assert_eq!(solve_lattice(Deck(1, 0), Deck(0, 1), Deck(2, -3)), Some((2, 3)));
        assert_eq!(solve_lattice(Deck(1, 0), Deck(1, 2), Deck(0, 1)), None);
        let (k, l) = solve_lattice(Deck(1, 0), Deck(1, 0), Deck(1, 0)).unwrap();
        assert_eq!(k - l, 1);
        let (k, l) = solve_lattice(Deck(1, 0), Deck(-1, 0), Deck(3, 0)).unwrap();
        assert_eq!(k + l, 3);
        assert_eq!(solve_lattice(Deck(0, 0), Deck(0, 0), Deck(0, 0)), Some((0, 0)));
        assert_eq!(solve_lattice(Deck(0, 0), Deck(0, 1), Deck(0, 2)), Some((0, -2)));
    }

    #[test]
    fn arc_end_rules() {
        let c = Curve::new(vec![Pt::ints(0, 0), Pt::ints(1, 0), Pt::ints(1, 1)], Deck(0, 1));
        let n3 = int(3);
        assert_eq!(arc_end(&c, &rat(1, 2), &rat(5, 2), ArcSpec::FORWARD), rat(5, 2));
        assert_eq!(arc_end(&c, &rat(1, 2), &rat(5, 2), ArcSpec::BACKWARD), rat(-1, 2));
        assert_eq!(arc_end(&c, &rat(1, 2), &rat(1, 2), ArcSpec::FORWARD), rat(1, 2));
        assert_eq!(
            arc_end(&c, &rat(1, 2), &rat(1, 2), ArcSpec::new(true, 1)),
            rat(1, 2) + n3
        );
    }
}
