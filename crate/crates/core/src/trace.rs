//! (alpha, beta)-traces in lifted form: two paths from a common lift of `x`
//! to a common lift of `y`, and the winding numbers of the loop `A - B`.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geom::{int, sign, Arrangement, GeomError, Location, Polyline, Pt, Rat};
use crate::surface::{arc_end, ArcSpec, Curve, CurvePair, Deck, IntersectionPoint, LiftedPath, Which};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("the lifted arcs do not share their endpoints")]
    EndpointMismatch,
    #[error("no sector structure at {0}")]
    PointClassificationFailed(Box<Pt>),
    #[error("odd trace sum {0}")]
    OddTraceSum(i64),
    #[error("the trace does not satisfy the arc condition")]
    ArcConditionRequired,
    #[error("index is not additive: {0} + {1} != {2}")]
    AdditivityViolated(i64, i64, i64),
    #[error("{0:?} is not a deck vector of this surface")]
    NotInLattice(Deck),
}

/// Winding numbers of a lifted loop on the faces of its arrangement. The
/// unbounded face carries `shift` (nonzero only on the sphere).
#[derive(Clone, Debug)]
pub struct TwoChain {
    pub arrangement: Arrangement,
    pub values: Vec<i64>,
    pub shift: i64,
}

impl TwoChain {
    pub fn value(&self, f: usize) -> i64 {
        self.values[f]
    }

    pub fn value_at(&self, p: &Pt) -> Option<i64> {
        match self.arrangement.locate(p) {
            Location::Face(f) => Some(self.values[f]),
            _ => None,
        }
    }

    pub fn min_value(&self) -> i64 {
        self.values.iter().copied().min().unwrap_or(self.shift)
    }
}

/// One period of a closed curve's parameter is folded onto `[0, n)`, so a
/// path that runs around several times becomes pieces with multiplicity.
fn coverage_pieces(curve: &Curve, path: &LiftedPath) -> Vec<(Polyline, i64)> {
    if path.from == path.to {
        return Vec::new();
    }
    let s = if path.to > path.from { 1 } else { -1 };
    let (lo, hi) = if s > 0 {
        (&path.from, &path.to)
    } else {
        (&path.to, &path.from)
    };
    let g = path.offset.to_pt();
    let shifted = |poly: Polyline| Polyline::open(poly.vertices.iter().map(|v| v + &g).collect());
    if !curve.deck.is_zero() {
        return vec![(shifted(curve.path_polyline(lo, hi)), s)];
    }
    let n = curve.period();
    let fold = |x: &Rat| x - &n * (x / &n).floor();
    let mut cuts = vec![Rat::zero(), fold(lo), fold(hi)];
    cuts.sort();
    cuts.dedup();
    cuts.push(n.clone());
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let c = count_passes(&w[0], &w[1], lo, hi, &n);
        if c > 0 {
            out.push((shifted(curve.path_polyline(&w[0], &w[1])), s * c));
        }
    }
    out
}

/// Number of integers `m` with `[a + m n, b + m n]` inside `[lo, hi]`.
fn count_passes(a: &Rat, b: &Rat, lo: &Rat, hi: &Rat, n: &Rat) -> i64 {
    let first = ((lo - a) / n).ceil().to_integer();
    let last = ((hi - b) / n).floor().to_integer();
    let c = last - first + 1i32;
    if c.is_positive() {
        num_traits::ToPrimitive::to_i64(&c).expect("small count")
    } else {
        0
    }
}

/// A lifted (alpha, beta)-trace from `x` to `y`.
#[derive(Clone, Debug)]
pub struct Trace {
    pub x: usize,
    pub y: usize,
    pub alpha: LiftedPath,
    pub beta: LiftedPath,
    pub chain: TwoChain,
}

impl Trace {
    /// Builds the trace from two lifted paths, checking that they share both
    /// endpoints.
    pub fn from_paths(
        pair: &CurvePair,
        x: usize,
        y: usize,
        alpha: LiftedPath,
        beta: LiftedPath,
        shift: i64,
    ) -> Result<Trace, TraceError> {
        if alpha.start(pair) != beta.start(pair) || alpha.end(pair) != beta.end(pair) {
            return Err(TraceError::EndpointMismatch);
        }
        let mut arcs = Vec::new();
        let mut mult = Vec::new();
        for (poly, c) in coverage_pieces(&pair.alpha, &alpha) {
            arcs.push(poly);
            mult.push(c);
        }
        for (poly, c) in coverage_pieces(&pair.beta, &beta) {
            arcs.push(poly);
            mult.push(-c);
        }
        let arrangement = Arrangement::build(&arcs)?;
        let edge_mult: Vec<i64> = arrangement.edges.iter().map(|e| mult[e.carrier.arc]).collect();
        let values = arrangement.propagate(&edge_mult, shift)?;
        Ok(Trace {
            x,
            y,
            alpha,
            beta,
            chain: TwoChain {
                arrangement,
                values,
                shift,
            },
        })
    }

    pub fn lift_x(&self, pair: &CurvePair) -> Pt {
        self.alpha.start(pair)
    }

    pub fn lift_y(&self, pair: &CurvePair) -> Pt {
        self.alpha.end(pair)
    }

    pub fn shift(&self) -> i64 {
        self.chain.shift
    }

    pub fn with_shift(&self, pair: &CurvePair, shift: i64) -> Result<Trace, TraceError> {
        Trace::from_paths(pair, self.x, self.y, self.alpha.clone(), self.beta.clone(), shift)
    }

    pub fn alpha_forward(&self) -> bool {
        self.alpha.to > self.alpha.from
    }

    pub fn beta_forward(&self) -> bool {
        self.beta.to > self.beta.from
    }

    /// Integer vector `(k, l)`: how far each path runs, in whole periods,
    /// beyond the first arrival at `y` in its own direction.
    pub fn wraps(&self, pair: &CurvePair) -> (i64, i64) {
        let w = |c: &Curve, p: &LiftedPath, target: &Rat| {
            if p.from == p.to {
                return 0;
            }
            let fwd = p.to > p.from;
            let first = arc_end(c, &p.from, target, ArcSpec::new(fwd, 0));
            let extra = if fwd { &p.to - first } else { first - &p.to };
            num_traits::ToPrimitive::to_i64(&(extra / c.period()).to_integer()).expect("small")
        };
        let y = &pair.points[self.y];
        (
            w(&pair.alpha, &self.alpha, &y.along_alpha),
            w(&pair.beta, &self.beta, &y.along_beta),
        )
    }

    /// Direction of the path leaving `x` (`outgoing`) or arriving at `y`.
    fn path_dir(pair: &CurvePair, path: &LiftedPath, outgoing: bool) -> Option<Pt> {
        if path.from == path.to {
            return None;
        }
        let curve = pair.curve(path.which);
        let at = if outgoing { &path.from } else { &path.to };
        let d = curve.direction_at(at);
        Some(if path.to > path.from { d } else { -d })
    }

    /// Intersection indices of the arcs at `x` (outgoing directions) and at
    /// `y` (incoming directions).
    pub fn arc_indices(&self, pair: &CurvePair) -> (i8, i8) {
        let at = |outgoing| match (
            Self::path_dir(pair, &self.alpha, outgoing),
            Self::path_dir(pair, &self.beta, outgoing),
        ) {
            (Some(a), Some(b)) => sign(&a.cross(&b)),
            _ => 0,
        };
        (at(true), at(false))
    }

    /// Sum of the four winding values around `p`.
    pub fn m_at(&self, pair: &CurvePair, p: &Pt) -> Result<i64, TraceError> {
        let arr = &self.chain.arrangement;
        let loc = arr.locate(p);
        let v = &self.chain.values;
        if let Some((z, _)) = pair.lift_of(p) {
            let z = &pair.points[z];
            let da = pair.alpha.direction_at(&z.along_alpha);
            let db = pair.beta.direction_at(&z.along_beta);
            let mut sum = 0;
            for d in [&da + &db, &da - &db, &db - &da, -(&da + &db)] {
                let f = arr
                    .face_toward(&loc, &d)
                    .ok_or_else(|| TraceError::PointClassificationFailed(Box::new(p.clone())))?;
                sum += v[f];
            }
            return Ok(sum);
        }
        match loc {
            Location::Face(f) => Ok(4 * v[f]),
            Location::Edge(e) => {
                let (l, r) = arr.edge_faces[e];
                Ok(2 * (v[l] + v[r]))
            }
            Location::Vertex(vx) => {
                let star = &arr.vertex_stars[vx];
                let s: i64 = star.iter().map(|&h| v[arr.half_face(h)]).sum();
                match star.len() {
                    2 => Ok(2 * s),
                    4 => Ok(s),
                    _ => Err(TraceError::PointClassificationFailed(Box::new(p.clone()))),
                }
            }
        }
    }

    /// Viterbo-Maslov index by the trace formula `(m_x + m_y) / 2`.
    pub fn maslov(&self, pair: &CurvePair) -> Result<i64, TraceError> {
        let s = self.m_at(pair, &self.lift_x(pair))? + self.m_at(pair, &self.lift_y(pair))?;
        if s % 2 != 0 {
            return Err(TraceError::OddTraceSum(s));
        }
        Ok(s / 2)
    }

    /// The index as `2 k_x + 2 k_y + (eps_x - eps_y) / 2`, where `k_x`,
    /// `k_y` are the winding values on alpha just outside `A`.
    pub fn maslov_plane_form(&self, pair: &CurvePair) -> Result<i64, TraceError> {
        if !self.boundary(pair).satisfies_arc_condition() {
            return Err(TraceError::ArcConditionRequired);
        }
        let arr = &self.chain.arrangement;
        let out_x = Self::path_dir(pair, &self.alpha, true).ok_or(TraceError::ArcConditionRequired)?;
        let in_y = Self::path_dir(pair, &self.alpha, false).ok_or(TraceError::ArcConditionRequired)?;
        let lx = self.lift_x(pair);
        let ly = self.lift_y(pair);
        let kx = arr
            .face_toward(&arr.locate(&lx), &-out_x)
            .ok_or_else(|| TraceError::PointClassificationFailed(Box::new(lx.clone())))?;
        let ky = arr
            .face_toward(&arr.locate(&ly), &in_y)
            .ok_or_else(|| TraceError::PointClassificationFailed(Box::new(ly.clone())))?;
        let (ex, ey) = self.arc_indices(pair);
        let v = &self.chain.values;
        Ok(2 * v[kx] + 2 * v[ky] + (ex as i64 - ey as i64) / 2)
    }

    /// Degrees of both paths over the elementary intervals of each curve.
    pub fn boundary(&self, pair: &CurvePair) -> TraceBoundary {
        TraceBoundary {
            x: self.x,
            y: self.y,
            alpha: interval_degrees(pair, Which::Alpha, &self.alpha),
            beta: interval_degrees(pair, Which::Beta, &self.beta),
        }
    }

    /// The same boundary read off the winding numbers: on each interval the
    /// jump of `w` across the lifted curve, summed over lifts inside the path.
    pub fn boundary_from_winding(&self, pair: &CurvePair) -> Result<TraceBoundary, TraceError> {
        let jumps = |which: Which, path: &LiftedPath| -> Result<Vec<i64>, TraceError> {
            let curve = pair.curve(which);
            let n = curve.period();
            let bps = pair.breakpoints(which);
            let arr = &self.chain.arrangement;
            let g = path.offset.to_pt();
            let (lo, hi) = if path.from <= path.to {
                (&path.from, &path.to)
            } else {
                (&path.to, &path.from)
            };
            let mut out = Vec::with_capacity(bps.len());
            for k in 0..bps.len() {
                let a = &bps[k].0;
                let b = if k + 1 < bps.len() {
                    bps[k + 1].0.clone()
                } else {
                    &bps[0].0 + &n
                };
                // sample inside one segment: a midpoint may be a corner
                let seg_end = std::cmp::min(b.clone(), a.floor() + int(1));
                let mid = (a + &seg_end) / int(2);
                let params: Vec<Rat> = if curve.deck.is_zero() {
                    vec![mid]
                } else {
                    let first = ((lo - &mid) / &n).ceil().to_integer();
                    let last = ((hi - &mid) / &n).floor().to_integer();
                    let mut ps = Vec::new();
                    let mut m = first;
                    while m <= last {
                        ps.push(&mid + &n * Rat::from_integer(m.clone()));
                        m += 1;
                    }
                    ps
                };
                let mut total = 0;
                for u in params {
                    let q = &curve.point_at(&u) + &g;
                    let d = curve.direction_at(&u);
                    let l = arr.face_toward(&arr.locate(&q), &d.perp());
                    let r = arr.face_toward(&arr.locate(&q), &-d.perp());
                    match (l, r) {
                        (Some(l), Some(r)) => total += self.chain.values[l] - self.chain.values[r],
                        _ => return Err(TraceError::PointClassificationFailed(Box::new(q))),
                    }
                }
                out.push(total);
            }
            Ok(out)
        };
        let alpha = jumps(Which::Alpha, &self.alpha)?;
        let beta = jumps(Which::Beta, &self.beta)?.into_iter().map(|v| -v).collect();
        Ok(TraceBoundary {
            x: self.x,
            y: self.y,
            alpha,
            beta,
        })
    }

    /// Integral of `w` against the area form (the bounded faces; the sphere
    /// shift is not counted).
    pub fn area(&self) -> Rat {
        let base = self.chain.shift;
        let shifted: Vec<i64> = self.chain.values.iter().map(|v| v - base).collect();
        self.chain.arrangement.integrate(&shifted)
    }

    /// `m` at `lift_x + g` plus `m` at `lift_y - g`.
    pub fn cancellation_defect(&self, pair: &CurvePair, g: Deck) -> Result<i64, TraceError> {
        if !pair.surface.in_lattice(g) {
            return Err(TraceError::NotInLattice(g));
        }
        let gp = g.to_pt();
        Ok(self.m_at(pair, &(&self.lift_x(pair) + &gp))? + self.m_at(pair, &(&self.lift_y(pair) - &gp))?)
    }

    /// The trace from `y` to `x` with `w` negated.
    pub fn reverse(&self, pair: &CurvePair) -> Result<Trace, TraceError> {
        let flip = |p: &LiftedPath| LiftedPath {
            which: p.which,
            offset: p.offset,
            from: p.to.clone(),
            to: p.from.clone(),
        };
        Trace::from_paths(pair, self.y, self.x, flip(&self.alpha), flip(&self.beta), -self.shift())
    }

    /// Catenation: `other` is translated so that it starts where `self`
    /// ends, and the paths are concatenated. Checks additivity of the index.
    pub fn catenate(&self, pair: &CurvePair, other: &Trace) -> Result<Trace, TraceError> {
        if self.y != other.x {
            return Err(TraceError::EndpointMismatch);
        }
        let join = |p1: &LiftedPath, p2: &LiftedPath| -> Result<LiftedPath, TraceError> {
            let n = pair.curve(p1.which).period();
            let gap = &p1.to - &p2.from;
            if !(&gap / &n).is_integer() {
                return Err(TraceError::EndpointMismatch);
            }
            Ok(LiftedPath {
                which: p1.which,
                offset: p1.offset,
                from: p1.from.clone(),
                to: &p1.to + (&p2.to - &p2.from),
            })
        };
        let alpha = join(&self.alpha, &other.alpha)?;
        let beta = join(&self.beta, &other.beta)?;
        let h = &self.lift_y(pair) - &other.lift_x(pair);
        if alpha.end(pair) != &other.lift_y(pair) + &h {
            return Err(TraceError::EndpointMismatch);
        }
        let t = Trace::from_paths(pair, self.x, other.y, alpha, beta, self.shift() + other.shift())?;
        let (m1, m2, m) = (self.maslov(pair)?, other.maslov(pair)?, t.maslov(pair)?);
        if m1 + m2 != m {
            return Err(TraceError::AdditivityViolated(m1, m2, m));
        }
        Ok(t)
    }

    /// Key identifying the trace up to deck translation.
    pub fn canonical_key(&self, pair: &CurvePair) -> TraceKey {
        let na = pair.alpha.period();
        let nb = pair.beta.period();
        // translate so the alpha lift is the base one, then move both
        // parameter starts into [0, n)
        let mut beta_off = self.beta.offset - self.alpha.offset;
        let ma = (&self.alpha.from / &na).floor();
        let a0 = &self.alpha.from - &na * &ma;
        let a1 = &self.alpha.to - &na * &ma;
        let ma = num_traits::ToPrimitive::to_i64(&ma.to_integer()).expect("small");
        beta_off = beta_off - pair.alpha.deck.scale(ma);
        let mb = (&self.beta.from / &nb).floor();
        let b0 = &self.beta.from - &nb * &mb;
        let b1 = &self.beta.to - &nb * &mb;
        let mb = num_traits::ToPrimitive::to_i64(&mb.to_integer()).expect("small");
        beta_off = beta_off + pair.beta.deck.scale(mb);
        TraceKey {
            x: self.x,
            y: self.y,
            alpha: (a0, a1),
            beta: (b0, b1),
            beta_offset: beta_off,
            shift: self.shift(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TraceKey {
    pub x: usize,
    pub y: usize,
    pub alpha: (Rat, Rat),
    pub beta: (Rat, Rat),
    pub beta_offset: Deck,
    pub shift: i64,
}

fn interval_degrees(pair: &CurvePair, which: Which, path: &LiftedPath) -> Vec<i64> {
    let bps = pair.breakpoints(which);
    let n = pair.curve(which).period();
    if path.from == path.to {
        return vec![0; bps.len()];
    }
    let s = if path.to > path.from { 1 } else { -1 };
    let (lo, hi) = if s > 0 {
        (&path.from, &path.to)
    } else {
        (&path.to, &path.from)
    };
    (0..bps.len())
        .map(|k| {
            let a = &bps[k].0;
            let b = if k + 1 < bps.len() {
                bps[k + 1].0.clone()
            } else {
                &bps[0].0 + &n
            };
            s * count_passes(a, &b, lo, hi, &n)
        })
        .collect()
}

/// Boundary data of a trace. Interval `k` of a curve runs from its `k`-th
/// crossing (in parameter order) to the next. `alpha` holds the degree of
/// the alpha path over each interval and `beta` the degree of the beta
/// path; the one-chain is `alpha` on alpha and `-beta` on beta.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceBoundary {
    pub x: usize,
    pub y: usize,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

fn is_arc_indicator(v: &[i64]) -> bool {
    if !v.contains(&0) {
        return false;
    }
    let nz: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
    if nz.is_empty() {
        return false;
    }
    let s = v[nz[0]];
    if s.abs() != 1 || nz.iter().any(|&i| v[i] != s) {
        return false;
    }
    // support is one cyclic run
    let n = v.len();
    let starts = (0..n).filter(|&i| v[i] != 0 && v[(i + n - 1) % n] == 0).count();
    starts == 1
}

impl TraceBoundary {
    /// `x != y` and each path is carried by one embedded arc.
    pub fn satisfies_arc_condition(&self) -> bool {
        self.x != self.y && is_arc_indicator(&self.alpha) && is_arc_indicator(&self.beta)
    }

    /// Intervals covered by the alpha arc.
    pub fn alpha_support(&self) -> Vec<usize> {
        (0..self.alpha.len()).filter(|&i| self.alpha[i] != 0).collect()
    }

    pub fn beta_support(&self) -> Vec<usize> {
        (0..self.beta.len()).filter(|&i| self.beta[i] != 0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().chain(&self.beta).all(|v| *v == 0)
    }
}

/// Lifts the chosen arcs of alpha and beta from a common lift of `x`. Returns
/// `None` when the end lifts differ (the arcs are not homotopic).
pub fn trace_from_arcs(
    pair: &CurvePair,
    x: usize,
    y: usize,
    arc_alpha: ArcSpec,
    arc_beta: ArcSpec,
) -> Result<Option<Trace>, TraceError> {
    let (px, py) = (&pair.points[x], &pair.points[y]);
    let (a, ea) = crate::surface::lift_path(pair, Which::Alpha, px, py, arc_alpha);
    let (b, eb) = crate::surface::lift_path(pair, Which::Beta, px, py, arc_beta);
    if ea != eb {
        return Ok(None);
    }
    Trace::from_paths(pair, x, y, a, b, 0).map(Some)
}

/// All traces from `x` to `y` built from zero-wrap arcs.
pub fn all_arc_traces(pair: &CurvePair, x: usize, y: usize) -> Result<Vec<Trace>, TraceError> {
    if x == y {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for fa in [true, false] {
        for fb in [true, false] {
            if let Some(t) = trace_from_arcs(pair, x, y, ArcSpec::new(fa, 0), ArcSpec::new(fb, 0))? {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// A trace from `x` to `y` in their common path-space component, if any:
/// forward arcs extended by the wrap counts that make the lifts meet.
pub fn connecting_trace(pair: &CurvePair, x: usize, y: usize) -> Result<Option<Trace>, TraceError> {
    let (px, py) = (&pair.points[x], &pair.points[y]);
    let Some((k, l)) = crate::surface::same_component(pair, px, py) else {
        return Ok(None);
    };
    let (mut a, _) = crate::surface::lift_path(pair, Which::Alpha, px, py, ArcSpec::FORWARD);
    let (mut b, _) = crate::surface::lift_path(pair, Which::Beta, px, py, ArcSpec::FORWARD);
    a.to += pair.alpha.period() * int(k);
    b.to += pair.beta.period() * int(l);
    Trace::from_paths(pair, x, y, a, b, 0).map(Some)
}

/// The constant trace at `x`.
pub fn constant_trace(pair: &CurvePair, x: usize) -> Result<Trace, TraceError> {
    let p: &IntersectionPoint = &pair.points[x];
    let a = LiftedPath {
        which: Which::Alpha,
        offset: Deck(0, 0),
        from: p.along_alpha.clone(),
        to: p.along_alpha.clone(),
    };
    let b = LiftedPath {
        which: Which::Beta,
        offset: p.beta_shift,
        from: p.along_beta.clone(),
        to: p.along_beta.clone(),
    };
    Trace::from_paths(pair, x, x, a, b, 0)
}

/// Trace with explicit arc directions and extra wraps on each curve.
pub fn trace_with_wraps(
    pair: &CurvePair,
    x: usize,
    y: usize,
    arc_alpha: ArcSpec,
    arc_beta: ArcSpec,
) -> Result<Option<Trace>, TraceError> {
    if x == y && arc_alpha.wraps == 0 && arc_beta.wraps == 0 {
        return constant_trace(pair, x).map(Some);
    }
    trace_from_arcs(pair, x, y, arc_alpha, arc_beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geom::rat;

    fn fwd() -> ArcSpec {
        ArcSpec::FORWARD
    }
    fn bwd() -> ArcSpec {
        ArcSpec::BACKWARD
    }

    #[test]
    fn torus3_lune_trace() {
        let pair = fixtures::torus3();
        let t = trace_from_arcs(&pair, 0, 1, fwd(), fwd()).unwrap().unwrap();
        let bd = t.boundary(&pair);
        assert_eq!(bd.alpha, vec![1, 0, 0]);
        assert!(bd.satisfies_arc_condition());
        assert_eq!(t.boundary_from_winding(&pair).unwrap(), bd);
        assert_eq!(t.m_at(&pair, &t.lift_x(&pair)).unwrap(), 1);
        assert_eq!(t.m_at(&pair, &t.lift_y(&pair)).unwrap(), 1);
        assert_eq!(t.maslov(&pair).unwrap(), 1);
        assert_eq!(t.maslov_plane_form(&pair).unwrap(), 1);
        assert_eq!(t.area(), rat(1, 32));
        assert_eq!(t.arc_indices(&pair), (1, -1));
        let far = &t.lift_x(&pair) + &Pt::ints(5, 3);
        assert_eq!(t.m_at(&pair, &far).unwrap(), 0);
        assert_eq!(t.cancellation_defect(&pair, Deck(1, 0)).unwrap(), 0);
    }

    #[test]
    fn torus3_backward_trace() {
        let pair = fixtures::torus3();
        let traces = all_arc_traces(&pair, 2, 1).unwrap();
        assert_eq!(traces.len(), 1);
        let t = &traces[0];
        assert!(!t.alpha_forward() && !t.beta_forward());
        assert_eq!(t.area(), rat(1, 64));
        let bd = t.boundary(&pair);
        assert_eq!(bd.alpha, vec![0, -1, 0]);
        assert!(bd.beta.iter().all(|v| *v == 0 || *v == -1));
        assert_eq!(t.boundary_from_winding(&pair).unwrap(), bd);
        assert_eq!(t.chain.values.iter().filter(|v| **v != 0).collect::<Vec<_>>(), vec![&1]);
    }

    #[test]
    fn torus1_wrap_mismatch() {
        let pair = fixtures::torus1();
        let t = trace_from_arcs(&pair, 0, 0, ArcSpec::new(true, 1), ArcSpec::new(true, 1)).unwrap();
        assert!(t.is_none());
        assert!(all_arc_traces(&pair, 0, 0).unwrap().is_empty());
    }

    #[test]
    fn plane_lens_and_reverse() {
        let pair = fixtures::plane();
        // ids: 0 = (4,2), 1 = (2,4)
        let t = trace_from_arcs(&pair, 0, 1, fwd(), bwd()).unwrap().unwrap();
        assert_eq!(t.area(), int(4));
        assert_eq!(t.m_at(&pair, &Pt::ints(4, 2)).unwrap(), 1);
        assert_eq!(t.maslov(&pair).unwrap(), 1);
        assert_eq!(t.maslov_plane_form(&pair).unwrap(), 1);
        let r = t.reverse(&pair).unwrap();
        assert_eq!(r.maslov(&pair).unwrap(), -1);
        assert_eq!(r.maslov_plane_form(&pair).unwrap(), -1);
    }

    #[test]
    fn constant_and_catenation() {
        let pair = fixtures::torus3();
        let c = constant_trace(&pair, 1).unwrap();
        assert!(c.boundary(&pair).is_zero());
        assert_eq!(c.maslov(&pair).unwrap(), 0);
        assert_eq!(c.area(), int(0));
        let l1 = trace_from_arcs(&pair, 0, 1, fwd(), fwd()).unwrap().unwrap();
        let same = l1.catenate(&pair, &c).unwrap();
        assert_eq!(same.canonical_key(&pair), l1.canonical_key(&pair));
        let l2 = trace_from_arcs(&pair, 2, 1, bwd(), bwd()).unwrap().unwrap();
        let t = l1.catenate(&pair, &l2.reverse(&pair).unwrap()).unwrap();
        assert_eq!((t.x, t.y), (0, 2));
        assert_eq!(t.maslov(&pair).unwrap(), 0);
    }

    #[test]
    fn annulus_full_wrap_has_index_zero() {
        let pair = fixtures::annulus();
        for x in 0..pair.num() {
            let t = trace_with_wraps(&pair, x, x, ArcSpec::new(true, 1), ArcSpec::new(true, 1))
                .unwrap()
                .unwrap();
            assert_eq!(t.maslov(&pair).unwrap(), 0);
            assert!(!t.boundary(&pair).satisfies_arc_condition());
            for g in -3..=3 {
                if g != 0 {
                    assert_eq!(t.cancellation_defect(&pair, Deck(g, 0)).unwrap(), 0);
                }
            }
        }
        // two half-wrap traces compose to the full wrap
        let a = trace_from_arcs(&pair, 0, 1, fwd(), fwd()).unwrap().unwrap();
        let b = trace_from_arcs(&pair, 1, 0, fwd(), fwd()).unwrap().unwrap();
        let full = a.catenate(&pair, &b).unwrap();
        assert_eq!(full.wraps(&pair), (1, 1));
        assert_eq!(full.maslov(&pair).unwrap(), 0);
    }

    #[test]
    fn extra_wrap_breaks_arc_condition() {
        let pair = fixtures::torus4();
        // beta is closed, so an extra beta wrap still matches
        let t = trace_from_arcs(&pair, 0, 1, fwd(), ArcSpec::new(true, 1))
            .unwrap()
            .unwrap();
        assert!(!t.boundary(&pair).satisfies_arc_condition());
        assert!(trace_from_arcs(&pair, 0, 1, bwd(), fwd()).unwrap().is_none());
        let t = trace_from_arcs(&pair, 0, 1, fwd(), fwd()).unwrap().unwrap();
        assert!(t.boundary(&pair).satisfies_arc_condition());
        assert_eq!(all_arc_traces(&pair, 0, 1).unwrap().len(), 2);
    }

    #[test]
    fn winding_boundary_at_corners() {
        // interval midpoints of these pairs fall on polygon corners
        for pair in [fixtures::plane(), fixtures::annulus()] {
            for x in 0..pair.num() {
                for y in 0..pair.num() {
                    if x == y {
                        continue;
                    }
                    for t in all_arc_traces(&pair, x, y).unwrap() {
                        assert_eq!(t.boundary_from_winding(&pair).unwrap(), t.boundary(&pair));
                    }
                }
            }
        }
    }
}
