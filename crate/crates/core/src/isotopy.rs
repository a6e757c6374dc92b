//! Isotopy moves on beta that cancel or create a pair of crossings, and
//! checks of the deformation formula for the boundary operator.
//!
//! Moves are exact PL rewrites: a cancelled lune's beta arc is rerouted along
//! an offset copy of its alpha arc on the far side of alpha, and a created
//! pair is a thin three-segment finger pushed across alpha.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::floer::{build_complex, Coeff, FloerComplex, FloerError};
use crate::geom::{int, rat, seg_intersect, Contact, Degeneracy, Pt, Rat, Segment};
use crate::lune::Lune;
use crate::reduction;
use crate::surface::{Curve, CurvePair, SurfaceKind, Which};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum IsotopyError {
    #[error("the lune from {0} to {1} is not primitive")]
    NotPrimitive(usize, usize),
    #[error("no clearance found: {0}")]
    ClearanceFailure(String),
    #[error("finger path obstructed: {0}")]
    PathObstructed(String),
    #[error("invalid anchor: {0}")]
    InvalidAnchor(String),
    #[error("unsupported move: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Floer(#[from] FloerError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    Cancel { x: usize, y: usize },
    Create { anchor: String, target: String },
}

/// A move together with the crossing bijection `before -> after` (`None`
/// for the cancelled pair) and the ids of crossings created by the move.
#[derive(Clone, Debug)]
pub struct IsotopyMove {
    pub kind: MoveKind,
    pub before: CurvePair,
    pub after: CurvePair,
    pub bijection: Vec<Option<usize>>,
    pub created: Vec<usize>,
}

/// Smallest clearance tried is `2^-MAX_HALVINGS`.
const MAX_HALVINGS: i64 = 40;

fn pow2_inv(k: i64) -> Rat {
    rat(1, 1i64 << k)
}

fn linf(d: &Pt) -> Rat {
    let (a, b) = (d.x.abs(), d.y.abs());
    if a > b {
        a
    } else {
        b
    }
}

/// Point where the lines `p + t d` and `q + s e` meet, with `t`.
fn line_meet(p: &Pt, d: &Pt, q: &Pt, e: &Pt) -> Option<(Pt, Rat)> {
    let den = d.cross(e);
    if den.is_zero() {
        return None;
    }
    let t = (q - p).cross(e) / den;
    Some((p + &d.scale(&t), t))
}

fn drop_collinear(pts: Vec<Pt>) -> Vec<Pt> {
    let mut out: Vec<Pt> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last() == Some(&p) {
            continue;
        }
        if out.len() >= 2 {
            let a = &out[out.len() - 2];
            let b = &out[out.len() - 1];
            if (b - a).cross(&(&p - b)).is_zero() && (b - a).dot(&(&p - b)).is_positive() {
                out.pop();
            }
        }
        out.push(p);
    }
    out
}

/// Matches every crossing of `before` outside `skip` to the crossing of
/// `after` at the same position; `None` unless all of them match.
fn match_crossings(before: &CurvePair, after: &CurvePair, skip: &[usize]) -> Option<Vec<Option<usize>>> {
    let mut used = vec![false; after.num()];
    let mut out = Vec::with_capacity(before.num());
    for p in &before.points {
        if skip.contains(&p.id) {
            out.push(None);
            continue;
        }
        let q = after.points.iter().find(|q| q.pos == p.pos && q.eps == p.eps)?;
        if used[q.id] {
            return None;
        }
        used[q.id] = true;
        out.push(Some(q.id));
    }
    Some(out)
}

/// Removes the two corners of a primitive lune by pushing its beta arc
/// across the alpha arc.
pub fn cancel_pair(pair: &CurvePair, lune: &Lune) -> Result<IsotopyMove, IsotopyError> {
    let (x, y) = (lune.x(), lune.y());
    if !lune.primitive {
        return Err(IsotopyError::NotPrimitive(x, y));
    }
    let tr = &lune.trace;
    if tr.shift() != 0 {
        return Err(IsotopyError::Unsupported(
            "the lune contains the point at infinity".into(),
        ));
    }
    let a = drop_collinear(tr.alpha.polyline(pair).vertices);
    let beta = &pair.beta;
    let n = beta.period();
    let fwd = tr.beta.is_forward();
    let (end, deck) = if fwd {
        (&tr.beta.from + &n, beta.deck)
    } else {
        (&tr.beta.from - &n, -beta.deck)
    };
    let o = tr.beta.offset.to_pt();
    let dpt = deck.to_pt();
    // the rest of beta, from the lift of y around to the next lift of x
    let c: Vec<Pt> = beta
        .path_polyline(&tr.beta.to, &end)
        .vertices
        .iter()
        .map(|v| v + &o)
        .collect();
    let m = c.len() - 1;

    // the lune lies on one side of its alpha arc; push to the other
    let d0 = &a[1] - &a[0];
    let mid = a[0].lerp(&a[1], &rat(1, 2));
    let arr = &tr.chain.arrangement;
    let loc = arr.locate(&mid);
    let side = |dir: &Pt| arr.face_toward(&loc, dir).map(|f| tr.chain.values[f]);
    let (l, r) = (side(&d0.perp()), side(&-d0.perp()));
    let far = match (l, r) {
        (Some(l), Some(r)) if l > r => -1,
        (Some(l), Some(r)) if l < r => 1,
        _ => {
            return Err(IsotopyError::ClearanceFailure(
                "cannot tell the sides of the lune".into(),
            ))
        }
    };
    let dirs: Vec<Pt> = a.windows(2).map(|w| &w[1] - &w[0]).collect();
    let normals: Vec<Pt> = dirs.iter().map(|d| d.perp().scale(&(int(far) / linf(d)))).collect();
    let k = dirs.len();

    for h in 2..=MAX_HALVINGS {
        let delta = pow2_inv(h);
        let base: Vec<Pt> = (0..k).map(|i| &a[i] + &normals[i].scale(&delta)).collect();
        let mut corners = Vec::with_capacity(k.saturating_sub(1));
        for i in 0..k - 1 {
            match line_meet(&base[i], &dirs[i], &base[i + 1], &dirs[i + 1]) {
                Some((p, _)) => corners.push(p),
                None => return Err(IsotopyError::ClearanceFailure("degenerate alpha arc".into())),
            }
        }
        let c0 = &c[1] - &c[0];
        let Some((b_y, t_y)) = line_meet(&c[0], &c0, &base[k - 1], &dirs[k - 1]) else {
            continue;
        };
        let cl = &c[m] - &c[m - 1];
        let Some((b_x, t_x)) = line_meet(&c[m - 1], &cl, &(&base[0] + &dpt), &dirs[0]) else {
            continue;
        };
        let inside = |t: &Rat| t.is_positive() && t < &Rat::one();
        if !inside(&t_y) || !inside(&t_x) || (m == 1 && t_y >= t_x) {
            continue;
        }
        let mut loop_pts = vec![b_y];
        loop_pts.extend(c[1..m].iter().cloned());
        loop_pts.push(b_x);
        loop_pts.extend(corners.iter().map(|p| p + &dpt));
        if !fwd {
            loop_pts.reverse();
        }
        let verts: Vec<Pt> = drop_collinear(loop_pts).iter().map(|p| p - &o).collect();
        let Ok(after) = CurvePair::new(pair.surface, pair.alpha.clone(), Curve::new(verts, beta.deck)) else {
            continue;
        };
        if after.num() + 2 != pair.num() {
            continue;
        }
        if let Some(bijection) = match_crossings(pair, &after, &[x, y]) {
            return Ok(IsotopyMove {
                kind: MoveKind::Cancel { x, y },
                before: pair.clone(),
                after,
                bijection,
                created: Vec::new(),
            });
        }
    }
    Err(IsotopyError::ClearanceFailure(format!(
        "no offset down to 2^-{MAX_HALVINGS} clears the curves"
    )))
}

fn round(r: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    (r + rat(1, 2)).floor().to_integer().to_i64().unwrap_or(0)
}

/// Pushes a finger from the point of beta at parameter `anchor` straight
/// to the point of alpha at parameter `target` (nearest lift) and just
/// across it, creating two crossings.
pub fn create_pair(pair: &CurvePair, anchor: &Rat, target: &Rat) -> Result<IsotopyMove, IsotopyError> {
    let beta = &pair.beta;
    let alpha = &pair.alpha;
    let frac = anchor - anchor.floor();
    if anchor.is_negative() || anchor >= &beta.period() || frac.is_zero() {
        return Err(IsotopyError::InvalidAnchor(format!(
            "beta parameter {anchor} must lie inside a segment of [0, {})",
            beta.len()
        )));
    }
    if (target - target.floor()).is_zero() {
        return Err(IsotopyError::InvalidAnchor(format!(
            "alpha parameter {target} must lie inside a segment"
        )));
    }
    let seg_k = {
        use num_traits::ToPrimitive;
        anchor.floor().to_integer().to_usize().expect("anchor in range")
    };
    let p = beta.point_at(anchor);
    let q0 = alpha.point_at(target);
    let diff = &p - &q0;
    let g = match pair.surface {
        SurfaceKind::Torus => Pt::ints(round(&diff.x), round(&diff.y)),
        SurfaceKind::Annulus => Pt::ints(round(&diff.x), 0),
        SurfaceKind::Plane | SurfaceKind::Sphere => Pt::zero(),
    };
    let q = &q0 + &g;
    let u = beta.direction_at(anchor);
    let v = &q - &p;
    if u.cross(&v).is_zero() {
        return Err(IsotopyError::PathObstructed("the finger runs along beta".into()));
    }
    let path = Segment::new(p.clone(), q.clone());
    for which in [Which::Alpha, Which::Beta] {
        let allowed = if which == Which::Alpha { &q } else { &p };
        for s in pair.segments_near(which, &[p.clone(), q.clone()]) {
            match seg_intersect(&path, &s) {
                Contact::Disjoint => {}
                Contact::Degenerate(Degeneracy::Touch(t)) if &t == allowed => {}
                other => {
                    return Err(IsotopyError::PathObstructed(format!(
                        "segment {}-{} meets {} at {:?}",
                        p,
                        q,
                        match which {
                            Which::Alpha => "alpha",
                            Which::Beta => "beta",
                        },
                        other
                    )))
                }
            }
        }
    }
    let seg_len = linf(&u);
    for h in 2..=MAX_HALVINGS {
        let e = pow2_inv(h);
        // half width as a fraction of the beta segment
        let w = &e / &seg_len;
        if &frac - &w <= Rat::zero() || &frac + &w >= Rat::one() {
            continue;
        }
        let p1 = &p - &u.scale(&w);
        let p2 = &p + &u.scale(&w);
        let reach = v.scale(&(Rat::one() + &e));
        let t1 = &p1 + &reach;
        let t2 = &p2 + &reach;
        let mut verts = beta.vertices[..=seg_k].to_vec();
        verts.extend([p1, t1, t2, p2]);
        verts.extend(beta.vertices[seg_k + 1..].iter().cloned());
        let Ok(after) = CurvePair::new(pair.surface, alpha.clone(), Curve::new(verts, beta.deck)) else {
            continue;
        };
        if after.num() != pair.num() + 2 {
            continue;
        }
        if let Some(bijection) = match_crossings(pair, &after, &[]) {
            let hit: Vec<usize> = bijection.iter().flatten().copied().collect();
            let created = (0..after.num()).filter(|i| !hit.contains(i)).collect();
            return Ok(IsotopyMove {
                kind: MoveKind::Create {
                    anchor: anchor.to_string(),
                    target: target.to_string(),
                },
                before: pair.clone(),
                after,
                bijection,
                created,
            });
        }
    }
    Err(IsotopyError::ClearanceFailure(format!(
        "no finger width down to 2^-{MAX_HALVINGS} gives a clean pair of crossings"
    )))
}

/// Comparison of the boundary operators before and after cancelling the
/// crossings `x`, `y`.
#[derive(Clone, Debug, Serialize)]
pub struct MoveReport {
    pub x: usize,
    pub y: usize,
    /// `n(x, y) = 1` mod 2.
    pub precondition: bool,
    /// Survivor pairs `(x', y')` (ids before the move) where the formula fails.
    pub failures: Vec<(usize, usize)>,
    pub hf_before: Option<usize>,
    pub hf_after: Option<usize>,
    /// Both pairs satisfy all hypotheses, so the dimensions must agree.
    pub hypotheses: bool,
    /// Reducing the exported complex at `(y, x)` gives the new differential.
    pub reduction_matches: bool,
    pub holds: bool,
}

fn hf_dim(fc: &FloerComplex) -> Option<usize> {
    fc.homology().ok().map(|h| h.dim)
}

/// Checks `n'(x', y') = n(x', y') + n(x', y) n(x, y')` mod 2 for all
/// survivors, homology dimensions, and agreement with the algebraic
/// reduction. `bijection` maps crossings of `before` to `after`.
pub fn verify_move(
    before: &CurvePair,
    after: &CurvePair,
    x: usize,
    y: usize,
    bijection: &[Option<usize>],
) -> Result<MoveReport, IsotopyError> {
    let fb = build_complex(before, Coeff::F2)?;
    let fa = build_complex(after, Coeff::F2)?;
    let n = &fb.differential;
    let n2 = &fa.differential;
    let m2 = |v: i64| v.rem_euclid(2);
    let precondition = m2(n[x][y]) == 1;
    let survivors: Vec<usize> = (0..before.num()).filter(|&i| bijection[i].is_some()).collect();
    let mut failures = Vec::new();
    for &a in &survivors {
        for &b in &survivors {
            let expect = m2(n[a][b] + n[a][y] * n[x][b]);
            let got = m2(n2[bijection[a].unwrap()][bijection[b].unwrap()]);
            if expect != got {
                failures.push((a, b));
            }
        }
    }
    let reduction_matches = match reduction::export(&fb).reduce(y, x) {
        Ok(cc) => survivors.iter().enumerate().all(|(i, &a)| {
            survivors
                .iter()
                .enumerate()
                .all(|(j, &b)| m2(cc.nu[i][j]) == m2(n2[bijection[a].unwrap()][bijection[b].unwrap()]))
        }),
        Err(_) => false,
    };
    let (hf_before, hf_after) = (hf_dim(&fb), hf_dim(&fa));
    let hypotheses = before.flags.all() && after.flags.all();
    let hf_ok = !hypotheses || (hf_before.is_some() && hf_before == hf_after);
    Ok(MoveReport {
        x,
        y,
        precondition,
        holds: precondition && failures.is_empty() && reduction_matches && hf_ok,
        failures,
        hf_before,
        hf_after,
        hypotheses,
        reduction_matches,
    })
}

/// Verifies a move in whichever direction it goes: a creation is checked
/// as the cancellation that undoes it.
pub fn verify(mv: &IsotopyMove) -> Result<MoveReport, IsotopyError> {
    match &mv.kind {
        MoveKind::Cancel { x, y } => verify_move(&mv.before, &mv.after, *x, *y, &mv.bijection),
        MoveKind::Create { .. } => {
            let (x, y) = finger_pair(mv)?;
            let mut inverse = vec![None; mv.after.num()];
            for (old, new) in mv.bijection.iter().enumerate() {
                if let Some(new) = new {
                    inverse[*new] = Some(old);
                }
            }
            verify_move(&mv.after, &mv.before, x, y, &inverse)
        }
    }
}

/// Start and end of the odd lune count between the two created crossings.
fn finger_pair(mv: &IsotopyMove) -> Result<(usize, usize), IsotopyError> {
    let fc = build_complex(&mv.after, Coeff::F2)?;
    let (a, b) = (mv.created[0], mv.created[1]);
    if fc.differential[a][b].rem_euclid(2) == 1 {
        Ok((a, b))
    } else {
        Ok((b, a))
    }
}

/// A primitive lune from `x` to `y` in `fc`, if any.
pub fn primitive_lune(fc: &FloerComplex, x: usize, y: usize) -> Option<&Lune> {
    fc.lunes.get(x, y).iter().find(|l| l.primitive)
}

/// Primitive lunes `x -> y` with `n(x, y)` odd: the cancellable pairs.
pub fn cancellable(fc: &FloerComplex) -> Vec<(usize, usize)> {
    fc.lunes
        .lunes
        .keys()
        .copied()
        .filter(|&(x, y)| fc.lunes.n_mod2(x, y) == 1 && primitive_lune(fc, x, y).is_some())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NoluneReport {
    pub instances: usize,
    pub violations: Vec<[usize; 4]>,
    pub holds: bool,
}

/// For distinct `x, y, x', y'` with `n(x,y) = n(x',y) = n(x,y') = 1` and a
/// primitive lune from `x` to `y`, there must be no lune from `x'` to `y'`.
pub fn nolune_check(pair: &CurvePair) -> Result<NoluneReport, IsotopyError> {
    let fc = build_complex(pair, Coeff::F2)?;
    let n = &fc.differential;
    let k = pair.num();
    let one = |a: usize, b: usize| n[a][b].rem_euclid(2) == 1;
    let mut instances = 0;
    let mut violations = Vec::new();
    for x in 0..k {
        for y in 0..k {
            if x == y || !one(x, y) || primitive_lune(&fc, x, y).is_none() {
                continue;
            }
            for xp in 0..k {
                if xp == x || xp == y || !one(xp, y) {
                    continue;
                }
                for yp in 0..k {
                    if yp == x || yp == y || yp == xp || !one(x, yp) {
                        continue;
                    }
                    instances += 1;
                    if one(xp, yp) {
                        violations.push([x, y, xp, yp]);
                    }
                }
            }
        }
    }
    Ok(NoluneReport {
        instances,
        holds: violations.is_empty(),
        violations,
    })
}

/// A random dyadic parameter strictly inside a random segment.
pub fn random_param<R: Rng>(rng: &mut R, curve: &Curve) -> Rat {
    let k = rng.gen_range(0..curve.len() as i64);
    int(k) + rat(rng.gen_range(1..16), 16)
}

/// Tries random anchors and targets until a finger can be created.
pub fn random_create<R: Rng>(rng: &mut R, pair: &CurvePair, attempts: usize) -> Option<IsotopyMove> {
    (0..attempts).find_map(|_| {
        let a = random_param(rng, &pair.beta);
        let t = random_param(rng, &pair.alpha);
        create_pair(pair, &a, &t).ok()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub kind: MoveKind,
    pub crossings_before: usize,
    pub crossings_after: usize,
    pub report: MoveReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScheduleReport {
    pub steps: Vec<StepReport>,
    /// Differential (mod 2) of the start and end pair agree under the
    /// composed crossing bijection, when every crossing survives.
    pub restored: Option<bool>,
    pub holds: bool,
}

fn compose(a: &[Option<usize>], b: &[Option<usize>]) -> Vec<Option<usize>> {
    a.iter().map(|i| i.and_then(|i| b[i])).collect()
}

/// Runs a sequence of moves, verifying each one. With `round_trip` every
/// step creates a finger and the next cancels it; otherwise each step
/// cancels a random cancellable lune, or creates a finger when none exists.
pub fn random_schedule<R: Rng>(
    rng: &mut R,
    start: &CurvePair,
    steps: usize,
    round_trip: bool,
) -> Result<ScheduleReport, IsotopyError> {
    let mut pair = start.clone();
    let mut track: Vec<Option<usize>> = (0..start.num()).map(Some).collect();
    let mut reports = Vec::new();
    let mut pending: Option<(usize, usize)> = None;
    for _ in 0..steps {
        let fc = build_complex(&pair, Coeff::F2)?;
        let mv = match pending.take() {
            Some((x, y)) => {
                let lune = primitive_lune(&fc, x, y)
                    .ok_or_else(|| IsotopyError::Unsupported("created finger has no primitive lune".into()))?;
                cancel_pair(&pair, lune)?
            }
            None => {
                let options = if round_trip { Vec::new() } else { cancellable(&fc) };
                if options.is_empty() {
                    match random_create(rng, &pair, 64) {
                        Some(mv) => mv,
                        None => break,
                    }
                } else {
                    let (x, y) = options[rng.gen_range(0..options.len())];
                    cancel_pair(&pair, primitive_lune(&fc, x, y).expect("listed as cancellable"))?
                }
            }
        };
        let report = verify(&mv)?;
        if round_trip && matches!(mv.kind, MoveKind::Create { .. }) {
            pending = Some((report.x, report.y));
        }
        track = compose(&track, &mv.bijection);
        reports.push(StepReport {
            kind: mv.kind.clone(),
            crossings_before: mv.before.num(),
            crossings_after: mv.after.num(),
            report,
        });
        pair = mv.after;
    }
    let restored =
        if track.iter().all(|t| t.is_some()) && pair.num() == start.num() {
            let a = build_complex(start, Coeff::F2)?.differential;
            let b = build_complex(&pair, Coeff::F2)?.differential;
            let k = start.num();
            Some((0..k).all(|i| {
                (0..k).all(|j| a[i][j].rem_euclid(2) == b[track[i].unwrap()][track[j].unwrap()].rem_euclid(2))
            }))
        } else {
            None
        };
    Ok(ScheduleReport {
        holds: reports.iter().all(|s| s.report.holds) && restored != Some(false),
        steps: reports,
        restored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lune::all_lunes;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cancel_torus3_lune() {
        let pair = fixtures::torus3();
        let t = all_lunes(&pair).unwrap();
        let mv = cancel_pair(&pair, &t.get(0, 1)[0]).unwrap();
        assert_eq!(mv.after.num(), 1);
        assert_eq!(mv.after.alg(), pair.alg());
        assert_eq!(mv.bijection, vec![None, None, Some(0)]);
        let r = verify(&mv).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!((r.hf_before, r.hf_after), (Some(1), Some(1)));
    }

    #[test]
    fn cancel_plane_lens() {
        let pair = fixtures::plane();
        let t = all_lunes(&pair).unwrap();
        let mv = cancel_pair(&pair, &t.get(0, 1)[0]).unwrap();
        assert_eq!(mv.after.num(), 0);
        let r = verify(&mv).unwrap();
        assert!(r.holds);
        assert_eq!((r.hf_before, r.hf_after), (Some(0), Some(0)));
        // a finger back across alpha restores two crossings
        let back = random_create(&mut ChaCha8Rng::seed_from_u64(1), &mv.after, 200).unwrap();
        assert_eq!(back.after.num(), 2);
    }

    #[test]
    fn non_primitive_lune_is_refused() {
        let pair = fixtures::nest();
        let t = all_lunes(&pair).unwrap();
        assert_eq!(
            cancel_pair(&pair, &t.get(0, 3)[0]).unwrap_err(),
            IsotopyError::NotPrimitive(0, 3)
        );
    }

    #[test]
    fn finger_on_torus1_matches_torus3() {
        let pair = fixtures::torus1();
        // beta is x = 1/2 going up; push from (1/2, 1/4) to (1/4, 1/2)
        let mv = create_pair(&pair, &rat(1, 4), &rat(1, 4)).unwrap();
        let after = &mv.after;
        assert_eq!(after.num(), 3);
        assert_eq!(mv.created.len(), 2);
        let eps: Vec<i8> = after.points.iter().map(|p| p.eps).collect();
        assert_eq!(eps.iter().map(|&e| e as i64).sum::<i64>(), 1);
        let fc = build_complex(after, Coeff::F2).unwrap();
        assert_eq!(fc.lunes.len(), 2);
        assert_eq!(fc.homology().unwrap().dim, 1);
        assert!(verify(&mv).unwrap().holds);
    }

    #[test]
    fn obstructed_finger() {
        let pair = fixtures::torus3();
        // from the left leg of beta at y = 1/4 across the wiggle to x = 0.8
        let e = create_pair(&pair, &rat(1, 4), &rat(13, 16)).unwrap_err();
        assert!(matches!(e, IsotopyError::PathObstructed(_)), "{e:?}");
    }

    #[test]
    fn nolune_on_fixtures() {
        for (name, pair) in fixtures::all() {
            let r = nolune_check(&pair).unwrap();
            assert!(r.holds, "{name}: {r:?}");
        }
        assert_eq!(nolune_check(&fixtures::torus1()).unwrap().instances, 0);
    }

    #[test]
    fn random_round_trips_restore_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for pair in [fixtures::torus1(), fixtures::torus3()] {
            let r = random_schedule(&mut rng, &pair, 4, true).unwrap();
            assert!(r.holds, "{r:?}");
            assert_eq!(r.restored, Some(true));
        }
    }
}
