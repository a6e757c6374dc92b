//! Combinatorial lunes: traces with nonnegative winding, the right corner
//! indices and the right local picture at both corners.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::geom::{Pt, Rat};
use crate::surface::{CurvePair, SurfaceKind};
use crate::trace::{all_arc_traces, Trace, TraceError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum LuneViolation {
    /// The boundary is not carried by two embedded arcs.
    ArcCondition,
    /// Some face has negative winding.
    NegativeWinding,
    /// Corner indices are not `+1` at `x` and `-1` at `y`.
    CornerIndex,
    /// A sector at a corner has winding outside `{0, 1}`.
    CornerSector,
}

/// Lists the failed conditions; empty means the trace is a lune.
pub fn lune_violations(pair: &CurvePair, trace: &Trace) -> Result<Vec<LuneViolation>, TraceError> {
    let mut out = Vec::new();
    if !trace.boundary(pair).satisfies_arc_condition() {
        out.push(LuneViolation::ArcCondition);
    }
    if trace.chain.min_value() < 0 {
        out.push(LuneViolation::NegativeWinding);
    }
    if trace.arc_indices(pair) != (1, -1) {
        out.push(LuneViolation::CornerIndex);
    }
    for p in [trace.lift_x(pair), trace.lift_y(pair)] {
        if !corner_values(pair, trace, &p)?.iter().all(|v| *v == 0 || *v == 1) {
            out.push(LuneViolation::CornerSector);
            break;
        }
    }
    Ok(out)
}

pub fn is_combinatorial_lune(pair: &CurvePair, trace: &Trace) -> Result<bool, TraceError> {
    Ok(lune_violations(pair, trace)?.is_empty())
}

/// Winding values in the four sectors at a crossing lift.
pub fn corner_values(pair: &CurvePair, trace: &Trace, p: &Pt) -> Result<[i64; 4], TraceError> {
    let (z, _) = pair
        .lift_of(p)
        .ok_or_else(|| TraceError::PointClassificationFailed(Box::new(p.clone())))?;
    let z = &pair.points[z];
    let da = pair.alpha.direction_at(&z.along_alpha);
    let db = pair.beta.direction_at(&z.along_beta);
    let arr = &trace.chain.arrangement;
    let loc = arr.locate(p);
    let mut out = [0; 4];
    for (k, d) in [&da + &db, &da - &db, -(&da + &db), &db - &da].into_iter().enumerate() {
        let f = arr
            .face_toward(&loc, &d)
            .ok_or_else(|| TraceError::PointClassificationFailed(Box::new(p.clone())))?;
        out[k] = trace.chain.values[f];
    }
    Ok(out)
}

/// A certified lune.
#[derive(Clone, Debug)]
pub struct Lune {
    pub trace: Trace,
    /// `+1` iff the alpha arc follows the orientation of alpha.
    pub sign: i64,
    pub primitive: bool,
    pub area: Rat,
}

impl Lune {
    pub fn x(&self) -> usize {
        self.trace.x
    }

    pub fn y(&self) -> usize {
        self.trace.y
    }
}

/// No crossing other than the endpoints lies on either arc.
pub fn is_primitive(pair: &CurvePair, trace: &Trace) -> bool {
    let bd = trace.boundary(pair);
    bd.alpha_support().len() == 1 && bd.beta_support().len() == 1
}

fn certify(pair: &CurvePair, trace: Trace) -> Result<Option<Lune>, TraceError> {
    let trace = if pair.surface == SurfaceKind::Sphere {
        // on the sphere w is fixed up to a constant; the constant making the
        // index 1 is the only candidate
        let mu0 = trace.maslov(pair)?;
        if (1 - mu0).rem_euclid(4) != 0 {
            return Ok(None);
        }
        trace.with_shift(pair, (1 - mu0) / 4)?
    } else {
        trace
    };
    if !is_combinatorial_lune(pair, &trace)? {
        return Ok(None);
    }
    let sign = if trace.alpha_forward() { 1 } else { -1 };
    let primitive = is_primitive(pair, &trace);
    let area = trace.area();
    Ok(Some(Lune {
        trace,
        sign,
        primitive,
        area,
    }))
}

/// All lunes from `x` to `y`.
pub fn find_lunes(pair: &CurvePair, x: usize, y: usize) -> Result<Vec<Lune>, TraceError> {
    let mut out = Vec::new();
    for t in all_arc_traces(pair, x, y)? {
        if let Some(l) = certify(pair, t)? {
            out.push(l);
        }
    }
    Ok(out)
}

/// Lunes for every ordered pair of crossings, keyed by `(x, y)`; pairs
/// without lunes are omitted.
#[derive(Clone, Debug, Default)]
pub struct LuneTable {
    pub lunes: BTreeMap<(usize, usize), Vec<Lune>>,
}

impl LuneTable {
    pub fn get(&self, x: usize, y: usize) -> &[Lune] {
        self.lunes.get(&(x, y)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Number of lunes mod 2.
    pub fn n_mod2(&self, x: usize, y: usize) -> i64 {
        (self.get(x, y).len() % 2) as i64
    }

    /// Signed count.
    pub fn n_z(&self, x: usize, y: usize) -> i64 {
        self.get(x, y).iter().map(|l| l.sign).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Lune> {
        self.lunes.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.lunes.values().map(|v| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn all_lunes(pair: &CurvePair) -> Result<LuneTable, TraceError> {
    let mut table = LuneTable::default();
    for x in 0..pair.num() {
        for y in 0..pair.num() {
            if x == y {
                continue;
            }
            let ls = find_lunes(pair, x, y)?;
            if !ls.is_empty() {
                table.lunes.insert((x, y), ls);
            }
        }
    }
    Ok(table)
}

/// Outcome of the check that a nonempty lune set contains a primitive lune.
#[derive(Clone, Debug, Serialize)]
pub struct PrimitiveReport {
    pub lunes: usize,
    pub witnesses: Vec<(usize, usize)>,
    pub holds: bool,
}

pub fn primitive_existence_check(pair: &CurvePair, table: &LuneTable) -> PrimitiveReport {
    let _ = pair;
    let witnesses: Vec<(usize, usize)> = table.iter().filter(|l| l.primitive).map(|l| (l.x(), l.y())).collect();
    PrimitiveReport {
        lunes: table.len(),
        holds: table.is_empty() || !witnesses.is_empty(),
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geom::{int, rat};
    use crate::surface::ArcSpec;
    use crate::trace::trace_from_arcs;

    #[test]
    fn torus3_has_two_lunes() {
        let pair = fixtures::torus3();
        let t = all_lunes(&pair).unwrap();
        let keys: Vec<_> = t.lunes.keys().copied().collect();
        assert_eq!(keys, vec![(0, 1), (2, 1)]);
        assert_eq!(t.get(0, 1)[0].sign, 1);
        assert_eq!(t.get(2, 1)[0].sign, -1);
        assert!(t.iter().all(|l| l.primitive));
        assert_eq!(t.get(0, 1)[0].area, rat(1, 32));
        assert_eq!(t.get(2, 1)[0].area, rat(1, 64));
        assert!(primitive_existence_check(&pair, &t).holds);
    }

    #[test]
    fn reversed_trace_violates_positivity() {
        let pair = fixtures::torus3();
        let t = trace_from_arcs(&pair, 0, 1, ArcSpec::FORWARD, ArcSpec::FORWARD)
            .unwrap()
            .unwrap();
        let r = t.reverse(&pair).unwrap();
        let v = lune_violations(&pair, &r).unwrap();
        assert!(v.contains(&LuneViolation::NegativeWinding));
        assert!(v.contains(&LuneViolation::CornerIndex));
    }

    #[test]
    fn plane_lens_and_crescents() {
        let pair = fixtures::plane();
        let t = all_lunes(&pair).unwrap();
        let lens = t.get(0, 1);
        assert_eq!(lens.len(), 1);
        assert_eq!(lens[0].area, int(4));
        assert!(lens[0].primitive);
        // the two crescents run the other way with opposite signs
        let back = t.get(1, 0);
        assert_eq!(back.len(), 2);
        assert_eq!(t.n_z(1, 0), 0);
        assert_eq!(t.n_mod2(1, 0), 0);
        assert_eq!(t.n_mod2(0, 1), 1);
    }

    #[test]
    fn sphere_outer_lune_uses_shift() {
        let pair = fixtures::sphere();
        let t = all_lunes(&pair).unwrap();
        assert_eq!(t.get(0, 1).len(), 2);
        assert_eq!(t.get(1, 0).len(), 2);
        let outer = t.get(0, 1).iter().find(|l| l.trace.shift() != 0).unwrap();
        assert_eq!(outer.trace.shift(), 1);
        assert_eq!(outer.trace.maslov(&pair).unwrap(), 1);
    }

    #[test]
    fn torus4_one_lune_each_way() {
        let pair = fixtures::torus4();
        let t = all_lunes(&pair).unwrap();
        assert_eq!(t.get(0, 1).len(), 1);
        assert_eq!(t.get(1, 0).len(), 1);
    }

    #[test]
    fn nest_outer_lune_is_not_primitive() {
        let pair = fixtures::nest();
        let t = all_lunes(&pair).unwrap();
        let mut keys: Vec<_> = t.lunes.keys().copied().collect();
        keys.sort();
        // crossings sorted along alpha: 1/8, 3/8, 1/2, 3/4, 7/8; the lunes
        // out of 7/8 are the rectangles below alpha reaching back to 3/8 and 3/4
        assert_eq!(keys, vec![(0, 1), (0, 3), (1, 2), (3, 2), (4, 1), (4, 3)]);
        assert!(!t.get(0, 3)[0].primitive);
        assert!(!t.get(4, 1)[0].primitive && !t.get(4, 3)[0].primitive);
        assert_eq!(t.get(4, 1)[0].area, rat(1, 2) * rat(3, 8));
        for (k, ls) in &t.lunes {
            assert_eq!(ls[0].primitive, *k == (1, 2) || *k == (3, 2), "{k:?}");
        }
    }

    #[test]
    fn annulus_and_straight_tori() {
        assert!(all_lunes(&fixtures::torus1()).unwrap().is_empty());
        assert!(all_lunes(&fixtures::torus2()).unwrap().is_empty());
        let ann = fixtures::annulus();
        let t = all_lunes(&ann).unwrap();
        assert_eq!(t.get(1, 0).len(), 2);
        assert_eq!(t.n_z(1, 0), 0);
        assert!(t.get(0, 1).is_empty());
    }
}
