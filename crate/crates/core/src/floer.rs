//! The Floer chain complex of a curve pair, broken hearts, homology and the
//! intersection-number checks.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::geom::Rat;
use crate::linalg::{self, Matrix};
use crate::lune::{all_lunes, Lune, LuneTable};
use crate::surface::{same_component, CurvePair, Flags, SurfaceKind};
use crate::trace::{connecting_trace, Trace, TraceError, TraceKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coeff {
    F2,
    Z,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FloerError {
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error("the differential does not square to zero")]
    NotAComplex,
    #[error("the differential squares to a nonzero map although all hypotheses hold")]
    TheoremViolated,
    #[error("heart {0}->{1}->{2} matches {3} of the four alternatives")]
    ClassificationFailed(usize, usize, usize, usize),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Generators, differential and gradings.
///
/// `differential[x][y]` is the coefficient of `y` in `dx`: the number of
/// lunes from `x` to `y`, mod 2 or signed.
#[derive(Clone, Debug)]
pub struct FloerComplex {
    pub coeff: Coeff,
    pub generators: usize,
    pub eps: Vec<i8>,
    pub differential: Matrix,
    /// 0 for positive crossings, 1 for negative ones.
    pub mod2_grade: Vec<u8>,
    /// Path-space component of every generator (ids of component roots).
    pub components: Vec<usize>,
    pub rel_grade: Vec<i64>,
    /// False when the gradings read off lunes and connecting traces disagree.
    pub grading_consistent: bool,
    pub flags: Flags,
    pub lunes: LuneTable,
}

fn component_partition(pair: &CurvePair) -> Vec<usize> {
    let n = pair.num();
    let mut comp: Vec<usize> = (0..n).collect();
    for x in 0..n {
        if comp[x] != x {
            continue;
        }
        for y in x + 1..n {
            if comp[y] == y && same_component(pair, &pair.points[x], &pair.points[y]).is_some() {
                comp[y] = x;
            }
        }
    }
    comp
}

/// Relative grading with `grade(x) - grade(y) = 1` across nonzero entries
/// and `grade(x) - grade(y) = mu` along connecting traces elsewhere.
fn relative_grading(pair: &CurvePair, diff: &Matrix, comp: &[usize]) -> Result<(Vec<i64>, bool), FloerError> {
    let n = pair.num();
    let mut grade: Vec<Option<i64>> = vec![None; n];
    let mut consistent = true;
    for start in 0..n {
        if grade[start].is_some() {
            continue;
        }
        let root = comp[start];
        grade[start] = Some(if start == root {
            0
        } else {
            let t = connecting_trace(pair, root, start)?.expect("same component");
            grade[root].expect("root graded first") - t.maslov(pair)?
        });
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let gx = grade[x].expect("queued");
            for y in 0..n {
                let expect = if diff[x][y] != 0 {
                    gx - 1
                } else if diff[y][x] != 0 {
                    gx + 1
                } else {
                    continue;
                };
                match grade[y] {
                    None => {
                        grade[y] = Some(expect);
                        queue.push_back(y);
                    }
                    Some(g) if g != expect => consistent = false,
                    Some(_) => {}
                }
            }
        }
    }
    let mut grade: Vec<i64> = grade.into_iter().map(|g| g.expect("all graded")).collect();
    let mut mins: BTreeMap<usize, i64> = BTreeMap::new();
    for x in 0..n {
        let m = mins.entry(comp[x]).or_insert(grade[x]);
        *m = (*m).min(grade[x]);
    }
    for x in 0..n {
        grade[x] -= mins[&comp[x]];
    }
    Ok((grade, consistent))
}

pub fn build_complex(pair: &CurvePair, coeff: Coeff) -> Result<FloerComplex, FloerError> {
    let lunes = all_lunes(pair)?;
    build_from_lunes(pair, coeff, lunes)
}

pub fn build_from_lunes(pair: &CurvePair, coeff: Coeff, lunes: LuneTable) -> Result<FloerComplex, FloerError> {
    let n = pair.num();
    let mut diff = linalg::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            diff[x][y] = match coeff {
                Coeff::F2 => lunes.n_mod2(x, y),
                Coeff::Z => lunes.n_z(x, y),
            };
        }
    }
    let components = component_partition(pair);
    let (rel_grade, grading_consistent) = relative_grading(pair, &diff, &components)?;
    Ok(FloerComplex {
        coeff,
        generators: n,
        eps: pair.points.iter().map(|p| p.eps).collect(),
        mod2_grade: pair.points.iter().map(|p| if p.eps > 0 { 0 } else { 1 }).collect(),
        components,
        rel_grade,
        grading_consistent,
        differential: diff,
        flags: pair.flags,
        lunes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DSquared {
    pub matrix: Matrix,
    pub zero: bool,
}

impl FloerComplex {
    /// `d o d`, reduced mod 2 over F2.
    pub fn d_squared(&self) -> DSquared {
        let mut m = linalg::mul(&self.differential, &self.differential);
        if self.coeff == Coeff::F2 {
            m = linalg::reduce_mod2(&m);
        }
        let zero = linalg::is_zero(&m);
        DSquared { matrix: m, zero }
    }

    /// As [`d_squared`](Self::d_squared), raising when the hypotheses hold
    /// and the square is nonzero.
    pub fn d_squared_checked(&self) -> Result<DSquared, FloerError> {
        let d = self.d_squared();
        if !d.zero && self.flags.all() {
            return Err(FloerError::TheoremViolated);
        }
        Ok(d)
    }

    pub fn homology(&self) -> Result<Homology, FloerError> {
        if !self.d_squared().zero {
            return Err(FloerError::NotAComplex);
        }
        let n = self.generators;
        let d = &self.differential;
        // block of d from grade g to the other grade
        let block = |g: u8| -> Matrix {
            let rows: Vec<usize> = (0..n).filter(|&i| self.mod2_grade[i] == g).collect();
            let cols: Vec<usize> = (0..n).filter(|&i| self.mod2_grade[i] != g).collect();
            rows.iter().map(|&i| cols.iter().map(|&j| d[i][j]).collect()).collect()
        };
        let count = |g: u8| self.mod2_grade.iter().filter(|&&x| x == g).count();
        match self.coeff {
            Coeff::F2 => {
                let r = linalg::rank_f2(d);
                let (r0, r1) = (linalg::rank_f2(&block(0)), linalg::rank_f2(&block(1)));
                Ok(Homology {
                    dim: n - 2 * r,
                    graded: [count(0) - r0 - r1, count(1) - r1 - r0],
                    torsion: Vec::new(),
                })
            }
            Coeff::Z => {
                let inv = linalg::smith_invariants(d);
                let (r0, r1) = (linalg::rank_q(&block(0)), linalg::rank_q(&block(1)));
                Ok(Homology {
                    dim: n - 2 * inv.len(),
                    graded: [count(0) - r0 - r1, count(1) - r1 - r0],
                    torsion: inv.into_iter().filter(|&v| v > 1).collect(),
                })
            }
        }
    }

    /// `dim HF_0 - dim HF_1` for the grading by crossing sign.
    pub fn euler_characteristic(&self) -> Result<i64, FloerError> {
        let h = self.homology()?;
        Ok(h.graded[0] as i64 - h.graded[1] as i64)
    }
}

/// Homology of a complex: total free rank, ranks in the two crossing-sign
/// degrees, and torsion coefficients (over Z).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Homology {
    pub dim: usize,
    pub graded: [usize; 2],
    pub torsion: Vec<i64>,
}

/// Minimal intersection number of the classes of straight torus curves.
pub fn geo_oracle(pair: &CurvePair) -> Result<i64, FloerError> {
    if pair.surface != SurfaceKind::Torus || pair.alpha.deck.is_zero() || pair.beta.deck.is_zero() {
        return Err(FloerError::Unsupported(
            "the geometric intersection oracle needs two noncontractible torus curves".into(),
        ));
    }
    Ok(pair.alpha.deck.det(pair.beta.deck).abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum HeartKind {
    A,
    B,
    C,
    D,
}

/// A pair of lunes `x -> y -> z`.
#[derive(Clone, Debug)]
pub struct BrokenHeart {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// Indices into the lune lists of `(x, y)` and `(y, z)`.
    pub lune1: usize,
    pub lune2: usize,
    pub kind: Option<HeartKind>,
    pub catenated: TraceKey,
    pub maslov: i64,
}

/// Closed arcs `x -> y` and `y -> z` meet only in `y`.
fn meet_only_at_midpoint(s1: &[usize], s2: &[usize], x: usize, z: usize) -> bool {
    x != z && s1.iter().all(|i| !s2.contains(i))
}

fn strict_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && a.iter().all(|i| b.contains(i))
}

fn classify(pair: &CurvePair, l1: &Lune, l2: &Lune) -> Vec<HeartKind> {
    let b1 = l1.trace.boundary(pair);
    let b2 = l2.trace.boundary(pair);
    let (a_xy, a_yz) = (b1.alpha_support(), b2.alpha_support());
    let (b_xy, b_yz) = (b1.beta_support(), b2.beta_support());
    let (x, z) = (l1.x(), l2.y());
    let a_meet = meet_only_at_midpoint(&a_xy, &a_yz, x, z);
    let b_meet = meet_only_at_midpoint(&b_xy, &b_yz, x, z);
    let mut out = Vec::new();
    if a_meet && strict_subset(&b_yz, &b_xy) {
        out.push(HeartKind::A);
    }
    if a_meet && strict_subset(&b_xy, &b_yz) {
        out.push(HeartKind::B);
    }
    if b_meet && strict_subset(&a_yz, &a_xy) {
        out.push(HeartKind::C);
    }
    if b_meet && strict_subset(&a_xy, &a_yz) {
        out.push(HeartKind::D);
    }
    out
}

/// All broken hearts from `x` to `z`. Outside the hypotheses a heart that
/// fits none or several alternatives gets `kind = None`; under them that is
/// an error.
pub fn enumerate_hearts(
    pair: &CurvePair,
    lunes: &LuneTable,
    x: usize,
    z: usize,
) -> Result<Vec<BrokenHeart>, FloerError> {
    let mut out = Vec::new();
    for y in 0..pair.num() {
        for (i, l1) in lunes.get(x, y).iter().enumerate() {
            for (j, l2) in lunes.get(y, z).iter().enumerate() {
                let kinds = classify(pair, l1, l2);
                if kinds.len() != 1 && pair.flags.all() {
                    return Err(FloerError::ClassificationFailed(x, y, z, kinds.len()));
                }
                let cat: Trace = l1.trace.catenate(pair, &l2.trace)?;
                out.push(BrokenHeart {
                    x,
                    y,
                    z,
                    lune1: i,
                    lune2: j,
                    kind: (kinds.len() == 1).then(|| kinds[0]),
                    maslov: cat.maslov(pair)?,
                    catenated: cat.canonical_key(pair),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct HeartPairing {
    pub x: usize,
    pub z: usize,
    pub hearts: usize,
    /// `(midpoint of the (a) or (b) heart, midpoint of its partner)`.
    pub matching: Vec<(HeartKind, usize, HeartKind, usize)>,
    pub unclassified: usize,
    pub even: bool,
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeartReport {
    pub pairs: Vec<HeartPairing>,
    /// Every heart count is even and every classified heart is matched.
    pub holds: bool,
    /// Heart counts are even exactly where the mod 2 square of the
    /// differential vanishes.
    pub agrees_with_d_squared: bool,
}

/// Pairs (a) with (c) and (b) with (d) hearts of equal catenated trace, for
/// every `(x, z)`.
pub fn heart_pairing_check(pair: &CurvePair, lunes: &LuneTable) -> Result<HeartReport, FloerError> {
    let n = pair.num();
    let mut pairs = Vec::new();
    let mut holds = true;
    let mut agrees = true;
    for x in 0..n {
        for z in 0..n {
            let hearts = enumerate_hearts(pair, lunes, x, z)?;
            let sq: i64 = (0..n).map(|y| lunes.n_mod2(x, y) * lunes.n_mod2(y, z)).sum();
            let even = hearts.len() % 2 == 0;
            // the number of hearts is the unreduced entry of d^2
            if even != (sq % 2 == 0) {
                agrees = false;
            }
            if hearts.is_empty() {
                continue;
            }
            let mut matching = Vec::new();
            let mut matched = true;
            let unclassified = hearts.iter().filter(|h| h.kind.is_none()).count();
            for (k1, k2) in [(HeartKind::A, HeartKind::C), (HeartKind::B, HeartKind::D)] {
                let mut left: Vec<&BrokenHeart> = hearts.iter().filter(|h| h.kind == Some(k1)).collect();
                let mut right: Vec<&BrokenHeart> = hearts.iter().filter(|h| h.kind == Some(k2)).collect();
                left.sort_by(|a, b| a.catenated.cmp(&b.catenated));
                right.sort_by(|a, b| a.catenated.cmp(&b.catenated));
                if left.len() != right.len() {
                    matched = false;
                }
                for (l, r) in left.iter().zip(&right) {
                    if l.catenated != r.catenated {
                        matched = false;
                    }
                    matching.push((k1, l.y, k2, r.y));
                }
            }
            if unclassified == 0 && (!even || !matched) {
                holds = false;
            }
            pairs.push(HeartPairing {
                x,
                z,
                hearts: hearts.len(),
                matching,
                unclassified,
                even,
                matched,
            });
        }
    }
    Ok(HeartReport {
        pairs,
        holds,
        agrees_with_d_squared: agrees,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    /// `(x, y, area)` for every lune.
    pub areas: Vec<(usize, usize, String)>,
    pub positive: bool,
    pub acyclic: bool,
    /// Action differences along lunes equal their areas (only computed when
    /// the curves are noncontractible and the action is well defined).
    pub action_consistent: Option<bool>,
    /// A topological order of the crossings by decreasing action.
    pub order: Option<Vec<usize>>,
}

/// Kahn's algorithm on the lune digraph.
fn topological_order(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0; n];
    for &(_, y) in edges {
        indeg[y] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        out.push(v);
        for &(a, b) in edges {
            if a == v {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push_back(b);
                }
            }
        }
    }
    (out.len() == n).then_some(out)
}

/// Areas of lunes are positive and lunes strictly decrease the action, so
/// the lune relation has no cycles.
pub fn action_order_check(pair: &CurvePair, lunes: &LuneTable) -> Result<ActionReport, FloerError> {
    let areas: Vec<(usize, usize, Rat)> = lunes.iter().map(|l| (l.x(), l.y(), l.area.clone())).collect();
    let positive = areas.iter().all(|(_, _, a)| a > &Rat::from_integer(0.into()));
    let mut edges: Vec<(usize, usize)> = areas.iter().map(|(x, y, _)| (*x, *y)).collect();
    edges.sort();
    edges.dedup();
    let order = topological_order(pair.num(), &edges);
    let action_consistent =
        if pair.flags.noncontractible_alpha && pair.flags.noncontractible_beta && pair.surface != SurfaceKind::Sphere {
            let comp = component_partition(pair);
            let mut action: Vec<Rat> = Vec::with_capacity(pair.num());
            for z in 0..pair.num() {
                action.push(if comp[z] == z {
                    Rat::from_integer(0.into())
                } else {
                    let t = connecting_trace(pair, comp[z], z)?.expect("same component");
                    -t.area()
                });
            }
            Some(
                areas
                    .iter()
                    .all(|(x, y, a)| comp[*x] == comp[*y] && &(&action[*x] - &action[*y]) == a),
            )
        } else {
            None
        };
    Ok(ActionReport {
        areas: areas.iter().map(|(x, y, a)| (*x, *y, a.to_string())).collect(),
        positive,
        acyclic: order.is_some(),
        action_consistent,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn torus_fixtures() {
        let c1 = build_complex(&fixtures::torus1(), Coeff::F2).unwrap();
        assert_eq!(c1.homology().unwrap().dim, 1);
        let p2 = fixtures::torus2();
        let c2 = build_complex(&p2, Coeff::F2).unwrap();
        assert_eq!(c2.homology().unwrap().dim, 2);
        assert_eq!(c2.euler_characteristic().unwrap(), 2);
        assert_eq!(geo_oracle(&p2).unwrap(), 2);
        assert_ne!(c2.components[0], c2.components[1]);

        let p3 = fixtures::torus3();
        let c3 = build_complex(&p3, Coeff::F2).unwrap();
        assert_eq!(c3.differential, vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 1, 0]]);
        assert!(c3.d_squared().zero);
        assert_eq!(c3.homology().unwrap().dim, 1);
        assert_eq!(c3.euler_characteristic().unwrap(), 1);
        assert_eq!(c3.rel_grade, vec![1, 0, 1]);
        assert!(c3.grading_consistent);
        let z3 = build_complex(&p3, Coeff::Z).unwrap();
        assert_eq!(z3.differential[2][1], -1);
        let h = z3.homology().unwrap();
        assert_eq!((h.dim, h.torsion.len()), (1, 0));
    }

    #[test]
    fn plane_and_torus4() {
        let p = fixtures::plane();
        let c = build_complex(&p, Coeff::F2).unwrap();
        assert!(c.d_squared().zero);
        assert_eq!(c.homology().unwrap().dim, 0);
        assert_eq!(c.euler_characteristic().unwrap(), 0);

        let p4 = fixtures::torus4();
        let c4 = build_complex(&p4, Coeff::F2).unwrap();
        let d = c4.d_squared_checked().unwrap();
        assert_eq!(d.matrix, linalg::identity(2));
        assert_eq!(c4.homology(), Err(FloerError::NotAComplex));
    }

    #[test]
    fn nest_hearts_pair_up() {
        let p = fixtures::nest();
        let c = build_complex(&p, Coeff::Z).unwrap();
        assert!(c.d_squared().zero);
        let r = heart_pairing_check(&p, &c.lunes).unwrap();
        assert!(r.holds && r.agrees_with_d_squared);
        let from0 = r.pairs.iter().find(|h| h.x == 0 && h.z == 2).unwrap();
        assert_eq!(from0.hearts, 2);
        assert_eq!(from0.matching.len(), 1);
        let hs = enumerate_hearts(&p, &c.lunes, 0, 2).unwrap();
        assert!(hs.iter().all(|h| h.maslov == 2));
        assert_eq!(c.homology().unwrap().dim, 1);
    }

    #[test]
    fn action_order() {
        let p = fixtures::torus3();
        let c = build_complex(&p, Coeff::F2).unwrap();
        let r = action_order_check(&p, &c.lunes).unwrap();
        assert!(r.positive && r.acyclic);
        assert_eq!(r.action_consistent, Some(true));
        let n = fixtures::nest();
        let cn = build_complex(&n, Coeff::F2).unwrap();
        let rn = action_order_check(&n, &cn.lunes).unwrap();
        assert_eq!(rn.action_consistent, Some(true));
        assert!(rn.acyclic);
    }
}
