//! Connection matrices over finite posets and the reduction that cancels a
//! unit entry, with the chain maps relating the two complexes.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::floer::{Coeff, FloerComplex};
use crate::linalg::{self, Matrix};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("pivot entry nu({q}, {p}) = {value} is not a unit")]
    PivotNotUnit { p: String, q: String, value: i64 },
    #[error("pivot ({p}, {q}) is not adjacent in the order")]
    NotAdjacent { p: String, q: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("the matrix does not square to zero")]
    NotAComplex,
    #[error("invalid complex: {0}")]
    Invalid(String),
}

/// A finite set `P` with `nu: P x P -> Z`, where `d q = sum_p nu(q, p) p`,
/// optionally with an index function and a partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionComplex {
    pub names: Vec<String>,
    /// `nu[q][p]`.
    pub nu: Matrix,
    pub mu: Option<Vec<i64>>,
    /// `leq[p][q]` iff `p <= q`; reflexive and transitive.
    pub leq: Option<Vec<Vec<bool>>>,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `sum_q nu(r, q) nu(q, p) != 0`.
    SquareNonzero { r: String, p: String },
    /// `p <= q`, `p != q` but `mu(p) >= mu(q)`.
    IndexNotIncreasing { p: String, q: String },
    /// `nu(q, p) != 0` but `mu(q) - mu(p) != 1` or not `p <= q`.
    NotConnection { q: String, p: String },
    /// The order is not antisymmetric.
    NotPartialOrder { p: String, q: String },
}

/// Reflexive-transitive closure of a relation given as pairs `p <= q`.
pub fn order_closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(p, q) in pairs {
        leq[p][q] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    leq
}

impl ConnectionComplex {
    pub fn new(names: Vec<String>, nu: Matrix, coeff: Coeff) -> Self {
        ConnectionComplex {
            names,
            nu,
            mu: None,
            leq: None,
            coeff,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ReductionError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ReductionError::UnknownGenerator(name.to_string()))
    }

    fn normalize(&self, m: Matrix) -> Matrix {
        match self.coeff {
            Coeff::F2 => linalg::reduce_mod2(&m),
            Coeff::Z => m,
        }
    }

    fn nonzero(&self, v: i64) -> bool {
        match self.coeff {
            Coeff::F2 => v.rem_euclid(2) != 0,
            Coeff::Z => v != 0,
        }
    }

    pub fn d_squared_zero(&self) -> bool {
        linalg::is_zero(&self.normalize(linalg::mul(&self.nu, &self.nu)))
    }

    pub fn verify(&self) -> Vec<Violation> {
        let n = self.len();
        let nm = |i: usize| self.names[i].clone();
        let mut out = Vec::new();
        let sq = self.normalize(linalg::mul(&self.nu, &self.nu));
        for r in 0..n {
            for p in 0..n {
                if sq[r][p] != 0 {
                    out.push(Violation::SquareNonzero { r: nm(r), p: nm(p) });
                }
            }
        }
        if let Some(leq) = &self.leq {
            for p in 0..n {
                for q in 0..n {
                    if p != q && leq[p][q] && leq[q][p] && p < q {
                        out.push(Violation::NotPartialOrder { p: nm(p), q: nm(q) });
                    }
                }
            }
        }
        if let Some(mu) = &self.mu {
            if let Some(leq) = &self.leq {
                for p in 0..n {
                    for q in 0..n {
                        if p != q && leq[p][q] && mu[p] >= mu[q] {
                            out.push(Violation::IndexNotIncreasing { p: nm(p), q: nm(q) });
                        }
                    }
                }
            }
            for q in 0..n {
                for p in 0..n {
                    if self.nonzero(self.nu[q][p]) {
                        let ordered = self.leq.as_ref().is_none_or(|l| l[p][q]);
                        if mu[q] - mu[p] != 1 || !ordered {
                            out.push(Violation::NotConnection { q: nm(q), p: nm(p) });
                        }
                    }
                }
            }
        }
        out
    }

    /// `(p, q)` is adjacent: `p < q` with nothing strictly between.
    pub fn adjacent(&self, p: usize, q: usize) -> bool {
        let Some(leq) = &self.leq else { return true };
        p != q && leq[p][q] && (0..self.len()).all(|r| r == p || r == q || !(leq[p][r] && leq[r][q]))
    }

    /// Checks the pivot and returns the complex with `qbar` negated if
    /// needed so that `nu(qbar, pbar) = 1`.
    fn normalized_pivot(&self, pbar: usize, qbar: usize) -> Result<ConnectionComplex, ReductionError> {
        let v = self.nu[qbar][pbar];
        let err = || ReductionError::PivotNotUnit {
            p: self.names[pbar].clone(),
            q: self.names[qbar].clone(),
            value: v,
        };
        if pbar == qbar {
            return Err(err());
        }
        if self.leq.is_some() && !self.adjacent(pbar, qbar) {
            return Err(ReductionError::NotAdjacent {
                p: self.names[pbar].clone(),
                q: self.names[qbar].clone(),
            });
        }
        let mut cc = self.clone();
        match self.coeff {
            Coeff::F2 => {
                if v.rem_euclid(2) != 1 {
                    return Err(err());
                }
                cc.nu = linalg::reduce_mod2(&cc.nu);
            }
            Coeff::Z => match v {
                1 => {}
                -1 => {
                    for x in cc.nu[qbar].iter_mut() {
                        *x = -*x;
                    }
                    for row in cc.nu.iter_mut() {
                        row[qbar] = -row[qbar];
                    }
                }
                _ => return Err(err()),
            },
        }
        Ok(cc)
    }

    /// Cancels the pair `(pbar, qbar)` with `nu(qbar, pbar)` a unit.
    pub fn reduce(&self, pbar: usize, qbar: usize) -> Result<ConnectionComplex, ReductionError> {
        let cc = self.normalized_pivot(pbar, qbar)?;
        let keep = kept(self.len(), pbar, qbar);
        let nu = &cc.nu;
        let mut out = linalg::zeros(keep.len(), keep.len());
        for (i, &q) in keep.iter().enumerate() {
            for (j, &p) in keep.iter().enumerate() {
                out[i][j] = nu[q][p] - nu[q][pbar] * nu[qbar][p];
            }
        }
        let leq = self.leq.as_ref().map(|l| {
            keep.iter()
                .map(|&p| keep.iter().map(|&q| l[p][q] || (l[pbar][q] && l[p][qbar])).collect())
                .collect()
        });
        Ok(ConnectionComplex {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            nu: cc.normalize(out),
            mu: self.mu.as_ref().map(|m| keep.iter().map(|&i| m[i]).collect()),
            leq,
            coeff: self.coeff,
        })
    }

    /// The chain maps of the reduction, as matrices whose rows are the
    /// images of basis vectors, and a check of the four identities.
    pub fn chain_maps(&self, pbar: usize, qbar: usize) -> Result<ChainMaps, ReductionError> {
        let cc = self.normalized_pivot(pbar, qbar)?;
        let reduced = self.reduce(pbar, qbar)?;
        let n = self.len();
        let keep = kept(n, pbar, qbar);
        let nu = &cc.nu;
        let m = keep.len();
        // Phi: C' -> C, q |-> q - nu(q, pbar) qbar
        let mut phi = linalg::zeros(m, n);
        for (i, &q) in keep.iter().enumerate() {
            phi[i][q] = 1;
            phi[i][qbar] -= nu[q][pbar];
        }
        // Psi: C -> C', q |-> q, qbar |-> 0, pbar |-> -sum nu(qbar, p) p
        let mut psi = linalg::zeros(n, m);
        for (j, &q) in keep.iter().enumerate() {
            psi[q][j] = 1;
            psi[pbar][j] = -nu[qbar][q];
        }
        // T: pbar |-> qbar
        let mut t = linalg::zeros(n, n);
        t[pbar][qbar] = 1;

        let d = &cc.nu;
        let d2 = &reduced.nu;
        let eq = |a: &Matrix, b: &Matrix| linalg::is_zero(&cc.normalize(linalg::sub(a, b)));
        // composition "g after f" is the product f * g in this convention
        let phi_chain = eq(&linalg::mul(d2, &phi), &linalg::mul(&phi, d));
        let psi_chain = eq(&linalg::mul(&psi, d2), &linalg::mul(d, &psi));
        let psi_phi_id = eq(&linalg::mul(&phi, &psi), &linalg::identity(m));
        let homotopy = eq(
            &linalg::sub(&linalg::identity(n), &linalg::mul(&psi, &phi)),
            &linalg::add(&linalg::mul(&t, d), &linalg::mul(d, &t)),
        );
        Ok(ChainMaps {
            phi: cc.normalize(phi),
            psi: cc.normalize(psi),
            t,
            reduced,
            phi_chain,
            psi_chain,
            psi_phi_id,
            homotopy,
        })
    }

    pub fn homology(&self) -> Result<ConnectionHomology, ReductionError> {
        if !self.d_squared_zero() {
            return Err(ReductionError::NotAComplex);
        }
        let rank = |m: &Matrix| match self.coeff {
            Coeff::F2 => linalg::rank_f2(m),
            Coeff::Z => linalg::rank_q(m),
        };
        let n = self.len();
        let r = rank(&self.nu);
        let torsion = match self.coeff {
            Coeff::Z => linalg::smith_invariants(&self.nu)
                .into_iter()
                .filter(|&v| v > 1)
                .collect(),
            Coeff::F2 => Vec::new(),
        };
        let graded = self.mu.as_ref().map(|mu| {
            let mut degrees: Vec<i64> = mu.clone();
            degrees.sort();
            degrees.dedup();
            degrees
                .into_iter()
                .map(|k| {
                    let idx: Vec<usize> = (0..n).filter(|&i| mu[i] == k).collect();
                    let out: Matrix = idx.iter().map(|&i| self.nu[i].clone()).collect();
                    let inn: Matrix = (0..n).map(|i| idx.iter().map(|&j| self.nu[i][j]).collect()).collect();
                    (k, idx.len() - rank(&out) - rank(&inn))
                })
                .filter(|&(_, d)| d > 0)
                .collect()
        });
        Ok(ConnectionHomology {
            dim: n - 2 * r,
            graded,
            torsion,
        })
    }

    /// Every `(pbar, qbar)` with a unit entry `nu(qbar, pbar)` (and adjacent
    /// when an order is present).
    pub fn valid_pivots(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for q in 0..n {
            for p in 0..n {
                let v = self.nu[q][p];
                let unit = match self.coeff {
                    Coeff::F2 => v.rem_euclid(2) == 1,
                    Coeff::Z => v.abs() == 1,
                };
                if p != q && unit && self.adjacent(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }
}

fn kept(n: usize, pbar: usize, qbar: usize) -> Vec<usize> {
    (0..n).filter(|&i| i != pbar && i != qbar).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionHomology {
    pub dim: usize,
    /// Nonzero `(degree, dim)` when an index function is present.
    pub graded: Option<Vec<(i64, usize)>>,
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ChainMaps {
    pub phi: Matrix,
    pub psi: Matrix,
    pub t: Matrix,
    pub reduced: ConnectionComplex,
    pub phi_chain: bool,
    pub psi_chain: bool,
    pub psi_phi_id: bool,
    pub homotopy: bool,
}

impl ChainMaps {
    pub fn all_hold(&self) -> bool {
        self.phi_chain && self.psi_chain && self.psi_phi_id && self.homotopy
    }
}

/// Exports a Floer complex: `mu` is the relative grading shifted so that
/// components occupy disjoint ranges, and `p <= q` iff `p` is reachable
/// from `q` along nonzero entries.
pub fn export(fc: &FloerComplex) -> ConnectionComplex {
    let n = fc.generators;
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut offsets: BTreeMap<usize, i64> = BTreeMap::new();
    let mut next = 0;
    for &c in &fc.components {
        if let std::collections::btree_map::Entry::Vacant(e) = offsets.entry(c) {
            let top = (0..n)
                .filter(|&i| fc.components[i] == c)
                .map(|i| fc.rel_grade[i])
                .max()
                .unwrap_or(0);
            e.insert(next);
            next += top + 2;
        }
    }
    let mu: Vec<i64> = (0..n).map(|x| fc.rel_grade[x] + offsets[&fc.components[x]]).collect();
    let mut pairs = Vec::new();
    for q in 0..n {
        for p in 0..n {
            if fc.differential[q][p] != 0 {
                pairs.push((p, q));
            }
        }
    }
    ConnectionComplex {
        names,
        nu: fc.differential.clone(),
        mu: Some(mu),
        leq: Some(order_closure(n, &pairs)),
        coeff: fc.coeff,
    }
}

/// JSON form: generator names, entries `[q, p, nu(q, p)]`, an optional
/// index map and optional order pairs `[p, q]` meaning `p <= q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub generators: Vec<String>,
    pub nu: Vec<(String, String, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<Coeff>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<ConnectionComplex, ReductionError> {
        let n = self.generators.len();
        let mut index = BTreeMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if index.insert(g.clone(), i).is_some() {
                return Err(ReductionError::Invalid(format!("duplicate generator {g}")));
            }
        }
        let look = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| ReductionError::UnknownGenerator(s.to_string()))
        };
        let mut nu = linalg::zeros(n, n);
        for (q, p, v) in &self.nu {
            nu[look(q)?][look(p)?] += v;
        }
        let mu = match &self.mu {
            None => None,
            Some(m) => Some(
                self.generators
                    .iter()
                    .map(|g| {
                        m.get(g)
                            .copied()
                            .ok_or_else(|| ReductionError::Invalid(format!("mu missing for {g}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let leq = match &self.order {
            None => None,
            Some(pairs) => {
                let ps = pairs
                    .iter()
                    .map(|(p, q)| Ok((look(p)?, look(q)?)))
                    .collect::<Result<Vec<_>, ReductionError>>()?;
                Some(order_closure(n, &ps))
            }
        };
        Ok(ConnectionComplex {
            names: self.generators,
            nu,
            mu,
            leq,
            coeff: self.coeff.unwrap_or(Coeff::Z),
        })
    }

    pub fn from_complex(cc: &ConnectionComplex) -> ComplexFile {
        let n = cc.len();
        let mut nu = Vec::new();
        for q in 0..n {
            for p in 0..n {
                if cc.nu[q][p] != 0 {
                    nu.push((cc.names[q].clone(), cc.names[p].clone(), cc.nu[q][p]));
                }
            }
        }
        let order = cc.leq.as_ref().map(|l| {
            let mut v = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    if p != q && l[p][q] {
                        v.push((cc.names[p].clone(), cc.names[q].clone()));
                    }
                }
            }
            v
        });
        ComplexFile {
            generators: cc.names.clone(),
            nu,
            mu: cc
                .mu
                .as_ref()
                .map(|m| cc.names.iter().cloned().zip(m.iter().copied()).collect()),
            order,
            coeff: Some(cc.coeff),
        }
    }
}

/// A random connection complex: a direct sum of acyclic pairs and single
/// generators, scrambled by unimodular changes of basis inside each degree,
/// with the order generated by the nonzero entries plus a few extra
/// relations that respect the index.
pub fn random_connection_complex<R: Rng>(rng: &mut R, n: usize, coeff: Coeff) -> ConnectionComplex {
    let mut mu = Vec::with_capacity(n);
    let mut nu = linalg::zeros(n, n);
    let mut i = 0;
    while i < n {
        let k = rng.gen_range(0..4i64);
        if i + 1 < n && rng.gen_bool(0.6) {
            // q = i + 1 in degree k + 1, p = i in degree k
            mu.push(k);
            mu.push(k + 1);
            nu[i + 1][i] = if rng.gen_bool(0.5) { 1 } else { -1 };
            i += 2;
        } else {
            mu.push(k);
            i += 1;
        }
    }
    // shuffle generator order
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut nu2 = linalg::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            nu2[a][b] = nu[perm[a]][perm[b]];
        }
    }
    let mu: Vec<i64> = perm.iter().map(|&a| mu[a]).collect();
    let mut nu = nu2;
    // basis changes q_a <- q_a + c q_b within a degree
    for _ in 0..(2 * n) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || mu[a] != mu[b] {
            continue;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        for j in 0..n {
            nu[a][j] += c * nu[b][j];
        }
        for row in nu.iter_mut() {
            row[b] -= c * row[a];
        }
    }
    if coeff == Coeff::F2 {
        nu = linalg::reduce_mod2(&nu);
    }
    let mut pairs = Vec::new();
    for q in 0..n {
        for p in 0..n {
            if nu[q][p] != 0 {
                pairs.push((p, q));
            }
        }
    }
    for _ in 0..n / 2 {
        let p = rng.gen_range(0..n);
        let q = rng.gen_range(0..n);
        if mu[p] < mu[q] {
            pairs.push((p, q));
        }
    }
    ConnectionComplex {
        names: (0..n).map(|i| format!("g{i}")).collect(),
        nu,
        mu: Some(mu),
        leq: Some(order_closure(n, &pairs)),
        coeff,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::floer::build_complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_element_complex() {
        let cc = ConnectionComplex::new(vec!["p".into(), "q".into()], vec![vec![0, 0], vec![1, 0]], Coeff::Z);
        assert!(cc.verify().is_empty());
        let r = cc.reduce(0, 1).unwrap();
        assert!(r.is_empty());
        let maps = cc.chain_maps(0, 1).unwrap();
        assert!(maps.all_hold());
        assert_eq!(maps.t, vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(cc.homology().unwrap().dim, 0);
    }

    #[test]
    fn square_violation_is_reported() {
        // nu(c, b) = nu(b, a) = 1
        let cc = ConnectionComplex::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]],
            Coeff::Z,
        );
        assert_eq!(
            cc.verify(),
            vec![Violation::SquareNonzero {
                r: "c".into(),
                p: "a".into()
            }]
        );
        assert_eq!(cc.homology(), Err(ReductionError::NotAComplex));
    }

    #[test]
    fn torus3_export_and_reduce() {
        let fc = build_complex(&fixtures::torus3(), Coeff::Z).unwrap();
        let cc = export(&fc);
        assert!(cc.verify().is_empty(), "{:?}", cc.verify());
        assert_eq!(cc.homology().unwrap().dim, 1);
        let maps = cc.chain_maps(1, 0).unwrap();
        assert!(maps.all_hold());
        // Phi(x2) = x2 - nu(x2, x1) x0 = x2 + x0
        assert_eq!(maps.phi, vec![vec![1, 0, 1]]);
        let r = cc.reduce(1, 0).unwrap();
        assert_eq!(r.names, vec!["x2".to_string()]);
        assert_eq!(r.nu, vec![vec![0]]);
        assert_eq!(r.homology().unwrap().dim, 1);
        assert!(r.verify().is_empty());
    }

    #[test]
    fn json_round_trip() {
        let fc = build_complex(&fixtures::nest(), Coeff::Z).unwrap();
        let cc = export(&fc);
        let f = ComplexFile::from_complex(&cc);
        let s = serde_json::to_string(&f).unwrap();
        let back: ComplexFile = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.into_complex().unwrap(), cc);
    }

    #[test]
    fn random_complexes_reduce_faithfully() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            for coeff in [Coeff::Z, Coeff::F2] {
                let cc = random_connection_complex(&mut rng, 8, coeff);
                assert!(cc.verify().is_empty(), "{:?}", cc.verify());
                let h = cc.homology().unwrap();
                for (p, q) in cc.valid_pivots() {
                    let maps = cc.chain_maps(p, q).unwrap();
                    assert!(maps.all_hold());
                    let r = &maps.reduced;
                    assert!(r.verify().is_empty(), "{:?}", r.verify());
                    let hr = r.homology().unwrap();
                    assert_eq!(hr.dim, h.dim);
                    assert_eq!(hr.graded, h.graded);
                }
            }
        }
    }

    #[test]
    fn reduced_order_is_partial() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let cc = random_connection_complex(&mut rng, 10, Coeff::Z);
            for (p, q) in cc.valid_pivots() {
                let r = cc.reduce(p, q).unwrap();
                let l = r.leq.unwrap();
                let m = l.len();
                for a in 0..m {
                    assert!(l[a][a]);
                    for b in 0..m {
                        assert!(a == b || !(l[a][b] && l[b][a]));
                        for c in 0..m {
                            assert!(!(l[a][b] && l[b][c]) || l[a][c]);
                        }
                    }
                }
            }
        }
    }
}
