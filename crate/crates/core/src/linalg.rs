//! Small dense integer matrices: products, ranks over F2 and Q, and Smith
//! normal form invariants.

pub type Matrix = Vec<Vec<i64>>;

pub fn zeros(r: usize, c: usize) -> Matrix {
    vec![vec![0; c]; r]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn cols(m: &Matrix) -> usize {
    m.first().map_or(0, |r| r.len())
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, k, p) = (a.len(), b.len(), cols(b));
    let mut out = zeros(n, p);
    for i in 0..n {
        for j in 0..k {
            let aij = a[i][j];
            if aij == 0 {
                continue;
            }
            for l in 0..p {
                out[i][l] += aij * b[j][l];
            }
        }
    }
    out
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let c = cols(a);
    (0..c).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn reduce_mod2(a: &Matrix) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x.rem_euclid(2)).collect()).collect()
}

pub fn is_zero(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(|x| *x == 0))
}

/// Rank over F2 by Gaussian elimination on bit rows.
pub fn rank_f2(a: &Matrix) -> usize {
    let mut rows: Vec<Vec<bool>> = a
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(2) == 1).collect())
        .collect();
    let c = cols(a);
    let mut rank = 0;
    for col in 0..c {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col]) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i][col] {
                for j in col..c {
                    let v = rows[rank][j];
                    rows[i][j] ^= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of the Smith normal form.
pub fn smith_invariants(a: &Matrix) -> Vec<i64> {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (nr, nc) = (m.len(), cols(a));
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..nr {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..nc {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest by the pivot
                let bad = (t + 1..nr)
                    .flat_map(|i| (t + 1..nc).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..nc {
                            m[t][j] += m[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut bi = (t, t);
            for i in t..nr {
                if m[i][t] != 0 && m[i][t].abs() < m[bi.0][bi.1].abs() {
                    bi = (i, t);
                }
            }
            for j in t..nc {
                if m[t][j] != 0 && m[t][j].abs() < m[bi.0][bi.1].abs() {
                    bi = (t, j);
                }
            }
            m.swap(t, bi.0);
            for row in m.iter_mut() {
                row.swap(t, bi.1);
            }
        }
        diag.push(m[t][t].abs() as i64);
        t += 1;
    }
    diag
}

/// Rank over the rationals.
pub fn rank_q(a: &Matrix) -> usize {
    smith_invariants(a).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smith_examples() {
        assert_eq!(
            smith_invariants(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            vec![2, 6, 12]
        );
        assert_eq!(smith_invariants(&vec![vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(smith_invariants(&vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(rank_f2(&vec![vec![1, 1], vec![1, 1]]), 1);
        assert_eq!(rank_f2(&vec![vec![2, 0], vec![0, 1]]), 1);
    }

    fn det(m: &Matrix) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Matrix = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] as i128 * det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn smith_product_is_abs_det(m in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 3)) {
            let d = smith_invariants(&m);
            let prod: i128 = if d.len() == 3 { d.iter().map(|&x| x as i128).product() } else { 0 };
            prop_assert_eq!(prod, det(&m).abs());
            for w in d.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
