//! Hermite and Smith normal forms of integer matrices.
//!
//! Pivots are always the nonzero entry of least absolute value, ties going to
//! the lowest row and then the lowest column, so outputs are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RationalMatrix;
use crate::error::ExactError;

pub type IntRows = Vec<Vec<BigInt>>;

pub fn int_identity(n: usize) -> IntRows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn row_axpy(m: &mut IntRows, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

fn col_axpy(m: &mut IntRows, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
}

fn swap_cols(m: &mut IntRows, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn negate_row(m: &mut IntRows, i: usize) {
    for x in m[i].iter_mut() {
        *x = -&*x;
    }
}

/// Row-style Hermite form: `u · a = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntHnf {
    pub h: IntRows,
    pub u: IntRows,
    pub pivots: Vec<(usize, usize)>,
}

pub fn hnf_int(a: &IntRows, cols: usize) -> IntHnf {
    let m = a.len();
    let mut h = a.clone();
    let mut u = int_identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let mut found = false;
        loop {
            let Some(p) = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()).then(i.cmp(&j)))
            else {
                break;
            };
            found = true;
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                clean &= h[i][c].is_zero();
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        pivots.push((r, c));
        r += 1;
    }
    IntHnf { h, u, pivots }
}

/// `u · a · v = s` with `s` diagonal, nonnegative, and `s_ii | s_(i+1)(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSnf {
    pub s: IntRows,
    pub u: IntRows,
    pub v: IntRows,
}

impl IntSnf {
    /// Diagonal entries, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.s.len().min(self.v.len());
        (0..k).map(|i| self.s[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn snf_int(a: &IntRows, cols: usize) -> IntSnf {
    let m = a.len();
    let n = cols;
    let mut s = a.clone();
    let mut u = int_identity(m);
    let mut v = int_identity(n);
    for t in 0..m.min(n) {
        loop {
            // global least-magnitude pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if s[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return IntSnf { s, u, v };
            };
            s.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut s, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = s[i][t].div_floor(&s[t][t]);
                row_axpy(&mut s, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= s[i][t].is_zero();
            }
            for j in t + 1..n {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = s[t][j].div_floor(&s[t][t]);
                col_axpy(&mut s, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= s[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !s[i][j].is_multiple_of(&s[t][t]))
            });
            match bad {
                Some(i) => {
                    // pull the offending row into the pivot row and go again
                    let minus_one = -BigInt::one();
                    row_axpy(&mut s, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    IntSnf { s, u, v }
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn int_det(a: &IntRows) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = val / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn int_mul(a: &IntRows, b: &IntRows, b_cols: usize) -> IntRows {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Smith decomposition in the shared matrix type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub s: RationalMatrix,
    pub u: RationalMatrix,
    pub v: RationalMatrix,
    pub source_rows: usize,
    pub source_cols: usize,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.source_rows.min(self.source_cols);
        (0..k).map(|i| self.s.get(i, i).to_integer()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Hermite normal form `(h, u)` with `u · a = h`.
pub fn hnf(a: &RationalMatrix) -> Result<(RationalMatrix, RationalMatrix), ExactError> {
    let rows = a.to_integer_rows()?;
    let out = hnf_int(&rows, a.cols());
    Ok((
        shaped(out.h, a.rows(), a.cols()),
        shaped(out.u, a.rows(), a.rows()),
    ))
}

pub fn snf(a: &RationalMatrix) -> Result<SnfDecomposition, ExactError> {
    let rows = a.to_integer_rows()?;
    let out = snf_int(&rows, a.cols());
    Ok(SnfDecomposition {
        s: shaped(out.s, a.rows(), a.cols()),
        u: shaped(out.u, a.rows(), a.rows()),
        v: shaped(out.v, a.cols(), a.cols()),
        source_rows: a.rows(),
        source_cols: a.cols(),
    })
}

fn shaped(rows: IntRows, r: usize, c: usize) -> RationalMatrix {
    if r == 0 || c == 0 {
        return RationalMatrix::zeros(r, c);
    }
    RationalMatrix::from_bigint_rows(rows)
}
