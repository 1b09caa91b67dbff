//! Integer matrices: Bareiss determinants, Smith normal form, saturated
//! kernels and Hermite bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{rank as rational_rank, Rational};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn transpose(m: &IntMatrix, ncols: usize) -> IntMatrix {
    (0..ncols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let q: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    rational_rank(&q)
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry nonnegative and dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[i] -= q * row[j]`
fn row_sub(m: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    let src = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(src.iter()) {
        *x -= q * y;
    }
}

/// `col[i] -= q * col[j]`
fn col_sub(m: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[j].clone();
        row[i] -= q * y;
    }
}

/// Smith normal form of an `rows x cols` matrix.
pub fn smith_normal_form(m: &IntMatrix, cols: usize) -> Smith {
    let rows = m.len();
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero() && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    row_sub(&mut d, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    col_sub(&mut d, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                // divisibility: fold in any entry the pivot does not divide
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&d[i][j] % &d[t][t]).is_zero());
                match bad {
                    Some((i, _)) => {
                        let one = BigInt::from(-1);
                        row_sub(&mut d, t, i, &one);
                        row_sub(&mut u, t, i, &one);
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !d[i][t].is_zero() && d[i][t].abs() < d[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !d[t][j].is_zero() && d[t][j].abs() < d[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                d.swap(t, best.0);
                u.swap(t, best.0);
            }
            if best.1 != t {
                swap_cols(&mut d, t, best.1);
                swap_cols(&mut v, t, best.1);
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    Smith { u, d, v, rank: t }
}

/// A basis of `{x in Z^cols : m x = 0}`, as rows in Hermite form.
pub fn integer_kernel(m: &IntMatrix, cols: usize) -> IntMatrix {
    let s = smith_normal_form(m, cols);
    let basis: IntMatrix = (s.rank..cols).map(|j| s.v.iter().map(|row| row[j].clone()).collect()).collect();
    hermite_rows(basis, cols)
}

/// Row Hermite normal form of the lattice spanned by `rows`: pivots
/// positive, entries above each pivot reduced into `[0, pivot)`, zero rows
/// dropped.
pub fn hermite_rows(mut rows: IntMatrix, cols: usize) -> IntMatrix {
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).expect("nonempty");
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if !rows[i][c].is_zero() {
                    let q = rows[i][c].div_floor(&rows[r][c]);
                    row_sub(&mut rows, i, r, &q);
                    if !rows[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                row_sub(&mut rows, i, r, &q);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}
