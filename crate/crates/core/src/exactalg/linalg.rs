use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Rational;
use crate::{Error, Result};

/// Sparse row: `(column, value)` pairs sorted by column, no zero values.
pub type SparseRow = Vec<(usize, Rational)>;

/// Incrementally built echelon basis of a subspace of `Q^ncols`.
///
/// Every stored row has leading coefficient 1 at its pivot column. After
/// [`RowEchelon::finalize`] the rows are fully reduced, so two echelon forms of
/// the same subspace are equal entry by entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.pivots.values()
    }

    /// Reduces `row` against the stored pivots; the result has no entries in
    /// pivot columns and is independent of the order rows were inserted.
    pub fn reduce(&self, row: impl IntoIterator<Item = (usize, Rational)>) -> Result<SparseRow> {
        let mut work: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in row {
            if c >= self.ncols {
                return Err(Error::IndexOutOfRange(format!("column {c} of {}", self.ncols)));
            }
            if !v.is_zero() {
                let e = work.entry(c).or_insert_with(Rational::zero);
                *e += v;
                if e.is_zero() {
                    work.remove(&c);
                }
            }
        }
        let mut cursor = 0;
        loop {
            let next = work.range(cursor..).next().map(|(&c, v)| (c, v.clone()));
            let Some((c, v)) = next else { break };
            if let Some(prow) = self.pivots.get(&c) {
                for (pc, pv) in prow {
                    let e = work.entry(*pc).or_insert_with(Rational::zero);
                    *e -= &v * pv;
                    if e.is_zero() {
                        work.remove(pc);
                    }
                }
            }
            cursor = c + 1;
        }
        Ok(work.into_iter().collect())
    }

    /// Adds `row` to the span. Returns true if the rank went up.
    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, Rational)>) -> Result<bool> {
        if self.is_full() {
            // still validate the column indices
            let reduced = self.reduce(row)?;
            debug_assert!(reduced.is_empty());
            return Ok(false);
        }
        let reduced = self.reduce(row)?;
        let Some((lead, lv)) = reduced.first().cloned() else {
            return Ok(false);
        };
        let inv = lv.recip();
        let normalized = if inv.is_one() {
            reduced
        } else {
            reduced.into_iter().map(|(c, v)| (c, v * &inv)).collect()
        };
        self.pivots.insert(lead, normalized);
        Ok(true)
    }

    pub fn contains(&self, row: impl IntoIterator<Item = (usize, Rational)>) -> Result<bool> {
        Ok(self.reduce(row)?.is_empty())
    }

    /// Brings the stored rows to reduced row-echelon form.
    pub fn finalize(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for c in cols {
            let row = self.pivots.remove(&c).expect("pivot present");
            let (lead, tail) = row.split_first().expect("nonempty pivot row");
            let mut reduced = vec![lead.clone()];
            reduced.extend(
                self.reduce(tail.iter().cloned())
                    .expect("columns already validated"),
            );
            self.pivots.insert(c, reduced);
        }
    }

    /// Columns that carry no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect()
    }
}

/// Dense rational matrix inverse by Gauss–Jordan elimination.
pub fn invert(matrix: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("only square matrices can be inverted"));
    }
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Verification("singular matrix".into()))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= &p;
            inv[col][j] *= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Ok(inv)
}

/// Rank of a dense rational matrix.
pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let ncols = matrix.first().map_or(0, Vec::len);
    let mut ech = RowEchelon::new(ncols);
    for row in matrix {
        let sparse = row.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero());
        ech.insert(sparse).expect("row width matches");
    }
    ech.rank()
}
