use std::collections::HashMap;
use std::sync::Arc;

use super::{Polynomial, Variables};
use crate::{Error, Result};

/// A dense matrix of polynomials over a common variable set.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    vars: Arc<Variables>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(vars: &Arc<Variables>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(vars); rows * cols],
        }
    }

    pub fn from_rows(vars: &Arc<Variables>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| **p.vars() != **vars) {
            return Err(Error::VariableMismatch);
        }
        Ok(PolyMatrix { vars: vars.clone(), rows: nrows, cols: ncols, entries })
    }

    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        assert!(**p.vars() == *self.vars, "entry over a foreign variable set");
        self.entries[r * self.cols + c] = p;
    }

    /// `t I - self` style shift: returns `scalar * I - self` on a square matrix.
    pub fn shifted_negation(&self, scalar: &Polynomial) -> Result<PolyMatrix> {
        if self.rows != self.cols {
            return Err(Error::invalid("shift requires a square matrix"));
        }
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = -self.get(r, c);
                let e = if r == c { e.checked_add(scalar)? } else { e };
                out.entries[r * self.cols + c] = e;
            }
        }
        Ok(out)
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::invalid("determinant of a non-square matrix"));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        minor(self, &idx, &idx)
    }
}

/// Determinant of the submatrix on `rows x cols`, by cofactor expansion along
/// rows with memoization on the set of columns still available.
pub fn minor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
    if rows.len() != cols.len() {
        return Err(Error::invalid("a minor needs as many rows as columns"));
    }
    if let Some(&r) = rows.iter().find(|&&r| r >= m.rows) {
        return Err(Error::IndexOutOfRange(format!("row {r}")));
    }
    if let Some(&c) = cols.iter().find(|&&c| c >= m.cols) {
        return Err(Error::IndexOutOfRange(format!("column {c}")));
    }
    if cols.len() > 63 {
        return Err(Error::CapExceeded { what: "minor size", value: cols.len(), bound: 63 });
    }
    if rows.is_empty() {
        return Ok(Polynomial::one(&m.vars));
    }
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    let full = (1u64 << cols.len()) - 1;
    Ok(expand(m, rows, cols, 0, full, &mut memo))
}

fn expand(
    m: &PolyMatrix,
    rows: &[usize],
    cols: &[usize],
    depth: usize,
    avail: u64,
    memo: &mut HashMap<u64, Polynomial>,
) -> Polynomial {
    if depth == rows.len() {
        return Polynomial::one(&m.vars);
    }
    if let Some(p) = memo.get(&avail) {
        return p.clone();
    }
    let r = rows[depth];
    let mut acc = Polynomial::zero(&m.vars);
    let mut sign_pos = true;
    for (j, &c) in cols.iter().enumerate() {
        if avail & (1 << j) == 0 {
            continue;
        }
        let entry = m.get(r, c);
        if !entry.is_zero() {
            let sub = expand(m, rows, cols, depth + 1, avail & !(1 << j), memo);
            if !sub.is_zero() {
                let term = entry * &sub;
                acc = if sign_pos { acc + term } else { acc - term };
            }
        }
        sign_pos = !sign_pos;
    }
    memo.insert(avail, acc.clone());
    acc
}
