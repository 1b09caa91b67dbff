//! Direct linear-algebra model of the torus-fixed ring, independent of the
//! closed expansions.
//!
//! Invariants are symmetric polynomials in exactly `n` pairs `x_i, y_i`; the
//! torus scales `x` and `y` oppositely, so `m_Lambda` has weight `a - b` for
//! `|Lambda| = (a, b)`. The fixed-point ideal is generated by the invariants
//! of nonzero weight. As the polarized power sums `m_(a,b)` generate all
//! invariants, that ideal is `(m_(a,b) : a != b)`, and its weight-zero part
//! in degree `2e` is spanned by the products `m_(a,b) m_Phi` with
//! `|Phi| = (e-a, e-b)`. The quotient's degree-`2e` piece is computed as
//! the weight-zero invariants modulo those products, in the `m_Lambda`
//! coordinates read off at one monomial per orbit.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{MultiplicationTable, TableEntry};
use crate::combinatorics::{bipartite_partitions_of, partitions_of, BipartitePartition, Partition, Vector};
use crate::exactalg::{invert, Monomial, Polynomial, Rational, RowEchelon, Variables};
use crate::{Error, Result};

pub const DEFAULT_MAX_POINTS: u32 = 5;
pub const DEFAULT_MAX_DEGREE: u32 = 12;

struct Piece {
    /// Orbit representatives, one per `m_Lambda` with `|Lambda| = (e, e)`.
    reps: Vec<Monomial>,
    ideal: RowEchelon,
    free: Vec<usize>,
    /// Canonical labels that survive at `n` points.
    canonical: Vec<Partition>,
    /// `to_canonical[j][i]`: coefficient of `canonical[i]` in quotient basis vector `j`.
    to_canonical: Vec<Vec<Rational>>,
}

/// The quotient of weight-zero invariants by the fixed-point ideal, degree
/// by degree up to a bound.
pub struct WeightZeroOracle {
    n: u32,
    max_degree: u32,
    vars: Arc<Variables>,
    pieces: Vec<Piece>,
}

/// Exponent vector `x_1..x_n, y_1..y_n` with the vectors of `lam` placed in
/// the given slots.
fn place(n: usize, slots: &[Vector]) -> Monomial {
    let mut e = vec![0u32; 2 * n];
    for (i, &(a, b)) in slots.iter().enumerate() {
        e[i] = a;
        e[n + i] = b;
    }
    Monomial(e)
}

/// `m_Lambda` in `n` pairs of variables: the sum of all distinct monomials
/// obtained by assigning the vectors of `Lambda` to distinct slots.
pub fn symmetrize(lam: &BipartitePartition, n: usize, vars: &Arc<Variables>) -> Polynomial {
    if lam.len() > n {
        return Polynomial::zero(vars);
    }
    let mut pool: Vec<(Vector, usize)> = Vec::new();
    for &v in lam.vectors() {
        match pool.iter_mut().find(|(w, _)| *w == v) {
            Some(entry) => entry.1 += 1,
            None => pool.push((v, 1)),
        }
    }
    pool.push(((0, 0), n - lam.len()));

    fn fill(
        pool: &mut [(Vector, usize)],
        slots: &mut Vec<Vector>,
        n: usize,
        out: &mut Vec<Monomial>,
    ) {
        if slots.len() == n {
            out.push(place(n, slots));
            return;
        }
        for i in 0..pool.len() {
            if pool[i].1 == 0 {
                continue;
            }
            pool[i].1 -= 1;
            slots.push(pool[i].0);
            fill(pool, slots, n, out);
            slots.pop();
            pool[i].1 += 1;
        }
    }
    let mut monos = Vec::new();
    fill(&mut pool, &mut Vec::with_capacity(n), n, &mut monos);
    Polynomial::from_terms(vars, monos.into_iter().map(|m| (m, Rational::one())))
}

fn canonical_label(lam: &Partition) -> BipartitePartition {
    let mut v: Vec<Vector> = lam.parts_iter().map(|p| (p, 0)).collect();
    v.extend(std::iter::repeat((0, 1)).take(lam.weight() as usize));
    BipartitePartition::from_vectors(v).expect("no zero vectors")
}

impl WeightZeroOracle {
    pub fn new(n: u32, max_degree: u32) -> Result<Self> {
        Self::with_caps(n, max_degree, DEFAULT_MAX_POINTS, DEFAULT_MAX_DEGREE)
    }

    pub fn with_caps(n: u32, max_degree: u32, max_points: u32, degree_cap: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("need at least one point"));
        }
        if n > max_points {
            return Err(Error::CapExceeded { what: "oracle points", value: n as usize, bound: max_points as usize });
        }
        if max_degree > degree_cap {
            return Err(Error::CapExceeded {
                what: "oracle degree",
                value: max_degree as usize,
                bound: degree_cap as usize,
            });
        }
        let nn = n as usize;
        let names: Vec<String> = (1..=nn).map(|i| format!("x{i}")).chain((1..=nn).map(|i| format!("y{i}"))).collect();
        let vars = Variables::standard(names);
        let pieces = (0..=max_degree / 2)
            .into_par_iter()
            .map(|e| Self::build_piece(nn, e, &vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightZeroOracle { n, max_degree, vars, pieces })
    }

    fn build_piece(n: usize, e: u32, vars: &Arc<Variables>) -> Result<Piece> {
        let labels = bipartite_partitions_of(e, e, n);
        let reps: Vec<Monomial> = labels.iter().map(|l| place(n, l.vectors())).collect();
        let index: HashMap<&Monomial, usize> = reps.iter().enumerate().map(|(i, m)| (m, i)).collect();

        let mut products: Vec<(Vector, BipartitePartition)> = Vec::new();
        for a in 0..=e {
            for b in 0..=e {
                if a != b {
                    for phi in bipartite_partitions_of(e - a, e - b, n) {
                        products.push(((a, b), phi));
                    }
                }
            }
        }
        let rows: Vec<Vec<(usize, Rational)>> = products
            .par_iter()
            .map(|&(v, ref phi)| {
                let gen = symmetrize(&BipartitePartition::from_vectors([v]).expect("nonzero vector"), n, vars);
                let prod = &gen * &symmetrize(phi, n, vars);
                coordinates(&prod, &index)
            })
            .collect();
        let mut ideal = RowEchelon::new(reps.len());
        for row in rows {
            if ideal.is_full() {
                break;
            }
            ideal.insert(row)?;
        }
        ideal.finalize();
        let free = ideal.free_columns();

        let canonical: Vec<Partition> = partitions_of(e)
            .into_iter()
            .filter(|l| l.len() + l.weight() <= n as u32)
            .collect();
        if canonical.len() != free.len() {
            return Err(Error::Verification(format!(
                "degree {}: quotient has dimension {} but there are {} canonical elements",
                2 * e,
                free.len(),
                canonical.len()
            )));
        }
        let mut matrix = Vec::with_capacity(canonical.len());
        for lam in &canonical {
            let p = symmetrize(&canonical_label(lam), n, vars);
            matrix.push(free_coordinates(&ideal, &free, coordinates(&p, &index))?);
        }
        let to_canonical = invert(&matrix).map_err(|_| {
            Error::Verification(format!("degree {}: canonical elements are dependent in the quotient", 2 * e))
        })?;
        Ok(Piece { reps, ideal, free, canonical, to_canonical })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn variables(&self) -> &Arc<Variables> {
        &self.vars
    }

    /// Quotient dimensions in degrees `0, 2, ..., max_degree`.
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.free.len()).collect()
    }

    /// Dimensions of the weight-zero invariants and of the ideal's weight-zero part.
    pub fn piece_sizes(&self, degree: u32) -> Option<(usize, usize)> {
        let p = self.pieces.get((degree / 2) as usize)?;
        Some((p.reps.len(), p.ideal.rank()))
    }

    /// `m_Lambda` in this oracle's variables.
    pub fn symmetric(&self, lam: &BipartitePartition) -> Polynomial {
        symmetrize(lam, self.n as usize, &self.vars)
    }

    /// The canonical element `m_{(lambda,0)(0,1)^{|lambda|}}` as a polynomial.
    pub fn canonical_element(&self, lambda: &Partition) -> Polynomial {
        self.symmetric(&canonical_label(lambda))
    }

    /// Class of a symmetric polynomial in the quotient, in canonical
    /// coordinates. Terms of nonzero weight lie in the ideal and are ignored.
    pub fn reduce(&self, p: &Polynomial) -> Result<BTreeMap<Partition, Rational>> {
        if !Arc::ptr_eq(p.vars(), &self.vars) && p.vars().names() != self.vars.names() {
            return Err(Error::VariableMismatch);
        }
        let mut out = BTreeMap::new();
        for (d, comp) in p.homogeneous_components() {
            if d % 2 == 1 {
                continue;
            }
            if d > self.max_degree {
                return Err(Error::CapExceeded {
                    what: "oracle degree",
                    value: d as usize,
                    bound: self.max_degree as usize,
                });
            }
            let piece = &self.pieces[(d / 2) as usize];
            let index: HashMap<&Monomial, usize> = piece.reps.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let f = free_coordinates(&piece.ideal, &piece.free, coordinates(&comp, &index))?;
            for (i, lam) in piece.canonical.iter().enumerate() {
                let mut c = Rational::zero();
                for (j, x) in f.iter().enumerate() {
                    if !x.is_zero() {
                        c += x * &piece.to_canonical[j][i];
                    }
                }
                if !c.is_zero() {
                    out.insert(lam.clone(), c);
                }
            }
        }
        Ok(out)
    }

    /// `b_a · b_b` computed by multiplying polynomials and reducing.
    pub fn multiply(&self, a: &Partition, b: &Partition) -> Result<BTreeMap<Partition, Rational>> {
        self.reduce(&(&self.canonical_element(a) * &self.canonical_element(b)))
    }

    /// Product of two elements given in canonical coordinates.
    pub fn multiply_coords(
        &self,
        u: &BTreeMap<Partition, Rational>,
        v: &BTreeMap<Partition, Rational>,
    ) -> Result<BTreeMap<Partition, Rational>> {
        let lift = |w: &BTreeMap<Partition, Rational>| {
            w.iter().fold(Polynomial::zero(&self.vars), |acc, (l, c)| {
                &acc + &self.canonical_element(l).scalar_mul(c)
            })
        };
        self.reduce(&(&lift(u) * &lift(v)))
    }

    /// `m_(k,k) · b_lambda` in canonical coordinates.
    pub fn generator_times(&self, k: u32, lambda: &Partition) -> Result<BTreeMap<Partition, Rational>> {
        let g = self.symmetric(&BipartitePartition::from_vectors([(k, k)])?);
        self.reduce(&(&g * &self.canonical_element(lambda)))
    }

    /// Products of all basis pairs whose product degree is within range.
    pub fn multiplication_table(&self) -> Result<MultiplicationTable> {
        let basis: Vec<Partition> = self.pieces.iter().flat_map(|p| p.canonical.iter().cloned()).collect();
        let degree = basis.iter().map(|l| 2 * l.weight()).max().unwrap_or(0);
        let mut structure_constants = Vec::new();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                if 2 * (a.weight() + b.weight()) > self.max_degree {
                    continue;
                }
                let terms = self.multiply(a, b)?.into_iter().map(|(l, c)| (l, c.to_string())).collect();
                structure_constants.push(TableEntry { a: a.clone(), b: b.clone(), terms });
            }
        }
        Ok(MultiplicationTable { n: self.n, degree, basis, structure_constants })
    }
}

fn coordinates(p: &Polynomial, index: &HashMap<&Monomial, usize>) -> Vec<(usize, Rational)> {
    let mut row: Vec<(usize, Rational)> = p
        .terms()
        .filter_map(|(m, c)| index.get(m).map(|&i| (i, c.clone())))
        .collect();
    row.sort_by_key(|(i, _)| *i);
    row
}

fn free_coordinates(ideal: &RowEchelon, free: &[usize], row: Vec<(usize, Rational)>) -> Result<Vec<Rational>> {
    let reduced = ideal.reduce(row)?;
    let mut out = vec![Rational::zero(); free.len()];
    for (col, c) in reduced {
        let j = free.binary_search(&col).map_err(|_| Error::Verification("reduction left a pivot entry".into()))?;
        out[j] = c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    #[test]
    fn symmetrization_counts() {
        let vars = Variables::standard(["x1", "x2", "x3", "y1", "y2", "y3"]);
        let lam = BipartitePartition::from_vectors([(1, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(symmetrize(&lam, 3, &vars).num_terms(), 3);
        let lam = BipartitePartition::from_vectors([(1, 0), (0, 1)]).unwrap();
        assert_eq!(symmetrize(&lam, 3, &vars).num_terms(), 6);
        let long = BipartitePartition::from_vectors([(1, 0); 4]).unwrap();
        assert!(symmetrize(&long, 3, &vars).is_zero());
    }

    #[test]
    fn dimensions() {
        assert_eq!(WeightZeroOracle::new(1, 6).unwrap().dims(), vec![1, 0, 0, 0]);
        assert_eq!(WeightZeroOracle::new(3, 8).unwrap().dims(), vec![1, 1, 1, 0, 0]);
        assert_eq!(WeightZeroOracle::new(4, 8).unwrap().dims(), vec![1, 1, 2, 1, 0]);
    }

    #[test]
    fn small_products() {
        let o = WeightZeroOracle::new(4, 8).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(p(&[1, 1]), q(-2));
        expected.insert(p(&[2]), q(-3));
        assert_eq!(o.generator_times(1, &p(&[1])).unwrap(), expected);
        let o3 = WeightZeroOracle::new(3, 4).unwrap();
        let mut sq = BTreeMap::new();
        sq.insert(p(&[2]), q(3));
        assert_eq!(o3.multiply(&p(&[1]), &p(&[1])).unwrap(), sq);
    }

    #[test]
    fn caps() {
        assert!(matches!(WeightZeroOracle::new(6, 4), Err(Error::CapExceeded { .. })));
        assert!(matches!(WeightZeroOracle::new(3, 14), Err(Error::CapExceeded { .. })));
        let o = WeightZeroOracle::new(3, 4).unwrap();
        assert!(matches!(o.multiply(&p(&[1]), &p(&[2])), Err(Error::CapExceeded { .. })));
    }
}
