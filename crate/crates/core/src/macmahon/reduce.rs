//! Rewriting quotient elements `m̄_Lambda` in the canonical basis.
//!
//! Two steps. First every label with an off-diagonal vector `v` is removed
//! with the multiplication rule for `m_v m_{Lambda \ v}`, using `m̄_v = 0`; this
//! shortens the labels, so it terminates, and leaves a combination of
//! diagonal labels `(a,a)(b,b)...`, which are indexed by partitions of the
//! half-degree and form a basis of each degree piece. Second, the canonical
//! elements are themselves expanded in the diagonal basis and the resulting
//! square matrix is inverted once per degree.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use num_traits::{One, Zero};

use super::{Ambient, MacMahonVector};
use crate::combinatorics::{partitions_of, BipartitePartition, Partition};
use crate::exactalg::{invert, Rational};
use crate::{Error, Result};

type Diagonal = Arc<BTreeMap<Partition, Rational>>;

struct DegreeChange {
    labels: Vec<Partition>,
    /// `inverse[i][j]`: coefficient of canonical `labels[i]` in diagonal `labels[j]`.
    inverse: Vec<Vec<Rational>>,
}

/// Memoized rewriting into the canonical basis of the quotient.
#[derive(Default)]
pub struct SbarReducer {
    memo: RwLock<HashMap<BipartitePartition, Diagonal>>,
    change: RwLock<HashMap<u32, Arc<DegreeChange>>>,
}

static GLOBAL: LazyLock<SbarReducer> = LazyLock::new(SbarReducer::default);

/// Projects an element of `S` (or an unreduced quotient element) to the
/// canonical basis of the quotient, using a shared process-wide memo.
pub fn sbar_project(u: &MacMahonVector) -> Result<MacMahonVector> {
    GLOBAL.project(u)
}

impl SbarReducer {
    pub fn new() -> Self {
        SbarReducer::default()
    }

    pub fn global() -> &'static SbarReducer {
        &GLOBAL
    }

    pub fn project(&self, u: &MacMahonVector) -> Result<MacMahonVector> {
        if u.ambient() == Ambient::SBar {
            return Ok(u.clone());
        }
        let mut by_degree: BTreeMap<u32, BTreeMap<Partition, Rational>> = BTreeMap::new();
        for (lam, c) in u.terms() {
            if lam.weight() != 0 {
                continue;
            }
            let d = lam.degree() / 2;
            let acc = by_degree.entry(d).or_default();
            for (diag, x) in self.to_diagonal(lam).iter() {
                *acc.entry(diag.clone()).or_insert_with(Rational::zero) += c * x;
            }
        }
        let mut out = MacMahonVector::zero(Ambient::SBar);
        for (d, diag) in by_degree {
            let change = self.degree_change(d)?;
            for (i, lab) in change.labels.iter().enumerate() {
                let mut c = Rational::zero();
                for (j, dj) in change.labels.iter().enumerate() {
                    if let Some(x) = diag.get(dj) {
                        c += &change.inverse[i][j] * x;
                    }
                }
                out.add_term(BipartitePartition::canonical(lab), c)?;
            }
        }
        Ok(out)
    }

    /// Expansion of `m̄_Lambda` over diagonal labels, keyed by the partition
    /// `(a, b, ...)` of `(a,a)(b,b)...`. Labels of nonzero weight give zero.
    pub fn to_diagonal(&self, lam: &BipartitePartition) -> Diagonal {
        if let Some(d) = self.memo.read().expect("memo lock").get(lam) {
            return d.clone();
        }
        let result = Arc::new(self.compute_diagonal(lam));
        self.memo
            .write()
            .expect("memo lock")
            .insert(lam.clone(), result.clone());
        result
    }

    fn compute_diagonal(&self, lam: &BipartitePartition) -> BTreeMap<Partition, Rational> {
        let mut out = BTreeMap::new();
        if lam.weight() != 0 {
            return out;
        }
        let Some(&v) = lam.vectors().iter().find(|(a, b)| a != b) else {
            let parts: Vec<u32> = lam.vectors().iter().map(|&(a, _)| a).collect();
            out.insert(Partition::from_parts(&parts).expect("diagonal parts positive"), Rational::one());
            return out;
        };
        // 0 = m̄_v m̄_rest = (c_v+1) m̄_lam + sum_u (c_{v+u}+1) m̄_{(v+u) rest\u}
        let rest = lam.remove_vector(v).expect("v occurs in lam");
        let lead = Rational::from_integer((rest.multiplicity(v) + 1).into());
        let scale = -lead.recip();
        for (u, _) in rest.distinct() {
            let w = (v.0 + u.0, v.1 + u.1);
            let c = Rational::from_integer((rest.multiplicity(w) + 1).into()) * &scale;
            let target = rest
                .remove_vector(u)
                .and_then(|r| r.add_vector(w))
                .expect("u occurs in rest");
            for (diag, x) in self.to_diagonal(&target).iter() {
                *out.entry(diag.clone()).or_insert_with(Rational::zero) += &c * x;
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    fn degree_change(&self, d: u32) -> Result<Arc<DegreeChange>> {
        if let Some(c) = self.change.read().expect("change lock").get(&d) {
            return Ok(c.clone());
        }
        let labels = partitions_of(d);
        let index: HashMap<&Partition, usize> = labels.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = labels.len();
        // forward[j][i]: coefficient of diagonal j in canonical i
        let mut forward = vec![vec![Rational::zero(); n]; n];
        for (i, lab) in labels.iter().enumerate() {
            for (diag, x) in self.to_diagonal(&BipartitePartition::canonical(lab)).iter() {
                forward[index[diag]][i] = x.clone();
            }
        }
        let inverse = invert(&forward).map_err(|_| {
            Error::Verification(format!("canonical elements of degree {} are dependent", 2 * d))
        })?;
        let change = Arc::new(DegreeChange { labels, inverse });
        self.change
            .write()
            .expect("change lock")
            .insert(d, change.clone());
        Ok(change)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Vector;
    use crate::exactalg::q;

    fn bp(v: &[Vector]) -> BipartitePartition {
        BipartitePartition::from_vectors(v.iter().copied()).unwrap()
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    fn project(v: &[Vector]) -> MacMahonVector {
        sbar_project(&MacMahonVector::monomial(bp(v))).unwrap()
    }

    #[test]
    fn canonical_elements_are_fixed() {
        for d in 0..=5 {
            for lam in partitions_of(d) {
                let c = BipartitePartition::canonical(&lam);
                assert_eq!(
                    sbar_project(&MacMahonVector::monomial(c)).unwrap(),
                    MacMahonVector::canonical(&lam)
                );
            }
        }
    }

    #[test]
    fn diagonal_generator_of_degree_two() {
        assert_eq!(project(&[(1, 1)]), MacMahonVector::canonical(&p(&[1])).scalar_mul(&q(-1)));
    }

    #[test]
    fn mixed_label() {
        let expected = MacMahonVector::from_terms(
            Ambient::SBar,
            [
                (BipartitePartition::canonical(&p(&[1, 1])), q(-2)),
                (BipartitePartition::canonical(&p(&[2])), q(-1)),
            ],
        )
        .unwrap();
        assert_eq!(project(&[(1, 1), (1, 0), (0, 1)]), expected);
    }

    #[test]
    fn nonzero_weight_vanishes() {
        assert!(project(&[(2, 1)]).is_zero());
        assert!(project(&[(1, 0), (1, 0), (0, 1)]).is_zero());
    }
}
