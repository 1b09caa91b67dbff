use std::fmt;

use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, Serializer};

use super::Partition;
use crate::{Error, Result};

/// A lattice vector `(a, b)` with `(a, b) != (0, 0)`.
pub type Vector = (u32, u32);

/// A finite multiset of nonzero vectors in `N x N`, kept sorted in
/// decreasing lexicographic order so that equal multisets compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BipartitePartition {
    vectors: Vec<Vector>,
}

impl BipartitePartition {
    pub fn empty() -> Self {
        BipartitePartition { vectors: Vec::new() }
    }

    pub fn from_vectors(vectors: impl IntoIterator<Item = Vector>) -> Result<Self> {
        let mut vectors: Vec<Vector> = vectors.into_iter().collect();
        if vectors.contains(&(0, 0)) {
            return Err(Error::invalid("bipartite partitions cannot contain (0,0)"));
        }
        vectors.sort_unstable_by(|a, b| b.cmp(a));
        Ok(BipartitePartition { vectors })
    }

    /// `(lambda, 0)(0, 1)^{|lambda|}`, the canonical basis label of the
    /// quotient ring.
    pub fn canonical(lambda: &Partition) -> Self {
        let mut vectors: Vec<Vector> = lambda.parts_iter().map(|p| (p, 0)).collect();
        vectors.extend(std::iter::repeat((0, 1)).take(lambda.weight() as usize));
        BipartitePartition { vectors }
    }

    /// `(lambda, 0)(0, 1)^{ones}`.
    pub fn with_row_parts(lambda: &Partition, ones: u32) -> Self {
        let mut vectors: Vec<Vector> = lambda.parts_iter().map(|p| (p, 0)).collect();
        vectors.extend(std::iter::repeat((0, 1)).take(ones as usize));
        BipartitePartition { vectors }
    }

    /// If this is `(lambda,0)(0,1)^{|lambda|}`, returns `lambda`.
    pub fn as_canonical(&self) -> Option<Partition> {
        let mut parts = Vec::new();
        let mut ones = 0;
        for &(a, b) in &self.vectors {
            match (a, b) {
                (0, 1) => ones += 1,
                (a, 0) => parts.push(a),
                _ => return None,
            }
        }
        let lambda = Partition::from_parts(&parts).ok()?;
        (lambda.weight() == ones).then_some(lambda)
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Componentwise sum `|Lambda|`.
    pub fn total(&self) -> (u32, u32) {
        self.vectors
            .iter()
            .fold((0, 0), |(s, t), &(a, b)| (s + a, t + b))
    }

    /// Total polynomial degree `sum a_i + b_i`.
    pub fn degree(&self) -> u32 {
        let (a, b) = self.total();
        a + b
    }

    /// Torus weight `sum a_i - b_i`.
    pub fn weight(&self) -> i64 {
        let (a, b) = self.total();
        a as i64 - b as i64
    }

    /// Number of copies of `(0, 1)`.
    pub fn count_01(&self) -> u32 {
        self.multiplicity((0, 1))
    }

    pub fn multiplicity(&self, v: Vector) -> u32 {
        self.vectors.iter().filter(|&&w| w == v).count() as u32
    }

    /// Distinct vectors with their multiplicities, in canonical order.
    pub fn distinct(&self) -> Vec<(Vector, u32)> {
        let mut out: Vec<(Vector, u32)> = Vec::new();
        for &v in &self.vectors {
            match out.last_mut() {
                Some((w, c)) if *w == v => *c += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    /// `(a,b) Lambda`.
    pub fn add_vector(&self, v: Vector) -> Result<Self> {
        if v == (0, 0) {
            return Err(Error::invalid("cannot add the zero vector"));
        }
        let mut vectors = self.vectors.clone();
        let pos = vectors.partition_point(|w| *w > v);
        vectors.insert(pos, v);
        Ok(BipartitePartition { vectors })
    }

    /// `Lambda \ (a,b)`.
    pub fn remove_vector(&self, v: Vector) -> Result<Self> {
        let pos = self
            .vectors
            .iter()
            .position(|&w| w == v)
            .ok_or(Error::MissingVector(v))?;
        let mut vectors = self.vectors.clone();
        vectors.remove(pos);
        Ok(BipartitePartition { vectors })
    }

    /// True when every vector lies on the diagonal `a == b`.
    pub fn is_diagonal(&self) -> bool {
        self.vectors.iter().all(|&(a, b)| a == b)
    }
}

impl fmt::Display for BipartitePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vectors.is_empty() {
            return write!(f, "()");
        }
        for (v, c) in self.distinct() {
            if c == 1 {
                write!(f, "({},{})", v.0, v.1)?;
            } else {
                write!(f, "({},{})^{}", v.0, v.1, c)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BipartitePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for BipartitePartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<[u32; 2]> = self.vectors.iter().map(|&(a, b)| [a, b]).collect();
        list.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BipartitePartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<[u32; 2]>::deserialize(deserializer)?;
        BipartitePartition::from_vectors(list.into_iter().map(|[a, b]| (a, b)))
            .map_err(serde::de::Error::custom)
    }
}

/// All bipartite partitions of `(a, b)` with at most `max_len` vectors.
pub fn bipartite_partitions_of(a: u32, b: u32, max_len: usize) -> Vec<BipartitePartition> {
    let mut candidates: Vec<Vector> = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            if (i, j) != (0, 0) {
                candidates.push((i, j));
            }
        }
    }
    candidates.sort_unstable_by(|x, y| y.cmp(x));

    fn rec(
        rest: (u32, u32),
        start: usize,
        candidates: &[Vector],
        max_len: usize,
        cur: &mut Vec<Vector>,
        out: &mut Vec<BipartitePartition>,
    ) {
        if rest == (0, 0) {
            out.push(BipartitePartition { vectors: cur.clone() });
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for (idx, &(i, j)) in candidates.iter().enumerate().skip(start) {
            if i <= rest.0 && j <= rest.1 {
                cur.push((i, j));
                rec((rest.0 - i, rest.1 - j), idx, candidates, max_len, cur, out);
                cur.pop();
            }
        }
    }

    let mut out = Vec::new();
    rec((a, b), 0, &candidates, max_len, &mut Vec::new(), &mut out);
    out
}

/// All bipartite partitions of total degree exactly `d`.
pub fn bipartite_partitions_of_degree(d: u32, max_len: usize) -> Vec<BipartitePartition> {
    (0..=d)
        .flat_map(|a| bipartite_partitions_of(a, d - a, max_len))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(v: &[Vector]) -> BipartitePartition {
        BipartitePartition::from_vectors(v.iter().copied()).unwrap()
    }

    #[test]
    fn add_remove_multiplicity() {
        assert_eq!(BipartitePartition::empty().add_vector((1, 0)).unwrap(), bp(&[(1, 0)]));
        assert_eq!(bp(&[(1, 0), (0, 1)]).remove_vector((0, 1)).unwrap(), bp(&[(1, 0)]));
        assert_eq!(bp(&[(1, 0), (1, 0), (0, 1)]).multiplicity((1, 0)), 2);
        assert!(matches!(
            bp(&[(1, 0)]).remove_vector((0, 1)),
            Err(Error::MissingVector((0, 1)))
        ));
        assert!(BipartitePartition::from_vectors([(0, 0)]).is_err());
    }

    #[test]
    fn length_and_total_shift() {
        let lam = bp(&[(2, 1), (0, 1), (1, 1)]);
        let smaller = lam.remove_vector((2, 1)).unwrap();
        assert_eq!(smaller.len(), lam.len() - 1);
        assert_eq!(smaller.total(), (1, 2));
        assert_eq!(lam.total(), (3, 3));
        assert_eq!(lam.weight(), 0);
    }

    #[test]
    fn canonical_labels() {
        let lam = Partition::from_parts(&[2, 1]).unwrap();
        let c = BipartitePartition::canonical(&lam);
        assert_eq!(c, bp(&[(2, 0), (1, 0), (0, 1), (0, 1), (0, 1)]));
        assert_eq!(c.as_canonical(), Some(lam));
        assert_eq!(bp(&[(1, 1)]).as_canonical(), None);
        assert_eq!(bp(&[(1, 0)]).as_canonical(), None);
        assert_eq!(c.to_string(), "(2,0)(1,0)(0,1)^3");
    }

    #[test]
    fn enumeration_counts() {
        // (1,1): (1,1), (1,0)(0,1)
        assert_eq!(bipartite_partitions_of(1, 1, usize::MAX).len(), 2);
        // (2,0): (2,0), (1,0)^2
        assert_eq!(bipartite_partitions_of(2, 0, usize::MAX).len(), 2);
        // total degree 2: (2,0),(1,0)^2,(1,1),(1,0)(0,1),(0,2),(0,1)^2
        assert_eq!(bipartite_partitions_of_degree(2, usize::MAX).len(), 6);
        assert_eq!(bipartite_partitions_of(2, 2, 1).len(), 1);
    }

    #[test]
    fn serde_vector_list() {
        let lam = bp(&[(0, 1), (1, 0)]);
        let s = serde_json::to_string(&lam).unwrap();
        assert_eq!(s, "[[1,0],[0,1]]");
        assert_eq!(serde_json::from_str::<BipartitePartition>(&s).unwrap(), lam);
    }
}
