use std::cmp::Ordering;
use std::fmt;

use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, Serializer};

use crate::{Error, Result};

/// An integer partition stored by multiplicities.
///
/// `mult[i]` is the number of parts equal to `i + 1`; trailing zeros are
/// always trimmed so equal partitions have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    mult: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { mult: Vec::new() }
    }

    pub fn from_multiplicities(mut mult: Vec<u32>) -> Self {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Partition { mult }
    }

    /// Builds a partition from a list of parts in any order. Zero parts are
    /// rejected.
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        let mut mult = Vec::new();
        for &p in parts {
            if p == 0 {
                return Err(Error::invalid("partition parts must be positive"));
            }
            let i = p as usize - 1;
            if mult.len() <= i {
                mult.resize(i + 1, 0);
            }
            mult[i] += 1;
        }
        Ok(Partition { mult })
    }

    /// `(1^n)`.
    pub fn ones(n: u32) -> Self {
        Partition::from_multiplicities(vec![n])
    }

    /// Multiplicity of the part `part` (the paper-style `alpha_part`).
    /// Part 0 has multiplicity 0 by convention.
    pub fn mult(&self, part: u32) -> u32 {
        if part == 0 {
            return 0;
        }
        self.mult.get(part as usize - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// Largest part size with nonzero multiplicity, or 0 for the empty partition.
    pub fn largest_part(&self) -> u32 {
        self.mult.len() as u32
    }

    /// Number of parts.
    pub fn len(&self) -> u32 {
        self.mult.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.mult
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u32 + 1) * a)
            .sum()
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        self.parts_iter().collect()
    }

    pub fn parts_iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.mult
            .iter()
            .enumerate()
            .rev()
            .flat_map(|(i, &a)| std::iter::repeat(i as u32 + 1).take(a as usize))
    }

    /// Multiplicity order: `self ⪯ other` iff every multiplicity of `self` is
    /// at most the corresponding multiplicity of `other`. Not the dominance
    /// order.
    pub fn precedes(&self, other: &Partition) -> bool {
        self.mult.len() <= other.mult.len()
            && self.mult.iter().zip(&other.mult).all(|(a, b)| a <= b)
    }

    /// `self ∪ part`.
    pub fn with_part(&self, part: u32) -> Partition {
        assert!(part > 0, "parts are positive");
        let mut mult = self.mult.clone();
        let i = part as usize - 1;
        if mult.len() <= i {
            mult.resize(i + 1, 0);
        }
        mult[i] += 1;
        Partition { mult }
    }

    /// Removes one copy of `part`, or returns `None` if it does not occur.
    pub fn without_part(&self, part: u32) -> Option<Partition> {
        if self.mult(part) == 0 {
            return None;
        }
        let mut mult = self.mult.clone();
        mult[part as usize - 1] -= 1;
        Some(Partition::from_multiplicities(mult))
    }

    /// All `mu ⪯ self`, in a deterministic order.
    pub fn sub_multisets(&self) -> Vec<Partition> {
        let mut out = vec![Vec::new()];
        for &a in &self.mult {
            let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
            for prefix in &out {
                for b in 0..=a {
                    let mut m: Vec<u32> = prefix.clone();
                    m.push(b);
                    next.push(m);
                }
            }
            out = next;
        }
        let mut parts: Vec<Partition> = out.into_iter().map(Partition::from_multiplicities).collect();
        parts.sort();
        parts
    }

    /// `sum_i (alpha_i - beta_i)` style difference of multiplicities; `None`
    /// unless `sub ⪯ self`.
    pub fn difference(&self, sub: &Partition) -> Option<Partition> {
        if !sub.precedes(self) {
            return None;
        }
        let mult = self
            .mult
            .iter()
            .enumerate()
            .map(|(i, &a)| a - sub.mult.get(i).copied().unwrap_or(0))
            .collect();
        Some(Partition::from_multiplicities(mult))
    }
}

/// All partitions of `n`, reverse-lexicographic in the part lists:
/// `(3), (2,1), (1,1,1)`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_parts(cur).expect("positive parts"));
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` whose parts are all at most `max_part`.
pub fn partitions_with_max_part(n: u32, max_part: u32) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(|p| p.largest_part() <= max_part)
        .collect()
}

/// Number of partitions of `n`, by the usual dynamic program.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            table[total] += table[total - part];
        }
    }
    table[n]
}

impl Ord for Partition {
    /// Weight first, then reverse-lexicographic on the part lists so that
    /// `(3) < (2,1) < (1,1,1)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts_iter().cmp(self.parts_iter()))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::from_parts(&parts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(8).len(), 22);
    }

    #[test]
    fn enumeration_matches_count_and_is_sorted() {
        for n in 0..=15 {
            let parts = partitions_of(n);
            assert_eq!(parts.len() as u64, partition_count(n));
            assert!(parts.windows(2).all(|w| w[0] < w[1]));
            assert!(parts.iter().all(|q| q.weight() == n));
        }
    }

    #[test]
    fn multiplicity_order() {
        assert!(Partition::empty().precedes(&p(&[4, 2])));
        assert!(p(&[1]).precedes(&p(&[1, 1])));
        assert!(!p(&[2]).precedes(&p(&[1, 1])));
        assert!(!p(&[1, 1]).precedes(&p(&[1])));
    }

    #[test]
    fn length_weight_and_parts() {
        let lam = p(&[1, 3, 1, 2]);
        assert_eq!(lam.parts(), vec![3, 2, 1, 1]);
        assert_eq!(lam.len(), 4);
        assert_eq!(lam.weight(), 7);
        assert_eq!(lam.mult(1), 2);
        assert_eq!(lam.mult(9), 0);
        assert_eq!(lam.to_string(), "[3,2,1,1]");
        assert_eq!(lam.without_part(3).unwrap(), p(&[2, 1, 1]));
        assert!(lam.without_part(4).is_none());
        assert_eq!(p(&[2]).without_part(2).unwrap(), Partition::empty());
        assert_eq!(lam.with_part(5).weight(), 12);
    }

    #[test]
    fn sub_multisets_count() {
        let lam = p(&[2, 1, 1]);
        let subs = lam.sub_multisets();
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|m| m.precedes(&lam)));
        assert_eq!(lam.difference(&p(&[1])).unwrap(), p(&[2, 1]));
        assert!(lam.difference(&p(&[3])).is_none());
    }

    #[test]
    fn serde_as_part_list() {
        let lam = p(&[3, 1, 1]);
        let s = serde_json::to_string(&lam).unwrap();
        assert_eq!(s, "[3,1,1]");
        let back: Partition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, lam);
        assert!(serde_json::from_str::<Partition>("[2,0]").is_err());
    }
}
