//! The torus-fixed coordinate ring at `n` points, as the truncation of the
//! quotient `S̄` to basis labels with `l(lambda) + |lambda| <= n`.
//!
//! Basis element `b_lambda = m̄_{(lambda,0)(0,1)^{|lambda|}}` has degree
//! `2|lambda|`.

mod generators;
pub mod oracle;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num_traits::{One, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::combinatorics::{partitions_of, BipartitePartition, Partition};
use crate::exactalg::Rational;
use crate::macmahon::{Ambient, MacMahonVector};
use crate::{Error, Result};

use generators::{add_into, CanonicalRing, Coeffs};
pub use generators::GeneratorPolynomial;
pub use oracle::WeightZeroOracle;

static RINGS: LazyLock<RwLock<HashMap<Option<u32>, Arc<CanonicalRing>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn ring(bound: Option<u32>) -> Arc<CanonicalRing> {
    if let Some(r) = RINGS.read().expect("ring lock").get(&bound) {
        return r.clone();
    }
    RINGS
        .write()
        .expect("ring lock")
        .entry(bound)
        .or_insert_with(|| Arc::new(CanonicalRing::new(bound)))
        .clone()
}

/// Whether `b_lambda` survives at `n` points.
pub fn is_admissible(lambda: &Partition, n: u32) -> bool {
    lambda.len() + lambda.weight() <= n
}

/// All admissible labels, by degree and then partition order.
pub fn admissible_basis(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(|d| partitions_of(d).into_iter().filter(move |l| is_admissible(l, n))).collect()
}

/// `sum c_lambda b_lambda` at `n` points.
#[derive(Clone, PartialEq, Eq)]
pub struct FixedRingVector {
    n: u32,
    coeffs: Coeffs,
}

impl FixedRingVector {
    pub fn zero(n: u32) -> Self {
        FixedRingVector { n, coeffs: Coeffs::new() }
    }

    pub fn one(n: u32) -> Self {
        let mut v = Self::zero(n);
        v.coeffs.insert(Partition::empty(), Rational::one());
        v
    }

    pub fn basis(n: u32, lambda: &Partition) -> Result<Self> {
        let mut v = Self::zero(n);
        v.add_term(lambda.clone(), Rational::one())?;
        Ok(v)
    }

    /// The generator `m̄_(k,k) = (-1)^k b_(k)`, zero once `k >= n`.
    pub fn generator(n: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("generator index must be positive"));
        }
        let mut v = Self::zero(n);
        let lam = Partition::from_parts(&[k])?;
        if is_admissible(&lam, n) {
            let s = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            v.coeffs.insert(lam, s);
        }
        Ok(v)
    }

    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Result<Self> {
        let mut v = Self::zero(n);
        for (lam, c) in terms {
            v.add_term(lam, c)?;
        }
        Ok(v)
    }

    pub fn add_term(&mut self, lambda: Partition, c: Rational) -> Result<()> {
        if !is_admissible(&lambda, self.n) {
            return Err(Error::invalid(format!(
                "{lambda} is not a basis label at n = {} (needs l + |lambda| <= n)",
                self.n
            )));
        }
        add_into(&mut self.coeffs, &lambda, c);
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        FixedRingVector { n: self.n, coeffs: self.coeffs.iter().map(|(k, x)| (k.clone(), x * c)).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_n(self, other)?;
        let mut out = self.clone();
        for (k, x) in &other.coeffs {
            add_into(&mut out.coeffs, k, x.clone());
        }
        Ok(out)
    }

    /// `Some(2d)` when every term has `|lambda| = d`; zero gives `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.coeffs.keys().map(|l| 2 * l.weight());
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    /// Back to the quotient `S̄`, as canonical elements.
    pub fn to_sbar(&self) -> MacMahonVector {
        let mut out = MacMahonVector::zero(Ambient::SBar);
        for (lam, c) in &self.coeffs {
            out.add_term(BipartitePartition::canonical(lam), c.clone())
                .expect("canonical labels are accepted");
        }
        out
    }
}

fn same_n(u: &FixedRingVector, v: &FixedRingVector) -> Result<()> {
    if u.n != v.n {
        return Err(Error::invalid(format!("different numbers of points: {} and {}", u.n, v.n)));
    }
    Ok(())
}

impl fmt::Display for FixedRingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(l, c)| format!("{c}*b{l}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FixedRingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] {self}", self.n)
    }
}

struct Terms<'a>(&'a Coeffs);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (lam, c) in self.0 {
            seq.serialize_element(&(lam, c.to_string()))?;
        }
        seq.end()
    }
}

impl Serialize for FixedRingVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FixedRingVector", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &Terms(&self.coeffs))?;
        st.end()
    }
}

/// Drops the canonical terms of `u` that vanish at `n` points.
pub fn truncate(u: &MacMahonVector, n: u32) -> Result<FixedRingVector> {
    if u.ambient() != Ambient::SBar {
        return Err(Error::invalid("truncate expects canonical quotient elements"));
    }
    let mut out = FixedRingVector::zero(n);
    for (lam, c) in u.canonical_terms() {
        if is_admissible(&lam, n) {
            out.coeffs.insert(lam, c);
        }
    }
    Ok(out)
}

/// Product at `n` points, computed through the generators.
pub fn fr_multiply(u: &FixedRingVector, v: &FixedRingVector) -> Result<FixedRingVector> {
    same_n(u, v)?;
    let coeffs = ring(Some(u.n)).multiply(&u.coeffs, &v.coeffs)?;
    Ok(FixedRingVector { n: u.n, coeffs })
}

/// `m̄_(k,k) · u`, one generator step.
pub fn generator_times(k: u32, u: &FixedRingVector) -> Result<FixedRingVector> {
    let coeffs = ring(Some(u.n)).times_generator(k, &u.coeffs)?;
    Ok(FixedRingVector { n: u.n, coeffs })
}

/// `b_lambda` as a polynomial in `g_k = m̄_(k,k)`, `1 <= k <= n-1`.
pub fn express_in_generators(lambda: &Partition, n: u32) -> Result<GeneratorPolynomial> {
    ring(Some(n)).express(lambda)
}

/// `b_lambda` in `S̄` as a polynomial in all the `g_k`.
pub fn express_in_generators_sbar(lambda: &Partition) -> Result<GeneratorPolynomial> {
    ring(None).express(lambda)
}

/// Evaluates a generator polynomial at `n` points.
pub fn evaluate_generators(p: &GeneratorPolynomial, n: u32) -> Result<FixedRingVector> {
    let r = ring(Some(n));
    let mut one = Coeffs::new();
    one.insert(Partition::empty(), Rational::one());
    let mut out = Coeffs::new();
    for (rho, c) in p.terms() {
        for (lam, x) in r.apply_monomial(rho, &one)? {
            add_into(&mut out, &lam, c * x);
        }
    }
    Ok(FixedRingVector { n, coeffs: out })
}

/// Product of canonical elements in `S̄` itself, without truncation.
pub fn sbar_multiply(u: &MacMahonVector, v: &MacMahonVector) -> Result<MacMahonVector> {
    if u.ambient() != Ambient::SBar || v.ambient() != Ambient::SBar {
        return Err(Error::invalid("sbar_multiply expects canonical quotient elements"));
    }
    let coeffs = ring(None).multiply(&u.canonical_terms(), &v.canonical_terms())?;
    let mut out = MacMahonVector::zero(Ambient::SBar);
    for (lam, c) in coeffs {
        out.add_term(BipartitePartition::canonical(&lam), c)?;
    }
    Ok(out)
}

/// Dimensions of the degree `0, 2, 4, ...` pieces, up to the last nonzero one.
pub fn hilbert_series(n: u32) -> Vec<usize> {
    let mut dims = Vec::new();
    for d in 0..=n {
        let c = partitions_of(d).iter().filter(|l| is_admissible(l, n)).count();
        if c == 0 {
            break;
        }
        dims.push(c);
    }
    dims
}

/// One row of a multiplication table: `b_a · b_b`.
#[derive(Debug, Clone, Serialize)]
pub struct TableEntry {
    pub a: Partition,
    pub b: Partition,
    pub terms: Vec<(Partition, String)>,
}

/// Structure constants on the canonical basis.
#[derive(Debug, Clone, Serialize)]
pub struct MultiplicationTable {
    pub n: u32,
    /// Top degree of the ring.
    pub degree: u32,
    pub basis: Vec<Partition>,
    pub structure_constants: Vec<TableEntry>,
}

impl MultiplicationTable {
    pub fn from_products(
        n: u32,
        basis: Vec<Partition>,
        mut product: impl FnMut(&Partition, &Partition) -> Result<BTreeMap<Partition, Rational>>,
    ) -> Result<Self> {
        let degree = basis.iter().map(|l| 2 * l.weight()).max().unwrap_or(0);
        let mut structure_constants = Vec::new();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                let terms = product(a, b)?
                    .into_iter()
                    .map(|(l, c)| (l, c.to_string()))
                    .collect();
                structure_constants.push(TableEntry { a: a.clone(), b: b.clone(), terms });
            }
        }
        Ok(MultiplicationTable { n, degree, basis, structure_constants })
    }
}

/// The full table at `n` points computed through the generators.
pub fn multiplication_table(n: u32) -> Result<MultiplicationTable> {
    MultiplicationTable::from_products(n, admissible_basis(n), |a, b| {
        let p = fr_multiply(&FixedRingVector::basis(n, a)?, &FixedRingVector::basis(n, b)?)?;
        Ok(p.coeffs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::macmahon::expand_kl;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    fn v(n: u32, terms: &[(&[u32], i64)]) -> FixedRingVector {
        FixedRingVector::from_terms(n, terms.iter().map(|(l, c)| (p(l), q(*c)))).unwrap()
    }

    #[test]
    fn truncation() {
        let u = MacMahonVector::canonical(&p(&[2]));
        assert_eq!(truncate(&u, 3).unwrap(), v(3, &[(&[2], 1)]));
        assert!(truncate(&MacMahonVector::canonical(&p(&[1, 1])), 3).unwrap().is_zero());
        assert!(truncate(&expand_kl(1, 1, &p(&[1])).unwrap(), 2).unwrap().is_zero());
        assert!(FixedRingVector::basis(3, &p(&[1, 1])).is_err());
    }

    #[test]
    fn square_of_first_generator() {
        let g = FixedRingVector::generator(4, 1).unwrap();
        assert_eq!(g, v(4, &[(&[1], -1)]));
        assert_eq!(fr_multiply(&g, &g).unwrap(), v(4, &[(&[1, 1], 2), (&[2], 3)]));
        let g3 = FixedRingVector::generator(3, 1).unwrap();
        assert_eq!(fr_multiply(&g3, &g3).unwrap(), v(3, &[(&[2], 3)]));
    }

    #[test]
    fn generator_expressions() {
        assert_eq!(express_in_generators(&Partition::empty(), 3).unwrap().to_string(), "1");
        for n in 2..=5 {
            assert_eq!(express_in_generators(&p(&[1]), n).unwrap().to_string(), "-g1");
        }
        for n in 2..=6 {
            for lam in admissible_basis(n) {
                let e = express_in_generators(&lam, n).unwrap();
                assert_eq!(evaluate_generators(&e, n).unwrap(), FixedRingVector::basis(n, &lam).unwrap());
                assert!(e.terms().all(|(rho, _)| rho.largest_part() < n));
            }
        }
    }

    #[test]
    fn unit_and_commutativity() {
        let n = 5;
        let basis = admissible_basis(n);
        let one = FixedRingVector::one(n);
        for a in &basis {
            let ba = FixedRingVector::basis(n, a).unwrap();
            assert_eq!(fr_multiply(&ba, &one).unwrap(), ba);
            for b in &basis {
                let bb = FixedRingVector::basis(n, b).unwrap();
                assert_eq!(fr_multiply(&ba, &bb).unwrap(), fr_multiply(&bb, &ba).unwrap());
            }
        }
    }

    #[test]
    fn hilbert_series_small() {
        assert_eq!(hilbert_series(1), vec![1]);
        assert_eq!(hilbert_series(3), vec![1, 1, 1]);
        assert_eq!(hilbert_series(4), vec![1, 1, 2, 1]);
        for n in 1..=9 {
            let total: usize = hilbert_series(n).iter().sum();
            assert_eq!(total as u64, crate::combinatorics::partition_count(n));
            assert_eq!(admissible_basis(n).len(), total);
        }
    }

    #[test]
    fn sbar_products_truncate() {
        let a = MacMahonVector::canonical(&p(&[1]));
        let b = MacMahonVector::canonical(&p(&[1, 1]));
        let prod = sbar_multiply(&a, &b).unwrap();
        for n in 1..=6 {
            let lhs = truncate(&prod, n).unwrap();
            let rhs = fr_multiply(&truncate(&a, n).unwrap(), &truncate(&b, n).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn table_shape() {
        let t = multiplication_table(3).unwrap();
        assert_eq!(t.basis.len(), 3);
        assert_eq!(t.structure_constants.len(), 6);
        assert_eq!(t.degree, 4);
    }
}
