//! MacMahon symmetric functions in two sets of variables, written in the
//! monomial basis `m_Lambda`, and the quotient by the off-diagonal power
//! sums `m_(a,b)`, `a != b`.

pub mod formulas;
mod reduce;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

pub use formulas::{expand_kl, expand_kl_general, expand_kl_large_k, generator_times_basis};
pub use reduce::{sbar_project, SbarReducer};

use crate::combinatorics::{BipartitePartition, Partition, Vector};
use crate::exactalg::{Monomial, Polynomial, Rational, Variables};
use crate::{Error, Result};

/// Which ring a [`MacMahonVector`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// The full ring `S`.
    S,
    /// The quotient, written in the canonical basis
    /// `m̄_{(lambda,0)(0,1)^{|lambda|}}`.
    SBar,
    /// The quotient, with arbitrary monomial labels still to be rewritten.
    SBarUnreduced,
}

/// A linear combination of monomial symmetric functions.
#[derive(Clone, PartialEq, Eq)]
pub struct MacMahonVector {
    ambient: Ambient,
    coeffs: BTreeMap<BipartitePartition, Rational>,
}

impl MacMahonVector {
    pub fn zero(ambient: Ambient) -> Self {
        MacMahonVector { ambient, coeffs: BTreeMap::new() }
    }

    /// `m_Lambda` in `S`.
    pub fn monomial(lam: BipartitePartition) -> Self {
        let mut v = MacMahonVector::zero(Ambient::S);
        v.coeffs.insert(lam, Rational::one());
        v
    }

    /// The unit `m_∅`.
    pub fn one(ambient: Ambient) -> Self {
        let mut v = MacMahonVector::zero(ambient);
        v.coeffs.insert(BipartitePartition::empty(), Rational::one());
        v
    }

    /// The canonical basis element `m̄_{(lambda,0)(0,1)^{|lambda|}}`.
    pub fn canonical(lambda: &Partition) -> Self {
        let mut v = MacMahonVector::zero(Ambient::SBar);
        v.coeffs.insert(BipartitePartition::canonical(lambda), Rational::one());
        v
    }

    pub fn from_terms(
        ambient: Ambient,
        terms: impl IntoIterator<Item = (BipartitePartition, Rational)>,
    ) -> Result<Self> {
        let mut v = MacMahonVector::zero(ambient);
        for (k, c) in terms {
            v.add_term(k, c)?;
        }
        Ok(v)
    }

    pub fn add_term(&mut self, key: BipartitePartition, c: Rational) -> Result<()> {
        if self.ambient == Ambient::SBar && key.as_canonical().is_none() {
            return Err(Error::invalid(format!("{key} is not a canonical basis label")));
        }
        if c.is_zero() {
            return Ok(());
        }
        let e = self.coeffs.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, key: &BipartitePartition) -> Rational {
        self.coeffs.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BipartitePartition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of a canonical basis element in an `SBar` vector.
    pub fn canonical_coeff(&self, lambda: &Partition) -> Rational {
        self.coeff(&BipartitePartition::canonical(lambda))
    }

    /// Terms of an `SBar` vector keyed by the partition of their label.
    pub fn canonical_terms(&self) -> BTreeMap<Partition, Rational> {
        self.coeffs
            .iter()
            .map(|(k, v)| (k.as_canonical().expect("canonical label"), v.clone()))
            .collect()
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MacMahonVector::zero(self.ambient);
        }
        MacMahonVector {
            ambient: self.ambient,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &MacMahonVector) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::invalid("adding MacMahon vectors from different rings"));
        }
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone())?;
        }
        Ok(out)
    }

    /// Reinterprets an `S` vector as an unreduced element of the quotient.
    pub fn to_unreduced_quotient(&self) -> Self {
        MacMahonVector { ambient: Ambient::SBarUnreduced, coeffs: self.coeffs.clone() }
    }

    /// Largest number of vectors in a label.
    pub fn max_len(&self) -> usize {
        self.coeffs.keys().map(BipartitePartition::len).max().unwrap_or(0)
    }

    /// `Some(d)` if every label has total polynomial degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.coeffs.keys().map(BipartitePartition::degree);
        let first = match it.next() {
            Some(d) => d,
            None => return Some(0),
        };
        it.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for MacMahonVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let name = if self.ambient == Ambient::S { "m" } else { "mbar" };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, v)| format!("{v}*{name}{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MacMahonVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for MacMahonVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let ring = match self.ambient {
            Ambient::S => "S",
            Ambient::SBar => "Sbar",
            Ambient::SBarUnreduced => "Sbar-unreduced",
        };
        let terms: Vec<(&BipartitePartition, String)> =
            self.coeffs.iter().map(|(k, v)| (k, v.to_string())).collect();
        let mut s = serializer.serialize_struct("MacMahonVector", 2)?;
        s.serialize_field("ring", ring)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

static VARS: LazyLock<Mutex<HashMap<usize, Arc<Variables>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The variables `x1..xN, y1..yN`, all of degree 1. Repeated calls with the
/// same `N` share one allocation.
pub fn pair_variables(n: usize) -> Arc<Variables> {
    VARS.lock()
        .expect("variable table lock")
        .entry(n)
        .or_insert_with(|| {
            let names: Vec<String> = (1..=n)
                .map(|i| format!("x{i}"))
                .chain((1..=n).map(|i| format!("y{i}")))
                .collect();
            Variables::standard(names)
        })
        .clone()
}

fn next_permutation(v: &mut [Vector]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Exponent vectors of all monomials of `m_Lambda` in `N` variable pairs.
pub fn realize_exponents(lam: &BipartitePartition, n: usize) -> Vec<Vec<u32>> {
    if lam.len() > n {
        return Vec::new();
    }
    let mut slots: Vec<Vector> = lam.vectors().to_vec();
    slots.resize(n, (0, 0));
    slots.sort_unstable();
    let mut out = Vec::new();
    loop {
        let mut e = vec![0u32; 2 * n];
        for (i, &(a, b)) in slots.iter().enumerate() {
            e[i] = a;
            e[n + i] = b;
        }
        out.push(e);
        if !next_permutation(&mut slots) {
            break;
        }
    }
    out
}

/// `m_Lambda` as a polynomial in `x1..xN, y1..yN`; zero when `l(Lambda) > N`.
pub fn realize(lam: &BipartitePartition, n: usize) -> Polynomial {
    let vars = pair_variables(n);
    Polynomial::from_terms(
        &vars,
        realize_exponents(lam, n)
            .into_iter()
            .map(|e| (Monomial(e), Rational::one())),
    )
}

/// Realizes every term of an `S` vector in `N` variable pairs.
pub fn realize_vector(v: &MacMahonVector, n: usize) -> Polynomial {
    let vars = pair_variables(n);
    Polynomial::from_terms(
        &vars,
        v.terms().flat_map(|(lam, c)| {
            realize_exponents(lam, n)
                .into_iter()
                .map(move |e| (Monomial(e), c.clone()))
        }),
    )
}

fn pair_count(p: &Polynomial) -> Result<usize> {
    let vars = p.vars();
    let n = vars.len() / 2;
    if vars.len() % 2 != 0 || **vars != *pair_variables(n) {
        return Err(Error::invalid("expected a polynomial in x1..xN, y1..yN"));
    }
    Ok(n)
}

fn permute_pairs(e: &[u32], perm: &[usize]) -> Vec<u32> {
    let n = perm.len();
    let mut out = vec![0; 2 * n];
    for i in 0..n {
        out[perm[i]] = e[i];
        out[n + perm[i]] = e[n + i];
    }
    out
}

/// Writes a polynomial symmetric under permutations of the variable pairs
/// `(x_i, y_i)` in the monomial basis. Symmetry is checked on the generators
/// `(1 2)` and `(1 2 .. N)` of the symmetric group.
pub fn express_in_monomials(p: &Polynomial) -> Result<MacMahonVector> {
    let n = pair_count(p)?;
    if n >= 2 {
        let swap: Vec<usize> = (0..n).map(|i| match i { 0 => 1, 1 => 0, _ => i }).collect();
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        for perm in [&swap, &cycle] {
            for (m, c) in p.terms() {
                if p.coefficient(&Monomial(permute_pairs(&m.0, perm))) != *c {
                    return Err(Error::NotSymmetric);
                }
            }
        }
    }
    let mut out: BTreeMap<BipartitePartition, Rational> = BTreeMap::new();
    for (m, c) in p.terms() {
        let vectors = (0..n)
            .map(|i| (m.0[i], m.0[n + i]))
            .filter(|&v| v != (0, 0));
        let lam = BipartitePartition::from_vectors(vectors)?;
        out.entry(lam).or_insert_with(|| c.clone());
    }
    Ok(MacMahonVector { ambient: Ambient::S, coeffs: out })
}

/// `m_(a,b) m_Lambda` by the multiplicity formula
/// `(c_(a,b)+1) m_{(a,b)Lambda} + sum_{(i,j) in Lambda} (c_(a+i,b+j)+1) m_{(a+i,b+j) Lambda\(i,j)}`.
pub fn vector_multiply(v: Vector, lam: &BipartitePartition) -> Result<MacMahonVector> {
    if v == (0, 0) {
        return Err(Error::invalid("m_(0,0) is not a generator"));
    }
    let mut out = MacMahonVector::zero(Ambient::S);
    let c = lam.multiplicity(v) + 1;
    out.add_term(lam.add_vector(v)?, Rational::from_integer(c.into()))?;
    for (u, _) in lam.distinct() {
        let w = (v.0 + u.0, v.1 + u.1);
        let c = lam.multiplicity(w) + 1;
        out.add_term(lam.remove_vector(u)?.add_vector(w)?, Rational::from_integer(c.into()))?;
    }
    Ok(out)
}

/// Product in `S`, through realization in as many variable pairs as the
/// longest possible product label.
pub fn multiply(u: &MacMahonVector, v: &MacMahonVector) -> Result<MacMahonVector> {
    if u.ambient != Ambient::S || v.ambient != Ambient::S {
        return Err(Error::invalid("multiply works in S; use sbar_project afterwards"));
    }
    if u.is_zero() || v.is_zero() {
        return Ok(MacMahonVector::zero(Ambient::S));
    }
    let n = (u.max_len() + v.max_len()).max(1);
    let prod = realize_vector(u, n) * realize_vector(v, n);
    express_in_monomials(&prod)
}
