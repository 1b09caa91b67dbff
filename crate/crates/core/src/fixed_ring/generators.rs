//! Multiplication in the canonical basis via the diagonal generators
//! `g_k = m̄_(k,k)`.
//!
//! Every basis element is written once per degree as a polynomial in the
//! generators, by choosing independent products of generators greedily and
//! inverting the resulting square matrix; products are then evaluated by
//! repeated application of the closed generator-times-basis expansion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::combinatorics::{partitions_of, Partition};
use crate::exactalg::{invert, Rational, RowEchelon};
use crate::macmahon::generator_times_basis;
use crate::{Error, Result};

/// Coefficients on the canonical basis, keyed by `lambda`.
pub type Coeffs = BTreeMap<Partition, Rational>;

/// A polynomial in the generators `g_1, g_2, ...`; each key lists the
/// generator indices of a monomial, so `[2,1,1]` is `g_2 g_1^2`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GeneratorPolynomial(pub BTreeMap<Partition, Rational>);

impl GeneratorPolynomial {
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.0.iter()
    }
}

impl fmt::Display for GeneratorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, c) in &self.0 {
            let factors: Vec<String> = mono
                .multiplicities()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("g{}", i + 1) } else { format!("g{}^{e}", i + 1) })
                .collect();
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GeneratorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The canonical-basis ring, either the full quotient (`bound = None`) or its
/// truncation to labels with `l(lambda) + |lambda| <= n`.
#[derive(Debug)]
pub(crate) struct CanonicalRing {
    bound: Option<u32>,
    expressions: RwLock<HashMap<u32, Arc<HashMap<Partition, GeneratorPolynomial>>>>,
}

pub(crate) fn add_into(acc: &mut Coeffs, key: &Partition, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(key.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(key);
    }
}

impl CanonicalRing {
    pub fn new(bound: Option<u32>) -> Self {
        CanonicalRing { bound, expressions: RwLock::new(HashMap::new()) }
    }

    pub fn admissible(&self, lam: &Partition) -> bool {
        self.bound.map_or(true, |n| lam.len() + lam.weight() <= n)
    }

    fn max_generator(&self, d: u32) -> u32 {
        match self.bound {
            Some(n) => d.min(n.saturating_sub(1)),
            None => d,
        }
    }

    pub fn basis_of_degree(&self, d: u32) -> Vec<Partition> {
        partitions_of(d).into_iter().filter(|l| self.admissible(l)).collect()
    }

    /// `g_k · v`, truncated.
    pub fn times_generator(&self, k: u32, v: &Coeffs) -> Result<Coeffs> {
        let mut out = Coeffs::new();
        for (lam, c) in v {
            for (nu, x) in generator_times_basis(k, lam)?.canonical_terms() {
                if self.admissible(&nu) {
                    add_into(&mut out, &nu, c * x);
                }
            }
        }
        Ok(out)
    }

    /// `g_rho · v` for a monomial `rho` in the generators.
    pub fn apply_monomial(&self, rho: &Partition, v: &Coeffs) -> Result<Coeffs> {
        let mut cur = v.clone();
        for k in rho.parts_iter() {
            if cur.is_empty() {
                break;
            }
            cur = self.times_generator(k, &cur)?;
        }
        Ok(cur)
    }

    fn degree_expressions(&self, d: u32) -> Result<Arc<HashMap<Partition, GeneratorPolynomial>>> {
        if let Some(e) = self.expressions.read().expect("expression lock").get(&d) {
            return Ok(e.clone());
        }
        let basis = self.basis_of_degree(d);
        let index: HashMap<&Partition, usize> = basis.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut candidates: Vec<Partition> = partitions_of(d)
            .into_iter()
            .filter(|r| r.largest_part() <= self.max_generator(d))
            .collect();
        candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        let mut one = Coeffs::new();
        one.insert(Partition::empty(), Rational::one());
        let mut ech = RowEchelon::new(basis.len());
        let mut chosen: Vec<(Partition, Vec<Rational>)> = Vec::new();
        for rho in candidates {
            if ech.is_full() {
                break;
            }
            let v = self.apply_monomial(&rho, &one)?;
            let mut dense = vec![Rational::zero(); basis.len()];
            for (lam, c) in v {
                let &i = index.get(&lam).ok_or_else(|| {
                    Error::Verification(format!("generator product left the basis at {lam}"))
                })?;
                dense[i] = c;
            }
            let sparse = dense.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero());
            if ech.insert(sparse)? {
                chosen.push((rho, dense));
            }
        }
        if !ech.is_full() {
            return Err(Error::Verification(format!(
                "generator products span only {} of {} basis elements in degree {}",
                ech.rank(),
                basis.len(),
                2 * d
            )));
        }
        let matrix: Vec<Vec<Rational>> = chosen.iter().map(|(_, r)| r.clone()).collect();
        let inv = invert(&matrix)?;
        let mut out = HashMap::new();
        for (i, lam) in basis.iter().enumerate() {
            let mut poly = BTreeMap::new();
            for (j, (rho, _)) in chosen.iter().enumerate() {
                if !inv[i][j].is_zero() {
                    poly.insert(rho.clone(), inv[i][j].clone());
                }
            }
            out.insert(lam.clone(), GeneratorPolynomial(poly));
        }
        let out = Arc::new(out);
        self.expressions
            .write()
            .expect("expression lock")
            .insert(d, out.clone());
        Ok(out)
    }

    pub fn express(&self, lam: &Partition) -> Result<GeneratorPolynomial> {
        if !self.admissible(lam) {
            return Err(Error::invalid(format!("{lam} is not a basis label here")));
        }
        Ok(self.degree_expressions(lam.weight())?[lam].clone())
    }

    pub fn multiply(&self, u: &Coeffs, v: &Coeffs) -> Result<Coeffs> {
        let mut out = Coeffs::new();
        for (lam, c) in u {
            for (rho, x) in self.express(lam)?.terms() {
                for (nu, y) in self.apply_monomial(rho, v)? {
                    add_into(&mut out, &nu, c * x * y);
                }
            }
        }
        Ok(out)
    }
}
