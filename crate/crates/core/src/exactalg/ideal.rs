use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use super::{Monomial, Polynomial, Rational, RowEchelon, SparseRow, Variables};
use crate::{Error, Result};

/// Largest ambient degree piece the per-degree linear algebra will attempt.
pub const DEFAULT_DEGREE_PIECE_CAP: usize = 20000;

/// The degree-`d` piece of a homogeneous ideal, as a reduced row-echelon basis
/// inside the monomials of degree `d` (columns in descending lex order).
#[derive(Debug)]
pub struct DegreeSpan {
    pub degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: RowEchelon,
}

impl DegreeSpan {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn echelon(&self) -> &RowEchelon {
        &self.echelon
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient_dim() - self.rank()
    }

    /// Monomials that are not leading terms of the ideal; they form a basis
    /// of the quotient in this degree.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.echelon
            .free_columns()
            .into_iter()
            .map(|c| self.monomials[c].clone())
            .collect()
    }

    /// Coordinates of a polynomial homogeneous of this degree.
    pub fn coordinates(&self, p: &Polynomial) -> Result<SparseRow> {
        let mut row: SparseRow = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let &i = self.index.get(m).ok_or_else(|| {
                Error::NotHomogeneous(format!("{p} has a term outside degree {}", self.degree))
            })?;
            row.push((i, c.clone()));
        }
        row.sort_by_key(|(i, _)| *i);
        Ok(row)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        self.echelon.contains(self.coordinates(p)?)
    }

    /// Normal form of `p` modulo the ideal, written over the standard
    /// monomials (positions in [`DegreeSpan::standard_monomials`]).
    pub fn normal_form(&self, p: &Polynomial) -> Result<SparseRow> {
        let reduced = self.echelon.reduce(self.coordinates(p)?)?;
        let free = self.echelon.free_columns();
        let pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        Ok(reduced.into_iter().map(|(c, v)| (pos[&c], v)).collect())
    }
}

/// A homogeneous ideal given by generators, with lazily computed degree
/// pieces. The cache is shared between threads behind a read-write lock.
#[derive(Debug)]
pub struct GradedIdeal {
    vars: Arc<Variables>,
    generators: Vec<Polynomial>,
    cap: usize,
    cache: RwLock<HashMap<u32, Arc<DegreeSpan>>>,
}

impl GradedIdeal {
    pub fn new(vars: &Arc<Variables>, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if **g.vars() != **vars {
                return Err(Error::VariableMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if g.homogeneous_degree().is_none() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
            gens.push(g);
        }
        Ok(GradedIdeal {
            vars: vars.clone(),
            generators: gens,
            cap: DEFAULT_DEGREE_PIECE_CAP,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// True if some generator is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.homogeneous_degree() == Some(0))
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators
            .iter()
            .filter_map(Polynomial::homogeneous_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_component_span(&self, d: u32) -> Result<Arc<DegreeSpan>> {
        if let Some(s) = self.cache.read().expect("cache lock").get(&d) {
            return Ok(s.clone());
        }
        let span = Arc::new(self.compute_span(d)?);
        self.cache
            .write()
            .expect("cache lock")
            .entry(d)
            .or_insert(span.clone());
        Ok(span)
    }

    fn compute_span(&self, d: u32) -> Result<DegreeSpan> {
        let monomials = self.vars.monomials_of_degree(d, self.cap)?;
        let index: HashMap<Monomial, usize> =
            monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut echelon = RowEchelon::new(monomials.len());
        if self.is_unit() {
            for i in 0..monomials.len() {
                echelon.insert([(i, Rational::from_integer(1.into()))])?;
            }
        } else {
            'gens: for g in &self.generators {
                let e = g.homogeneous_degree().expect("checked homogeneous");
                if e > d {
                    continue;
                }
                for shift in self.vars.monomials_of_degree(d - e, self.cap)? {
                    if echelon.is_full() {
                        break 'gens;
                    }
                    let row = g.terms().map(|(m, c)| (index[&m.mul(&shift)], c.clone()));
                    echelon.insert(row)?;
                }
            }
        }
        echelon.finalize();
        Ok(DegreeSpan { degree: d, monomials, index, echelon })
    }

    /// Membership test, one homogeneous component at a time.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if **p.vars() != *self.vars {
            return Err(Error::VariableMismatch);
        }
        for (d, comp) in p.homogeneous_components() {
            if !self.degree_component_span(d)?.contains(&comp)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dimensions of the quotient in degrees `0..=dmax`.
    pub fn quotient_dims(&self, dmax: u32) -> Result<Vec<usize>> {
        (0..=dmax)
            .map(|d| Ok(self.degree_component_span(d)?.quotient_dim()))
            .collect()
    }
}

/// Result of a degreewise ideal comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealComparison {
    pub equal: bool,
    pub first_difference: Option<u32>,
}

/// Compares the degree pieces of `i` and `j` for all degrees `<= dmax`.
pub fn ideals_equal_up_to(i: &GradedIdeal, j: &GradedIdeal, dmax: u32) -> Result<IdealComparison> {
    if *i.vars != *j.vars {
        return Err(Error::GradingMismatch);
    }
    for d in 0..=dmax {
        let a = i.degree_component_span(d)?;
        let b = j.degree_component_span(d)?;
        if a.echelon != b.echelon {
            return Ok(IdealComparison { equal: false, first_difference: Some(d) });
        }
    }
    Ok(IdealComparison { equal: true, first_difference: None })
}

/// Truncation of the quotient of a polynomial ring by a homogeneous ideal to
/// degrees `<= dmax`, with the standard monomials as basis.
pub struct GradedQuotient {
    vars: Arc<Variables>,
    spans: Vec<Arc<DegreeSpan>>,
    bases: Vec<Vec<Monomial>>,
}

impl GradedQuotient {
    pub fn new(ideal: &GradedIdeal, dmax: u32) -> Result<Self> {
        let spans: Vec<Arc<DegreeSpan>> = (0..=dmax)
            .map(|d| ideal.degree_component_span(d))
            .collect::<Result<_>>()?;
        let bases = spans.iter().map(|s| s.standard_monomials()).collect();
        Ok(GradedQuotient { vars: ideal.vars.clone(), spans, bases })
    }

    pub fn dmax(&self) -> u32 {
        self.spans.len() as u32 - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, d: u32) -> &[Monomial] {
        &self.bases[d as usize]
    }

    /// Normal form of a polynomial, by degree. Components above `dmax` are
    /// rejected.
    pub fn normal_form(&self, p: &Polynomial) -> Result<BTreeMap<u32, SparseRow>> {
        let mut out = BTreeMap::new();
        for (d, comp) in p.homogeneous_components() {
            let span = self.spans.get(d as usize).ok_or(Error::CapExceeded {
                what: "degree",
                value: d as usize,
                bound: self.dmax() as usize,
            })?;
            let nf = span.normal_form(&comp)?;
            if !nf.is_empty() {
                out.insert(d, nf);
            }
        }
        Ok(out)
    }

    /// Product of basis elements `(d1, i)` and `(d2, j)` in the basis of
    /// degree `d1 + d2`; `None` if that degree is beyond `dmax`.
    pub fn product(&self, d1: u32, i: usize, d2: u32, j: usize) -> Result<Option<SparseRow>> {
        let d = d1 + d2;
        if d > self.dmax() {
            return Ok(None);
        }
        let m = self.bases[d1 as usize][i].mul(&self.bases[d2 as usize][j]);
        let p = Polynomial::monomial(&self.vars, m, Rational::from_integer(1.into()));
        let nf = self.spans[d as usize].normal_form(&p)?;
        Ok(Some(nf))
    }

    /// True if the quotient vanishes in every degree from `from` to `dmax`.
    pub fn vanishes_from(&self, from: u32) -> bool {
        (from..=self.dmax()).all(|d| self.bases[d as usize].is_empty())
    }
}

/// Sum `sum_k coeffs[k] * row_k` helper for building polynomials from
/// coordinates.
pub fn polynomial_from_row(vars: &Arc<Variables>, monomials: &[Monomial], row: &SparseRow) -> Polynomial {
    Polynomial::from_terms(
        vars,
        row.iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (monomials[*i].clone(), v.clone())),
    )
}
