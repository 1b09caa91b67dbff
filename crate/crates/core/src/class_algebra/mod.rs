//! The center of `Q[S_n]` in the basis of class sums `chi_lambda`, with its
//! convolution product, the degree `2(n - l(lambda))` and the cup product of
//! the associated graded algebra.

mod cache;
pub mod perm;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::PathBuf;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

pub use cache::{CACHE_DIR_ENV, CACHE_FORMAT, CACHE_VERSION};

use crate::combinatorics::{class_degree, class_size, factorial, partitions_of, Partition};
use crate::exactalg::Rational;
use crate::{Error, Result};
use cache::{Record, StructureCache};

/// Default upper bound on `n` for enumeration-based products.
pub const DEFAULT_MAX_N: u32 = 8;

/// An element of `Z(Q[S_n])` (or of its associated graded) in the class-sum
/// basis.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassVector {
    n: u32,
    coeffs: BTreeMap<Partition, Rational>,
}

impl ClassVector {
    pub fn zero(n: u32) -> Self {
        ClassVector { n, coeffs: BTreeMap::new() }
    }

    /// The class sum `chi_lam`.
    pub fn basis(lam: &Partition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lam.clone(), Rational::from_integer(1.into()));
        ClassVector { n: lam.weight(), coeffs }
    }

    /// `chi_{(1^n)}`, the unit.
    pub fn identity(n: u32) -> Self {
        ClassVector::basis(&Partition::ones(n))
    }

    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Result<Self> {
        let mut v = ClassVector::zero(n);
        for (lam, c) in terms {
            v.add_term(lam, c)?;
        }
        Ok(v)
    }

    pub fn add_term(&mut self, lam: Partition, c: Rational) -> Result<()> {
        if lam.weight() != self.n {
            return Err(Error::invalid(format!("{lam} is not a partition of {}", self.n)));
        }
        let entry = self.coeffs.entry(lam.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&lam);
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lam: &Partition) -> Rational {
        self.coeffs.get(lam).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ClassVector::zero(self.n);
        }
        ClassVector {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &ClassVector) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::invalid("class vectors for different n"));
        }
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone())?;
        }
        Ok(out)
    }

    /// `Some(d)` if every term has degree `d` (zero reports `Some(0)`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.coeffs.keys().map(class_degree);
        let first = match degs.next() {
            Some(d) => d,
            None => return Some(0),
        };
        degs.all(|d| d == first).then_some(first)
    }

    /// The terms of degree exactly `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        ClassVector {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| class_degree(k) == d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, v)| format!("{v}*chi{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ClassVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(&Partition, String)> =
            self.coeffs.iter().map(|(k, v)| (k, v.to_string())).collect();
        let mut s = serializer.serialize_struct("ClassVector", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

/// The hook `(k+1, 1^{n-k-1})`.
pub fn hook(n: u32, k: u32) -> Result<Partition> {
    if k + 1 > n {
        return Err(Error::invalid(format!("no hook (k+1,1^(n-k-1)) for n={n}, k={k}")));
    }
    let mut parts = vec![k + 1];
    parts.extend(std::iter::repeat(1).take((n - k - 1) as usize));
    Partition::from_parts(&parts)
}

/// Closed formula for `chi_{(k+1,1^{n-k-1})} ∪ chi_lam`: a sum over
/// `nu ⪯ lam` with `l(nu) = k+1` of
/// `k! |nu| (alpha_{|nu|} + 1) / prod gamma_i!` times `chi_{lam_nu}`, where
/// `lam_nu` merges the parts of `nu` into a single part `|nu|`.
pub fn hook_cup(k: u32, lam: &Partition) -> Result<ClassVector> {
    let n = lam.weight();
    if k < 1 || k + 1 > n {
        return Err(Error::invalid(format!("hook index k={k} outside 1..={}", n.saturating_sub(1))));
    }
    let kfact = Rational::from_integer(BigInt::from(factorial(k as u64)));
    let mut out = ClassVector::zero(n);
    for nu in lam.sub_multisets() {
        if nu.len() != k + 1 {
            continue;
        }
        let size = nu.weight();
        let mut denom = BigInt::from(1);
        for i in 1..=nu.largest_part() {
            denom *= BigInt::from(factorial(nu.mult(i) as u64));
        }
        let alpha = lam.mult(size);
        let coeff = &kfact * Rational::new(BigInt::from(size * (alpha + 1)), denom);
        let target = lam
            .difference(&nu)
            .expect("nu is a sub-multiset")
            .with_part(size);
        out.add_term(target, coeff)?;
    }
    Ok(out)
}

/// Dimension of each even degree piece `2k`, `k = 0..n-1`:
/// `#{lam ⊢ n : l(lam) = n - k}`.
pub fn graded_dims(n: u32) -> Vec<usize> {
    let mut dims = vec![0; n.max(1) as usize];
    for lam in partitions_of(n) {
        dims[(class_degree(&lam) / 2) as usize] += 1;
    }
    dims
}

/// Options for [`ClassAlgebra`].
#[derive(Clone, Debug)]
pub struct ClassAlgebraOptions {
    pub max_n: u32,
    pub cache_dir: Option<PathBuf>,
}

impl Default for ClassAlgebraOptions {
    /// Reads the cache directory from `FIXRING_CACHE_DIR` if set.
    fn default() -> Self {
        ClassAlgebraOptions {
            max_n: DEFAULT_MAX_N,
            cache_dir: std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from),
        }
    }
}

type Product = Arc<BTreeMap<Partition, Rational>>;

/// Structure constants of `Z(Q[S_n])`, computed on demand by enumeration and
/// memoized in memory and optionally on disk.
#[derive(Debug)]
pub struct ClassAlgebra {
    n: u32,
    classes: Vec<Partition>,
    perms: OnceLock<HashMap<Partition, Vec<u8>>>,
    table: RwLock<HashMap<(Partition, Partition), Product>>,
    cache: Option<StructureCache>,
}

impl ClassAlgebra {
    pub fn new(n: u32) -> Result<Self> {
        ClassAlgebra::with_options(n, ClassAlgebraOptions::default())
    }

    pub fn with_options(n: u32, opts: ClassAlgebraOptions) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("the class algebra needs n >= 1"));
        }
        if n > opts.max_n {
            return Err(Error::CapExceeded { what: "n", value: n as usize, bound: opts.max_n as usize });
        }
        let mut table = HashMap::new();
        let cache = match &opts.cache_dir {
            Some(dir) => {
                let c = StructureCache::open(dir, n)?;
                for (key, terms) in c.load(n)? {
                    let prod = terms
                        .into_iter()
                        .map(|(k, v)| (k, Rational::from_integer(v.into())))
                        .collect();
                    table.insert(key, Arc::new(prod));
                }
                Some(c)
            }
            None => None,
        };
        Ok(ClassAlgebra {
            n,
            classes: partitions_of(n),
            perms: OnceLock::new(),
            table: RwLock::new(table),
            cache,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    fn perms(&self) -> &HashMap<Partition, Vec<u8>> {
        self.perms.get_or_init(|| perm::permutations_by_type(self.n as usize))
    }

    fn key(a: &Partition, b: &Partition) -> (Partition, Partition) {
        if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    }

    fn check(&self, lam: &Partition) -> Result<()> {
        if lam.weight() != self.n {
            return Err(Error::invalid(format!("{lam} is not a partition of {}", self.n)));
        }
        Ok(())
    }

    /// Counts, for the representative `sigma` of the smaller class, how many
    /// `tau` in the other class give `sigma tau` of each cycle type, and
    /// rescales to coefficients of `chi_a chi_b`.
    fn enumerate(&self, a: &Partition, b: &Partition) -> BTreeMap<Partition, u64> {
        let (rep_class, other) = if class_size(a) <= class_size(b) { (a, b) } else { (b, a) };
        let n = self.n as usize;
        let sigma = perm::canonical_representative(rep_class);
        let mut counts: HashMap<Partition, u64> = HashMap::new();
        let mut prod = vec![0u8; n];
        for tau in self.perms()[other].chunks_exact(n) {
            perm::compose_into(&sigma, tau, &mut prod);
            *counts.entry(perm::cycle_type(&prod)).or_default() += 1;
        }
        let rep_size = class_size(rep_class);
        counts
            .into_iter()
            .map(|(c, cnt)| {
                let num = &rep_size * cnt;
                let den = class_size(&c);
                debug_assert!((&num % &den).is_zero());
                (c, (num / den).to_u64().expect("structure constant fits in u64"))
            })
            .collect()
    }

    fn to_product(terms: &BTreeMap<Partition, u64>) -> Product {
        Arc::new(
            terms
                .iter()
                .map(|(k, &v)| (k.clone(), Rational::from_integer(v.into())))
                .collect(),
        )
    }

    /// `chi_a chi_b` in the class basis.
    pub fn structure_constants(&self, a: &Partition, b: &Partition) -> Result<Product> {
        self.check(a)?;
        self.check(b)?;
        let key = ClassAlgebra::key(a, b);
        if let Some(p) = self.table.read().expect("table lock").get(&key) {
            return Ok(p.clone());
        }
        let terms = self.enumerate(&key.0, &key.1);
        let prod = ClassAlgebra::to_product(&terms);
        let fresh = self
            .table
            .write()
            .expect("table lock")
            .insert(key.clone(), prod.clone())
            .is_none();
        if fresh {
            if let Some(c) = &self.cache {
                c.append(&[Record { n: self.n, a: key.0, b: key.1, terms: terms.into_iter().collect() }])?;
            }
        }
        Ok(prod)
    }

    /// Fills the table for every pair of classes, in parallel, writing all
    /// new records to the disk cache at once.
    pub fn precompute(&self) -> Result<()> {
        let missing: Vec<(Partition, Partition)> = {
            let table = self.table.read().expect("table lock");
            let mut v = Vec::new();
            for (i, a) in self.classes.iter().enumerate() {
                for b in &self.classes[i..] {
                    let key = ClassAlgebra::key(a, b);
                    if !table.contains_key(&key) {
                        v.push(key);
                    }
                }
            }
            v
        };
        if missing.is_empty() {
            return Ok(());
        }
        self.perms();
        let computed: Vec<Record> = missing
            .into_par_iter()
            .map(|(a, b)| {
                let terms = self.enumerate(&a, &b);
                Record { n: self.n, a, b, terms: terms.into_iter().collect() }
            })
            .collect();
        {
            let mut table = self.table.write().expect("table lock");
            for r in &computed {
                let terms: BTreeMap<Partition, u64> = r.terms.iter().cloned().collect();
                table.insert((r.a.clone(), r.b.clone()), ClassAlgebra::to_product(&terms));
            }
        }
        if let Some(c) = &self.cache {
            c.append(&computed)?;
        }
        Ok(())
    }

    /// Product in `Z(Q[S_n])`.
    pub fn convolve(&self, a: &ClassVector, b: &ClassVector) -> Result<ClassVector> {
        if a.n != self.n || b.n != self.n {
            return Err(Error::invalid(format!(
                "class vectors for n = {} and {} in the algebra for n = {}",
                a.n, b.n, self.n
            )));
        }
        let mut acc: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (la, ca) in &a.coeffs {
            for (lb, cb) in &b.coeffs {
                let c = ca * cb;
                for (lc, s) in self.structure_constants(la, lb)?.iter() {
                    *acc.entry(lc.clone()).or_insert_with(Rational::zero) += &c * s;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(ClassVector { n: self.n, coeffs: acc })
    }

    /// Product in the associated graded: the part of the convolution of
    /// degree exactly `deg a + deg b`.
    pub fn cup(&self, a: &ClassVector, b: &ClassVector) -> Result<ClassVector> {
        let da = a
            .homogeneous_degree()
            .ok_or_else(|| Error::invalid(format!("cup of an inhomogeneous element {a}")))?;
        let db = b
            .homogeneous_degree()
            .ok_or_else(|| Error::invalid(format!("cup of an inhomogeneous element {b}")))?;
        if a.is_zero() || b.is_zero() {
            return Ok(ClassVector::zero(self.n));
        }
        Ok(self.convolve(a, b)?.degree_part(da + db))
    }
}
