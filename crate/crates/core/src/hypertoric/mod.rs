//! Vector configurations, Gale duality and the two presentations of the
//! cohomology of a smooth hypertoric variety: the Stanley–Reisner quotient
//! built from the matroid of `A`, and the coordinate ring of the torus-fixed
//! locus of the dual variety, built from the invariant monomials `v_m`.

pub mod corpus;
pub mod lattice;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{GradedIdeal, GradedQuotient, Monomial, Polynomial, Rational, Variables};
use lattice::IntMatrix;

pub use corpus::{corpus, NamedConfig};

/// Rows `a_1, ..., a_n` of an `n x d` integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct VectorConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip)]
    dim: usize,
    vectors: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawConfig {
    #[serde(default)]
    name: Option<String>,
    vectors: Vec<Vec<i64>>,
    #[serde(default)]
    dim: Option<usize>,
}

impl TryFrom<RawConfig> for VectorConfig {
    type Error = Error;

    fn try_from(raw: RawConfig) -> Result<Self> {
        let dim = match raw.dim {
            Some(d) => d,
            None => raw.vectors.first().map_or(0, Vec::len),
        };
        let mut cfg = VectorConfig::new(dim, raw.vectors)?;
        cfg.name = raw.name;
        Ok(cfg)
    }
}

impl VectorConfig {
    /// Checks the shape only; zero vectors are allowed here because Gale
    /// duals of configurations with coloops contain them.
    pub fn new(dim: usize, vectors: Vec<Vec<i64>>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::invalid("a configuration needs at least one vector"));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::invalid(format!("vector {v:?} does not have length {dim}")));
        }
        Ok(VectorConfig { name: None, dim, vectors })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn d(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.n() - self.d()
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    fn matrix(&self) -> IntMatrix {
        lattice::from_i64(&self.vectors)
    }

    fn rows(&self, subset: &[usize]) -> IntMatrix {
        subset.iter().map(|&i| self.vectors[i].iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// The vectors span `Z^d` over `Z`.
    pub fn spans_lattice(&self) -> bool {
        let s = lattice::smith_normal_form(&self.matrix(), self.dim);
        s.rank == self.dim && s.invariant_factors().iter().all(|x| x.is_one())
    }

    /// Nonzero vectors spanning `Z^d`, as needed for a hypertoric variety.
    pub fn validate(&self) -> Result<()> {
        if let Some(i) = self.vectors.iter().position(|v| v.iter().all(|&x| x == 0)) {
            return Err(Error::invalid(format!("vector {} is zero", i + 1)));
        }
        if !self.spans_lattice() {
            return Err(Error::invalid("the vectors do not span the lattice"));
        }
        Ok(())
    }
}

fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect()
}

/// Rows of an integer kernel basis of `a^T`: `b_i` is the `i`-th coordinate
/// of each kernel basis vector.
pub fn gale_dual(cfg: &VectorConfig) -> Result<VectorConfig> {
    let at = lattice::transpose(&cfg.matrix(), cfg.d());
    let kernel = lattice::integer_kernel(&at, cfg.n());
    let k = kernel.len();
    let vectors = (0..cfg.n())
        .map(|i| to_i64_vec(&kernel.iter().map(|row| row[i].clone()).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    VectorConfig::new(k, vectors)
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - left {
            cur.push(i);
            go(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        go(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Every `d x d` minor is `0` or `±1`. Assumes the vectors span `Z^d`.
pub fn is_unimodular(cfg: &VectorConfig) -> bool {
    subsets(cfg.n(), cfg.d()).iter().all(|s| {
        let det = lattice::determinant(&cfg.rows(s));
        det.is_zero() || det.abs().is_one()
    })
}

/// The arrangement `H_i = {x : x·a_i + r_i = 0}` is simple: any family of
/// hyperplanes with a common point has independent normals. It suffices to
/// require that the hyperplanes of each circuit have no common point.
pub fn is_simple(cfg: &VectorConfig, r: &[i64]) -> Result<bool> {
    if r.len() != cfg.n() {
        return Err(Error::invalid(format!("r has length {}, expected {}", r.len(), cfg.n())));
    }
    for c in circuits(cfg)?.circuits {
        let plain = cfg.rows(&c.support);
        let augmented: IntMatrix = plain
            .iter()
            .zip(c.support.iter())
            .map(|(row, &i)| {
                let mut row = row.clone();
                row.push(BigInt::from(r[i]));
                row
            })
            .collect();
        if lattice::rank(&augmented) == lattice::rank(&plain) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Seeded random search for a simple arrangement with integer `r`. The box
/// `[-R, R]^n` starts at `R = n` and doubles every 256 attempts.
pub fn find_simple_r(cfg: &VectorConfig, seed: u64, attempts: usize) -> Result<Option<Vec<i64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut radius = cfg.n() as i64;
    for t in 0..attempts {
        if t > 0 && t % 256 == 0 {
            radius *= 2;
        }
        let r: Vec<i64> = (0..cfg.n()).map(|_| rng.gen_range(-radius..=radius)).collect();
        if is_simple(cfg, &r)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// A minimal dependent set with its primitive relation `sum p_i a_i = 0`,
/// normalized so the first coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    /// 0-based indices
    pub support: Vec<usize>,
    pub relation: Vec<i64>,
}

impl Circuit {
    pub fn is_signed(&self) -> bool {
        self.relation.iter().all(|x| x.abs() == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidComplex {
    pub n: usize,
    pub circuits: Vec<Circuit>,
}

impl MatroidComplex {
    pub fn is_independent(&self, set: &[usize]) -> bool {
        !self.circuits.iter().any(|c| c.support.iter().all(|i| set.contains(i)))
    }

    pub fn all_signed(&self) -> bool {
        self.circuits.iter().all(Circuit::is_signed)
    }
}

/// All circuits, by size and then lexicographically.
pub fn circuits(cfg: &VectorConfig) -> Result<MatroidComplex> {
    let mut out: Vec<Circuit> = Vec::new();
    for size in 1..=cfg.n().min(cfg.d() + 1) {
        for s in subsets(cfg.n(), size) {
            if out.iter().any(|c| c.support.iter().all(|i| s.contains(i))) {
                continue;
            }
            let rows = cfg.rows(&s);
            if lattice::rank(&rows) == size {
                continue;
            }
            // dependent, and every proper subset is independent since no
            // smaller circuit sits inside
            let at = lattice::transpose(&rows, cfg.d());
            let kernel = lattice::integer_kernel(&at, size);
            if kernel.len() != 1 {
                return Err(Error::Verification(format!("dependent set {s:?} is not a circuit")));
            }
            out.push(Circuit { support: s, relation: to_i64_vec(&kernel[0])? });
        }
    }
    Ok(MatroidComplex { n: cfg.n(), circuits: out })
}

/// Graded ring data in even degrees `0, 2, ..., dmax`, with the standard
/// monomials as basis.
pub struct RingData {
    vars: Arc<Variables>,
    quotient: GradedQuotient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub a: String,
    pub b: String,
    pub terms: Vec<(String, String)>,
}

type Constants = BTreeMap<(Monomial, Monomial), BTreeMap<Monomial, Rational>>;

impl RingData {
    fn build(names: Vec<String>, generators: impl Fn(&Arc<Variables>) -> Vec<Polynomial>, dmax: u32) -> Result<Self> {
        let degrees = vec![2; names.len()];
        let vars = Variables::new(names, degrees)?;
        let ideal = GradedIdeal::new(&vars, generators(&vars))?;
        let quotient = GradedQuotient::new(&ideal, dmax)?;
        Ok(RingData { vars, quotient })
    }

    pub fn dmax(&self) -> u32 {
        self.quotient.dmax()
    }

    /// Dimensions in degrees `0, 2, 4, ...`.
    pub fn dims(&self) -> Vec<usize> {
        self.quotient.dims().into_iter().step_by(2).collect()
    }

    /// Dimensions with trailing zeros removed.
    pub fn trimmed_dims(&self) -> Vec<usize> {
        let mut d = self.dims();
        while d.len() > 1 && d.last() == Some(&0) {
            d.pop();
        }
        d
    }

    pub fn basis(&self, degree: u32) -> &[Monomial] {
        self.quotient.basis(degree)
    }

    fn name(&self, m: &Monomial) -> String {
        Polynomial::monomial(&self.vars, m.clone(), Rational::one()).to_string()
    }

    fn pairs(&self) -> Vec<(u32, usize, u32, usize)> {
        let dmax = self.dmax();
        let mut out = Vec::new();
        for d1 in (2..=dmax).step_by(2) {
            for d2 in (d1..=dmax - d1).step_by(2) {
                for i in 0..self.basis(d1).len() {
                    let start = if d1 == d2 { i } else { 0 };
                    for j in start..self.basis(d2).len() {
                        out.push((d1, i, d2, j));
                    }
                }
            }
        }
        out
    }

    fn constants_in_degree(&self, degree: u32) -> Result<Constants> {
        let mut out = Constants::new();
        for (d1, i, d2, j) in self.pairs().into_iter().filter(|p| p.0 + p.2 == degree) {
            let row = self.quotient.product(d1, i, d2, j)?.unwrap_or_default();
            let basis = self.basis(degree);
            let terms = row.into_iter().map(|(c, v)| (basis[c].clone(), v)).collect();
            out.insert((self.basis(d1)[i].clone(), self.basis(d2)[j].clone()), terms);
        }
        Ok(out)
    }

    /// Products of pairs of positive-degree basis elements, for pairs whose
    /// product degree is at most `dmax`.
    pub fn multiplication_table(&self) -> Result<Vec<ProductEntry>> {
        self.pairs()
            .into_iter()
            .map(|(d1, i, d2, j)| {
                let row = self.quotient.product(d1, i, d2, j)?.unwrap_or_default();
                let basis = self.basis(d1 + d2);
                Ok(ProductEntry {
                    a: self.name(&self.basis(d1)[i]),
                    b: self.name(&self.basis(d2)[j]),
                    terms: row.iter().map(|(c, v)| (self.name(&basis[*c]), v.to_string())).collect(),
                })
            })
            .collect()
    }

    /// True if every generator is nilpotent within `dmax`, i.e. the top
    /// computed degree vanishes.
    pub fn vanishes_at_top(&self) -> bool {
        self.quotient.vanishes_from(self.dmax())
    }

    /// First degree where the bases or structure constants differ after
    /// identifying the variables positionally.
    pub fn first_difference(&self, other: &RingData) -> Result<Option<u32>> {
        if self.dmax() != other.dmax() || self.vars.len() != other.vars.len() {
            return Err(Error::GradingMismatch);
        }
        for d in (0..=self.dmax()).step_by(2) {
            if self.basis(d) != other.basis(d) || self.constants_in_degree(d)? != other.constants_in_degree(d)? {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }
}

fn default_dmax(cfg: &VectorConfig) -> u32 {
    2 * (cfg.d() as u32 + 1)
}

fn moment_forms(cfg: &VectorConfig, vars: &Arc<Variables>) -> Vec<Polynomial> {
    (0..cfg.d())
        .map(|j| {
            Polynomial::from_terms(
                vars,
                (0..cfg.n())
                    .filter(|&i| cfg.vectors[i][j] != 0)
                    .map(|i| (Monomial::var(cfg.n(), i), Rational::from_integer(cfg.vectors[i][j].into()))),
            )
        })
        .filter(|p| !p.is_zero())
        .collect()
}

fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `Q[e_1..e_n] / (prod_{i in S} e_i : S a circuit) + (sum_i a_ij e_i)`,
/// `deg e_i = 2`, through degree `dmax` (default `2d + 2`).
pub fn sr_quotient(cfg: &VectorConfig, dmax: Option<u32>) -> Result<RingData> {
    let matroid = circuits(cfg)?;
    let n = cfg.n();
    RingData::build(
        indexed_names("e", n),
        |vars| {
            let mut gens: Vec<Polynomial> = matroid
                .circuits
                .iter()
                .map(|c| {
                    let mut exps = vec![0; n];
                    for &i in &c.support {
                        exps[i] = 1;
                    }
                    Polynomial::monomial(vars, Monomial(exps), Rational::one())
                })
                .collect();
            gens.extend(moment_forms(cfg, vars));
            gens
        },
        dmax.unwrap_or_else(|| default_dmax(cfg)),
    )
}

/// Nonzero `m` with `sum m_i a_i = 0` and `sum |m_i| <= bound`.
fn kernel_vectors(cfg: &VectorConfig, bound: u32) -> Vec<Vec<i64>> {
    fn go(cfg: &VectorConfig, i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cfg.n() {
            let zero = cur.iter().all(|&x| x == 0);
            let in_kernel =
                (0..cfg.d()).all(|j| cur.iter().zip(&cfg.vectors).map(|(m, a)| m * a[j]).sum::<i64>() == 0);
            if !zero && in_kernel {
                out.push(cur.clone());
            }
            return;
        }
        for m in -left..=left {
            cur.push(m);
            go(cfg, i + 1, left - m.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(cfg, 0, bound as i64, &mut Vec::new(), &mut out);
    out
}

/// Coordinate ring of the torus-fixed locus of the dual hypertoric variety,
/// generated by `u_i = z_i w_i`. The fixed-point ideal is generated by the
/// invariant monomials `v_m = prod z_i^{[m_i]+} w_i^{[-m_i]+}` with `m != 0`
/// and `sum m_i a_i = 0`, so `u^q` vanishes exactly when some such `m` has
/// `|m_i| <= q_i`. Hence the monomials `u^{|m|}` over kernel vectors with
/// `sum |m_i| <= dmax / 2` give every relation through `dmax`; the moment map
/// adds the linear forms `sum_i a_ij u_i`.
pub fn dual_fixed_ring(cfg: &VectorConfig, dmax: Option<u32>) -> Result<RingData> {
    let dmax = dmax.unwrap_or_else(|| default_dmax(cfg));
    let n = cfg.n();
    let kernel = kernel_vectors(cfg, dmax / 2);
    RingData::build(
        indexed_names("u", n),
        |vars| {
            let mut gens: Vec<Polynomial> = Vec::new();
            let mut seen: Vec<Monomial> = Vec::new();
            for m in &kernel {
                let mono = Monomial(m.iter().map(|x| x.unsigned_abs() as u32).collect());
                if !seen.iter().any(|s| s.divides(&mono)) {
                    seen.retain(|s| !mono.divides(s));
                    seen.push(mono);
                }
            }
            seen.sort();
            gens.extend(seen.into_iter().map(|m| Polynomial::monomial(vars, m, Rational::one())));
            gens.extend(moment_forms(cfg, vars));
            gens
        },
        dmax,
    )
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypertoricReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub vectors: Vec<Vec<i64>>,
    pub gale_dual: Vec<Vec<i64>>,
    pub unimodular: bool,
    pub simple_r: Vec<i64>,
    pub circuits: Vec<Circuit>,
    /// dimensions in degrees 0, 2, 4, ...
    pub sr_dims: Vec<usize>,
    pub dual_dims: Vec<usize>,
    pub nilpotent: bool,
    pub structure_constants_equal: bool,
    pub first_mismatch_degree: Option<u32>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct HypertoricOptions {
    pub seed: u64,
    pub attempts: usize,
    pub dmax: Option<u32>,
}

impl Default for HypertoricOptions {
    fn default() -> Self {
        HypertoricOptions { seed: 0, attempts: 4096, dmax: None }
    }
}

/// Checks the smoothness hypotheses, then compares the Stanley–Reisner
/// quotient with the dual fixed-point ring under `u_i -> e_i`.
pub fn verify_appendix_b(cfg: &VectorConfig, opts: &HypertoricOptions) -> Result<HypertoricReport> {
    cfg.validate()?;
    if !is_unimodular(cfg) {
        return Err(Error::invalid("the configuration is not unimodular"));
    }
    let simple_r = find_simple_r(cfg, opts.seed, opts.attempts)?
        .ok_or_else(|| Error::invalid("no simple arrangement found for this configuration"))?;
    let matroid = circuits(cfg)?;
    if !matroid.all_signed() {
        return Err(Error::Verification("a circuit of a unimodular configuration has a relation other than ±1".into()));
    }
    let sr = sr_quotient(cfg, opts.dmax)?;
    let dual = dual_fixed_ring(cfg, opts.dmax)?;
    let first_mismatch_degree = sr.first_difference(&dual)?;
    let nilpotent = sr.vanishes_at_top();
    let structure_constants_equal = first_mismatch_degree.is_none();
    Ok(HypertoricReport {
        name: cfg.name.clone(),
        n: cfg.n(),
        d: cfg.d(),
        k: cfg.k(),
        vectors: cfg.vectors.clone(),
        gale_dual: gale_dual(cfg)?.vectors,
        unimodular: true,
        simple_r,
        circuits: matroid.circuits,
        sr_dims: sr.trimmed_dims(),
        dual_dims: dual.trimmed_dims(),
        nilpotent,
        structure_constants_equal,
        first_mismatch_degree,
        pass: structure_constants_equal && nilpotent,
    })
}
