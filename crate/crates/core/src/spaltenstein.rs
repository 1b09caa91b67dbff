//! Two presentations of the cohomology of a Spaltenstein variety: the
//! Brundan–Ostrik quotient `R_mu / I^lambda_mu` and the coordinate ring of
//! the nilpotent cone `N_P` cut with the slice `e_Q + Z(f_Q)`, whose ideal is
//! given by coefficients of minors of `tI - Z(x)`. The comparison transports
//! the first ideal along `e_r(mu; i) -> ẽ_r(mu; i)` and checks equality
//! degree by degree.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{partitions_of, Partition};
use crate::exactalg::{ideals_equal_up_to, minor, GradedIdeal, PolyMatrix, Polynomial, Rational, Variables};
use crate::{Error, Result};

pub const DEFAULT_MAX_N: u32 = 4;

/// `lambda` (padded with zeros to length `n`, weakly decreasing) and a
/// composition `mu` of `n` with `n` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaltensteinInstance {
    pub n: u32,
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
}

impl SpaltensteinInstance {
    /// Pads `lambda` and `mu` with zeros and validates.
    pub fn new(n: u32, lambda: &[u32], mu: &[u32]) -> Result<Self> {
        let pad = |v: &[u32], what: &str| -> Result<Vec<u32>> {
            if v.len() > n as usize {
                return Err(Error::invalid(format!("{what} has more than n = {n} entries")));
            }
            let mut v = v.to_vec();
            v.resize(n as usize, 0);
            Ok(v)
        };
        let inst = SpaltensteinInstance { n, lambda: pad(lambda, "lambda")?, mu: pad(mu, "mu")? };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("need n >= 1"));
        }
        if self.lambda.len() != self.n as usize || self.mu.len() != self.n as usize {
            return Err(Error::invalid("lambda and mu need exactly n entries"));
        }
        if self.lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("lambda must be weakly decreasing"));
        }
        if self.lambda.iter().sum::<u32>() != self.n || self.mu.iter().sum::<u32>() != self.n {
            return Err(Error::invalid("lambda and mu must both sum to n"));
        }
        Ok(())
    }

    /// `lambda_{from+1} + ... + lambda_n` (0-based `from`).
    fn tail(&self, from: usize) -> u32 {
        self.lambda.iter().skip(from).sum()
    }

    /// Largest block size, or 1 if all blocks are empty.
    fn max_block(&self) -> u32 {
        self.mu.iter().copied().max().unwrap_or(1).max(1)
    }

    fn blocks(&self) -> Vec<(usize, u32)> {
        self.mu.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, &m)| (i, m)).collect()
    }
}

/// Free generators `e_r(mu; i)` of `R_mu`, named `e{i}_{r}`, degree `2r`.
pub fn generator_variables(inst: &SpaltensteinInstance) -> Arc<Variables> {
    let mut names = Vec::new();
    let mut degs = Vec::new();
    for (i, m) in inst.blocks() {
        for r in 1..=m {
            names.push(format!("e{}_{}", i + 1, r));
            degs.push(2 * r);
        }
    }
    Variables::new(names, degs).expect("distinct names, positive degrees")
}

/// Slice coordinates `x^{(i)}_j`, named `x{i}_{j}`, degree `2j`.
pub fn slice_variables(inst: &SpaltensteinInstance) -> Arc<Variables> {
    let mut names = Vec::new();
    let mut degs = Vec::new();
    for (i, m) in inst.blocks() {
        for j in 1..=m {
            names.push(format!("x{}_{}", i + 1, j));
            degs.push(2 * j);
        }
    }
    Variables::new(names, degs).expect("distinct names, positive degrees")
}

/// Slice coordinates together with `t`, which comes last.
fn slice_variables_with_t(inst: &SpaltensteinInstance) -> Arc<Variables> {
    let base = slice_variables(inst);
    let mut names = base.names().to_vec();
    let mut degs = base.degrees().to_vec();
    names.push("t".into());
    degs.push(2);
    Variables::new(names, degs).expect("t is a fresh name")
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `e_r(mu; i_1..i_m)` over the generator variables: the sum of products
/// `e_{r_1}(mu; i_1) ... e_{r_m}(mu; i_m)` with `r_1 + ... + r_m = r`.
fn block_elementary(
    inst: &SpaltensteinInstance,
    vars: &Arc<Variables>,
    subset: &[usize],
    r: u32,
) -> Polynomial {
    let var_of = |i: usize, k: u32| vars.index_of(&format!("e{}_{}", i + 1, k)).expect("generator exists");
    let mut acc = vec![Polynomial::zero(vars); r as usize + 1];
    acc[0] = Polynomial::one(vars);
    for &i in subset {
        let m = inst.mu[i];
        let mut next = vec![Polynomial::zero(vars); r as usize + 1];
        for (have, p) in acc.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for k in 0..=m.min(r - have as u32) {
                let factor = if k == 0 { Polynomial::one(vars) } else { Polynomial::var(vars, var_of(i, k)) };
                next[have + k as usize] = &next[have + k as usize] + &(p * &factor);
            }
        }
        acc = next;
    }
    acc.swap_remove(r as usize)
}

/// Generators of `I^lambda_mu` in `R_mu`: `e_r(mu; i_1..i_m)` for every
/// nonempty subset and every `r > sum mu_{i_j} - (lambda_{a+1} + ... + lambda_n)`,
/// where `a` counts the nonempty blocks outside the subset.
pub fn bo_ideal(inst: &SpaltensteinInstance) -> Result<GradedIdeal> {
    inst.validate()?;
    let vars = generator_variables(inst);
    let n = inst.n as usize;
    let mut gens = Vec::new();
    let mut seen = HashSet::new();
    for mask in 1u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let total: u32 = subset.iter().map(|&i| inst.mu[i]).sum();
        let a = (0..n).filter(|i| inst.mu[*i] > 0 && mask >> i & 1 == 0).count();
        let bound = total as i64 - inst.tail(a) as i64;
        for r in 0..=total {
            if (r as i64) <= bound {
                continue;
            }
            let g = block_elementary(inst, &vars, &subset, r);
            if seen.insert(g.to_string()) {
                gens.push(g);
            }
        }
    }
    GradedIdeal::new(&vars, gens)
}

/// `e_r(mu; i) -> elementary symmetric polynomials` in the block variables of
/// `R = Q[x_1..x_n]`, `deg x_k = 2`.
pub fn bo_generators_in_x(inst: &SpaltensteinInstance) -> Result<(Arc<Variables>, Vec<Polynomial>)> {
    let ideal = bo_ideal(inst)?;
    let n = inst.n as usize;
    let xvars = Variables::new((1..=n).map(|k| format!("x{k}")).collect(), vec![2; n])?;
    let mut images = Vec::new();
    let mut start = 0usize;
    for (_, m) in inst.blocks() {
        let block: Vec<usize> = (start..start + m as usize).collect();
        for r in 1..=m as usize {
            images.push(elementary(&xvars, &block, r));
        }
        start += m as usize;
    }
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.map_to(&xvars, &images))
        .collect::<Result<Vec<_>>>()?;
    Ok((xvars, gens))
}

fn elementary(vars: &Arc<Variables>, block: &[usize], r: usize) -> Polynomial {
    let mut e = vec![Polynomial::zero(vars); r + 1];
    e[0] = Polynomial::one(vars);
    for &v in block {
        let x = Polynomial::var(vars, v);
        for k in (1..=r).rev() {
            e[k] = &e[k] + &(&e[k - 1] * &x);
        }
    }
    e.swap_remove(r)
}

/// The block `Z_i = E_i + x_1 I + x_2 F_i + ... + x_{mu_i} F_i^{mu_i - 1}`,
/// with `E_i` the subdiagonal of ones and `F_i` the superdiagonal with
/// entries `j (mu_i - j)`, over `vars`.
pub fn slice_block(inst: &SpaltensteinInstance, vars: &Arc<Variables>, block: usize) -> Result<PolyMatrix> {
    let m = inst.mu[block] as usize;
    let var = |j: usize| -> Result<Polynomial> {
        Polynomial::named(vars, &format!("x{}_{}", block + 1, j))
    };
    let mut z = PolyMatrix::zeros(vars, m, m);
    // F^p has (a, a+p) entry prod_{q=a}^{a+p-1} (q+1)(m-q-1), 0-based.
    for a in 0..m {
        for p in 0..(m - a) {
            let mut c = int(1);
            for q in a..a + p {
                c *= int(((q + 1) * (m - q - 1)) as i64);
            }
            let entry = var(p + 1)?.scalar_mul(&c);
            z.set(a, a + p, z.get(a, a + p) + &entry);
        }
        if a + 1 < m {
            z.set(a + 1, a, Polynomial::one(vars));
        }
    }
    Ok(z)
}

/// `ẽ_r(mu; i)` from `det(tI - Z_i) = sum_r (-1)^r ẽ_r t^{mu_i - r}`, over the
/// slice variables, for every nonempty block in order and `r = 1..mu_i`.
pub fn char_poly_map(inst: &SpaltensteinInstance) -> Result<Vec<Polynomial>> {
    inst.validate()?;
    let tvars = slice_variables_with_t(inst);
    let svars = slice_variables(inst);
    let t_idx = tvars.len() - 1;
    let to_slice = slice_projection(&tvars, &svars);
    let t = Polynomial::var(&tvars, t_idx);
    let mut out = Vec::new();
    for (i, m) in inst.blocks() {
        let det = slice_block(inst, &tvars, i)?.shifted_negation(&t)?.determinant()?;
        for r in 1..=m {
            let c = det.coefficient_of(t_idx, m - r)?;
            let s = if r % 2 == 0 { int(1) } else { int(-1) };
            out.push(c.scalar_mul(&s).map_to(&svars, &to_slice)?);
        }
    }
    Ok(out)
}

/// Images of the `t`-extended variables in the slice ring, with `t -> 0`.
fn slice_projection(tvars: &Arc<Variables>, svars: &Arc<Variables>) -> Vec<Polynomial> {
    (0..tvars.len())
        .map(|k| if k < svars.len() { Polynomial::var(svars, k) } else { Polynomial::zero(svars) })
        .collect()
}

/// `psi(I^lambda_mu)` in the slice coordinates.
pub fn transported_bo_ideal(inst: &SpaltensteinInstance) -> Result<GradedIdeal> {
    let bo = bo_ideal(inst)?;
    let svars = slice_variables(inst);
    let images = char_poly_map(inst)?;
    let gens = bo
        .generators()
        .iter()
        .map(|g| g.map_to(&svars, &images))
        .collect::<Result<Vec<_>>>()?;
    GradedIdeal::new(&svars, gens)
}

/// All `k`-subsets of `0..n`, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Statistics from building the slice ideal.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SliceStats {
    /// Minors with nonzero block structure that were expanded.
    pub minors: usize,
    pub generators: usize,
    pub unit: bool,
}

/// Generators of the ideal of `N_P ∩ (e_Q + Z(f_Q))`: coefficients of `t^k`,
/// `k < lambda_{n-s+1} + ... + lambda_n`, of the `s`-minors of `tI - Z(x)`.
///
/// A minor of the block-diagonal matrix vanishes unless it takes as many
/// rows as columns from each block, in which case it is the product of the
/// block minors; only those are enumerated. A constant generator ends the
/// search with the unit ideal.
pub fn slice_ideal(inst: &SpaltensteinInstance) -> Result<(GradedIdeal, SliceStats)> {
    inst.validate()?;
    let tvars = slice_variables_with_t(inst);
    let svars = slice_variables(inst);
    let t_idx = tvars.len() - 1;
    let to_slice = slice_projection(&tvars, &svars);
    let t = Polynomial::var(&tvars, t_idx);
    let blocks = inst.blocks();
    let mats: Vec<PolyMatrix> = blocks
        .iter()
        .map(|&(i, _)| slice_block(inst, &tvars, i)?.shifted_negation(&t))
        .collect::<Result<_>>()?;

    // block minors by size, memoized
    let mut block_minors: Vec<Vec<Vec<Polynomial>>> = Vec::new();
    for (b, &(_, m)) in blocks.iter().enumerate() {
        let mut by_size = Vec::new();
        for s in 0..=m as usize {
            let mut list = Vec::new();
            let subs = subsets(m as usize, s);
            for rows in &subs {
                for cols in &subs {
                    let p = minor(&mats[b], rows, cols)?;
                    if !p.is_zero() {
                        list.push(p);
                    }
                }
            }
            by_size.push(list);
        }
        block_minors.push(by_size);
    }

    let n = inst.n as usize;
    let mut stats = SliceStats::default();
    let mut gens: Vec<Polynomial> = Vec::new();
    let mut seen = HashSet::new();
    let mut unit = false;
    'sizes: for s in 1..=n {
        let bound = inst.tail(n - s);
        if bound == 0 {
            continue;
        }
        for split in compositions_bounded(s, &blocks.iter().map(|&(_, m)| m as usize).collect::<Vec<_>>()) {
            let mut products = vec![Polynomial::one(&tvars)];
            for (b, &sb) in split.iter().enumerate() {
                let mut next = Vec::new();
                for p in &products {
                    for q in &block_minors[b][sb] {
                        next.push(p * q);
                    }
                }
                products = next;
            }
            for p in products {
                stats.minors += 1;
                for k in 0..bound {
                    let c = p.coefficient_of(t_idx, k)?.map_to(&svars, &to_slice)?;
                    if c.is_zero() {
                        continue;
                    }
                    if c.homogeneous_degree() == Some(0) {
                        unit = true;
                        gens = vec![Polynomial::one(&svars)];
                        break 'sizes;
                    }
                    let key = normalized_key(&c);
                    if seen.insert(key) {
                        gens.push(c);
                    }
                }
            }
        }
    }
    stats.generators = gens.len();
    stats.unit = unit;
    Ok((GradedIdeal::new(&svars, gens)?, stats))
}

/// Ways to write `s` as `s_1 + ... + s_b` with `0 <= s_i <= caps[i]`.
fn compositions_bounded(s: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn rec(rest: usize, caps: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == caps.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let remaining: usize = caps[cur.len() + 1..].iter().sum();
        for v in 0..=caps[cur.len()].min(rest) {
            if rest - v > remaining {
                continue;
            }
            cur.push(v);
            rec(rest - v, caps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, caps, &mut Vec::new(), &mut out);
    out
}

fn normalized_key(p: &Polynomial) -> String {
    match p.leading_term() {
        Some((_, c)) => {
            let inv = c.recip();
            p.scalar_mul(&inv).to_string()
        }
        None => String::new(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub degree: u32,
    pub equal: bool,
    pub dim: usize,
}

/// Result of comparing the two ideals on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct SpaltensteinReport {
    pub n: u32,
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub dmax: u32,
    pub degrees: Vec<DegreeCheck>,
    /// Quotient dimensions in degrees `0, 2, 4, ...` up to the last nonzero one.
    pub dims: Vec<usize>,
    pub unit: bool,
    pub slice: SliceStats,
    pub bo_generators: usize,
    /// Not claimed in general; reported for information.
    pub palindromic: bool,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct SpaltensteinOptions {
    pub dmax: Option<u32>,
    pub max_n: u32,
}

impl Default for SpaltensteinOptions {
    fn default() -> Self {
        SpaltensteinOptions { dmax: None, max_n: DEFAULT_MAX_N }
    }
}

/// Degree up to which to compare: the quotient of `ideal` is scanned until it
/// vanishes in `g` consecutive even degrees, `2g` being the largest variable
/// degree, after which it vanishes for good. The scan stops at `2n^2 + 2g`.
pub fn default_dmax(inst: &SpaltensteinInstance, ideal: &GradedIdeal) -> Result<u32> {
    let g = inst.max_block();
    let limit = 2 * inst.n * inst.n + 2 * g;
    let mut zeros = 0;
    let mut d = 0;
    while d <= limit {
        if ideal.degree_component_span(d)?.quotient_dim() == 0 {
            zeros += 1;
            if zeros == g {
                return Ok(d);
            }
        } else {
            zeros = 0;
        }
        d += 2;
    }
    Ok(limit)
}

/// Compares `psi(I^lambda_mu)` with the slice ideal in every degree up to
/// `dmax`.
pub fn verify_appendix_a(inst: &SpaltensteinInstance, opts: &SpaltensteinOptions) -> Result<SpaltensteinReport> {
    inst.validate()?;
    if inst.n > opts.max_n {
        return Err(Error::CapExceeded { what: "n", value: inst.n as usize, bound: opts.max_n as usize });
    }
    let bo = transported_bo_ideal(inst)?;
    let (slice, stats) = slice_ideal(inst)?;
    let dmax = match opts.dmax {
        Some(d) => d,
        None => default_dmax(inst, &bo)?,
    };
    let cmp = ideals_equal_up_to(&bo, &slice, dmax)?;
    let mut degrees = Vec::new();
    for d in (0..=dmax).step_by(2) {
        let a = bo.degree_component_span(d)?;
        let b = slice.degree_component_span(d)?;
        degrees.push(DegreeCheck { degree: d, equal: a.echelon() == b.echelon(), dim: b.quotient_dim() });
    }
    let mut dims: Vec<usize> = degrees.iter().map(|c| c.dim).collect();
    while dims.last() == Some(&0) {
        dims.pop();
    }
    let palindromic = dims.iter().eq(dims.iter().rev());
    Ok(SpaltensteinReport {
        n: inst.n,
        lambda: inst.lambda.clone(),
        mu: inst.mu.clone(),
        dmax,
        degrees,
        dims,
        unit: stats.unit || bo.is_unit(),
        bo_generators: bo.generators().len(),
        slice: stats,
        palindromic,
        pass: cmp.equal,
    })
}

/// Weak compositions of `n` with `n` entries.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (0..=rest).rev() {
            cur.push(v);
            rec(rest - v, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n as usize, &mut Vec::new(), &mut out);
    out
}

/// Every `(lambda, mu)` at `n`: all partitions `lambda ⊢ n` and all weak
/// compositions `mu`.
pub fn all_instances(n: u32) -> Vec<SpaltensteinInstance> {
    let mut out = Vec::new();
    for lam in partitions_of(n) {
        for mu in compositions(n) {
            out.push(SpaltensteinInstance::new(n, &lam.parts(), &mu).expect("valid by construction"));
        }
    }
    out
}

/// Hook shapes `lambda = (n-j, 1^j)` with all weak compositions `mu`.
pub fn hook_instances(n: u32) -> Vec<SpaltensteinInstance> {
    let mut out = Vec::new();
    for j in 0..n {
        let mut lam = vec![n - j];
        lam.extend(std::iter::repeat(1).take(j as usize));
        for mu in compositions(n) {
            out.push(SpaltensteinInstance::new(n, &lam, &mu).expect("valid by construction"));
        }
    }
    out
}

/// Whether the nonzero entries of `lambda` form a hook.
pub fn is_hook(lambda: &[u32]) -> bool {
    Partition::from_parts(&lambda.iter().copied().filter(|&x| x > 0).collect::<Vec<_>>())
        .map(|p| p.len() as usize + p.largest_part() as usize == p.weight() as usize + 1)
        .unwrap_or(false)
}
