//! The linear map `psi(b_lambda) = (-1)^{|lambda|} chi_{hat lambda}` from the
//! torus-fixed ring at `n` points to the graded class algebra of `S_n`, and
//! the check that it is a graded ring isomorphism.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::class_algebra::{graded_dims, hook, hook_cup, ClassAlgebra, ClassAlgebraOptions, ClassVector};
use crate::combinatorics::{class_degree, partitions_of, Partition};
use crate::exactalg::Rational;
use crate::fixed_ring::{admissible_basis, fr_multiply, hilbert_series, is_admissible, FixedRingVector};
use crate::{Error, Result};

/// `hat lambda ⊢ n`: multiplicity of 1 is `n - l(lambda) - |lambda|`, and
/// each part `i` of `lambda` becomes a part `i + 1`.
pub fn hat(lambda: &Partition, n: u32) -> Result<Partition> {
    if !is_admissible(lambda, n) {
        return Err(Error::invalid(format!("{lambda} needs l + |lambda| <= {n}")));
    }
    let mut mult = vec![n - lambda.len() - lambda.weight()];
    mult.extend_from_slice(lambda.multiplicities());
    Ok(Partition::from_multiplicities(mult))
}

/// Inverse of [`hat`]: drops the ones and lowers every other part by one.
pub fn unhat(lambda_hat: &Partition) -> Partition {
    Partition::from_multiplicities(lambda_hat.multiplicities().iter().skip(1).copied().collect())
}

fn sign(e: u32) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn psi(u: &FixedRingVector) -> Result<ClassVector> {
    let n = u.n();
    let mut out = ClassVector::zero(n);
    for (lam, c) in u.terms() {
        out.add_term(hat(lam, n)?, sign(lam.weight()) * c)?;
    }
    Ok(out)
}

pub fn psi_inverse(c: &ClassVector) -> Result<FixedRingVector> {
    let n = c.n();
    let mut out = FixedRingVector::zero(n);
    for (lh, x) in c.terms() {
        let lam = unhat(lh);
        out.add_term(lam.clone(), sign(lam.weight()) * x)?;
    }
    Ok(out)
}

/// How the cup-product side of the check is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CupMode {
    /// Degree part of the brute-force convolution in `Z(Q[S_n])`.
    Oracle,
    /// The closed hook-cup formula.
    Formula,
    /// Both, and both must agree with the left side.
    Both,
}

impl std::str::FromStr for CupMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(CupMode::Oracle),
            "formula" => Ok(CupMode::Formula),
            "both" => Ok(CupMode::Both),
            _ => Err(Error::invalid(format!("unknown mode {s:?} (oracle, formula, both)"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub k: u32,
    pub lambda: Partition,
    pub pass: bool,
    /// `psi(m̄_(k,k) b_lambda)`.
    pub lhs: ClassVector,
    /// `psi(m̄_(k,k)) ∪ psi(b_lambda)`.
    pub rhs: ClassVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_formula: Option<ClassVector>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Dims {
    pub fixed_ring: Vec<usize>,
    pub class_algebra: Vec<usize>,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub n: u32,
    pub mode: CupMode,
    pub checks: Vec<Check>,
    pub dims: Dims,
    /// `hat` is a bijection onto partitions of `n` preserving degree, and
    /// `psi_inverse ∘ psi` is the identity on the basis.
    pub bijective: bool,
    /// The reindexing of the generator expansion by `xi` lines up with the
    /// hook-cup expansion term by term.
    pub xi_consistent: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl TheoremReport {
    /// The smallest failing `(k, lambda)`.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .min_by(|a, b| (a.k, &a.lambda).cmp(&(b.k, &b.lambda)))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub mode: CupMode,
    pub class_options: ClassAlgebraOptions,
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: CupMode::Oracle, class_options: ClassAlgebraOptions::default(), timing: false }
    }
}

fn bijectivity(n: u32) -> Result<bool> {
    let basis = admissible_basis(n);
    let mut images = BTreeSet::new();
    for lam in &basis {
        let lh = hat(lam, n)?;
        if class_degree(&lh) != 2 * lam.weight() || unhat(&lh) != *lam {
            return Ok(false);
        }
        images.insert(lh);
        let b = FixedRingVector::basis(n, lam)?;
        if psi_inverse(&psi(&b)?)? != b {
            return Ok(false);
        }
    }
    let all: BTreeSet<Partition> = partitions_of(n).into_iter().collect();
    if images != all {
        return Ok(false);
    }
    for lh in &all {
        let c = ClassVector::basis(lh);
        if psi(&psi_inverse(&c)?)? != c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `xi(mu)`: ones counted by `k + 1 - l(lambda) + l(mu)`, then the parts of
/// `lambda \ mu` each raised by one.
pub fn xi(k: u32, lambda: &Partition, mu: &Partition) -> Result<Partition> {
    let ones = (k + 1 + mu.len()).checked_sub(lambda.len()).ok_or_else(|| {
        Error::invalid(format!("l({lambda}) - l({mu}) exceeds {}", k + 1))
    })?;
    let rest = lambda
        .difference(mu)
        .ok_or_else(|| Error::invalid(format!("{mu} is not contained in {lambda}")))?;
    let mut mult = vec![ones];
    mult.extend_from_slice(rest.multiplicities());
    Ok(Partition::from_multiplicities(mult))
}

/// For one `(k, lambda)`: `xi` maps the surviving `mu` bijectively onto the
/// `nu ⪯ hat lambda` with `l(nu) = k + 1`, with `|xi(mu)| = k+1+|lambda|-|mu|`,
/// and `hat` of each generator-expansion target is the hook-cup target of `xi(mu)`.
pub fn xi_consistent(n: u32, k: u32, lambda: &Partition) -> Result<bool> {
    let lh = hat(lambda, n)?;
    let mut images = BTreeSet::new();
    for mu in lambda.sub_multisets() {
        if lambda.len() > mu.len() + k + 1 || lambda.weight() + mu.len() + k + 1 > n {
            continue;
        }
        let x = xi(k, lambda, &mu)?;
        let part = lambda.weight() - mu.weight() + k;
        if x.len() != k + 1 || x.weight() != part + 1 || !x.precedes(&lh) {
            return Ok(false);
        }
        let merged = lh.difference(&x).expect("xi(mu) ⪯ hat lambda").with_part(x.weight());
        if hat(&mu.with_part(part), n)? != merged {
            return Ok(false);
        }
        if !images.insert(x) {
            return Ok(false);
        }
    }
    let expected: BTreeSet<Partition> = lh.sub_multisets().into_iter().filter(|nu| nu.len() == k + 1).collect();
    Ok(images == expected)
}

fn formula_cup(k: u32, rhs_factor: &ClassVector) -> Result<ClassVector> {
    let mut out = ClassVector::zero(rhs_factor.n());
    for (lh, c) in rhs_factor.terms() {
        out = out.checked_add(&hook_cup(k, lh)?.scalar_mul(c))?;
    }
    Ok(out)
}

/// Checks `psi(m̄_(k,k) b_lambda) = psi(m̄_(k,k)) ∪ psi(b_lambda)` for every
/// `1 <= k <= n-1` and every basis label, plus matching graded dimensions
/// and bijectivity of `psi`.
pub fn verify_main_theorem(n: u32, opts: &VerifyOptions) -> Result<TheoremReport> {
    if n == 0 {
        return Err(Error::invalid("need n >= 1"));
    }
    let start = Instant::now();
    let alg = match opts.mode {
        CupMode::Formula => None,
        _ => Some(ClassAlgebra::with_options(n, opts.class_options.clone())?),
    };
    let basis = admissible_basis(n);
    let grid: Vec<(u32, Partition)> =
        (1..n).flat_map(|k| basis.iter().map(move |l| (k, l.clone()))).collect();
    let results: Vec<Result<(Check, bool)>> = grid
        .into_par_iter()
        .map(|(k, lam)| {
            let g = FixedRingVector::generator(n, k)?;
            let b = FixedRingVector::basis(n, &lam)?;
            let lhs = psi(&fr_multiply(&g, &b)?)?;
            let pg = psi(&g)?;
            debug_assert_eq!(pg, ClassVector::basis(&hook(n, k)?));
            let pb = psi(&b)?;
            let oracle = match &alg {
                Some(a) => Some(a.cup(&pg, &pb)?),
                None => None,
            };
            let formula = match opts.mode {
                CupMode::Oracle => None,
                _ => Some(formula_cup(k, &pb)?),
            };
            let pass = oracle.as_ref().map_or(true, |r| *r == lhs) && formula.as_ref().map_or(true, |r| *r == lhs);
            let (rhs, rhs_formula) = match oracle {
                Some(r) => (r, formula),
                None => (formula.expect("formula mode computes the formula side"), None),
            };
            let xi_ok = xi_consistent(n, k, &lam)?;
            Ok((Check { k, lambda: lam, pass, lhs, rhs, rhs_formula }, xi_ok))
        })
        .collect();
    let mut checks = Vec::new();
    let mut xi_all = true;
    for r in results {
        let (c, x) = r?;
        xi_all &= x;
        checks.push(c);
    }
    let mut fixed = hilbert_series(n);
    let class = graded_dims(n);
    fixed.resize(class.len().max(fixed.len()), 0);
    let dims = Dims { equal: fixed == class, fixed_ring: hilbert_series(n), class_algebra: class };
    let bijective = bijectivity(n)?;
    let pass = checks.iter().all(|c| c.pass) && dims.equal && bijective && xi_all;
    let elapsed_ms = opts.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(TheoremReport { n, mode: opts.mode, checks, dims, bijective, xi_consistent: xi_all, pass, elapsed_ms })
}

/// `psi(u) ∪ psi(v)` against `psi(u v)` for arbitrary elements, using the
/// convolution oracle.
pub fn check_product(alg: &ClassAlgebra, u: &FixedRingVector, v: &FixedRingVector) -> Result<bool> {
    let lhs = psi(&fr_multiply(u, v)?)?;
    let mut rhs = ClassVector::zero(u.n());
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            let pa = psi(&FixedRingVector::basis(u.n(), a)?)?;
            let pb = psi(&FixedRingVector::basis(u.n(), b)?)?;
            rhs = rhs.checked_add(&alg.cup(&pa, &pb)?.scalar_mul(&(x * y)))?;
        }
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    fn opts(mode: CupMode) -> VerifyOptions {
        VerifyOptions { mode, class_options: ClassAlgebraOptions { max_n: 8, cache_dir: None }, timing: false }
    }

    #[test]
    fn hat_examples() {
        assert_eq!(hat(&Partition::empty(), 5).unwrap(), Partition::ones(5));
        assert_eq!(hat(&p(&[1]), 4).unwrap(), p(&[2, 1, 1]));
        assert_eq!(hat(&p(&[2]), 4).unwrap(), p(&[3, 1]));
        assert!(hat(&p(&[1, 1]), 3).is_err());
        for n in 1..=8 {
            for lam in admissible_basis(n) {
                let lh = hat(&lam, n).unwrap();
                assert_eq!(lh.weight(), n);
                assert_eq!(lh.len(), n - lam.weight());
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&FixedRingVector::one(4)).unwrap(), ClassVector::basis(&Partition::ones(4)));
        assert_eq!(
            psi(&FixedRingVector::basis(4, &p(&[2])).unwrap()).unwrap(),
            ClassVector::basis(&p(&[3, 1]))
        );
        assert_eq!(
            psi(&FixedRingVector::basis(4, &p(&[1])).unwrap()).unwrap(),
            ClassVector::basis(&p(&[2, 1, 1])).scalar_mul(&q(-1))
        );
    }

    #[test]
    fn generator_one_at_four_points() {
        let r = verify_main_theorem(4, &opts(CupMode::Both)).unwrap();
        let c = r.checks.iter().find(|c| c.k == 1 && c.lambda == p(&[1])).unwrap();
        let expected = ClassVector::from_terms(4, [(p(&[2, 2]), q(-2)), (p(&[3, 1]), q(-3))]).unwrap();
        assert_eq!(c.lhs, expected);
        assert_eq!(c.rhs, expected);
        assert!(r.pass);
    }

    #[test]
    fn small_n_pass() {
        let r = verify_main_theorem(2, &opts(CupMode::Oracle)).unwrap();
        assert_eq!(r.checks.len(), 2);
        assert!(r.pass);
        for n in 1..=5 {
            let r = verify_main_theorem(n, &opts(CupMode::Both)).unwrap();
            assert!(r.pass, "n={n}: {:?}", r.first_failure());
            assert!(r.elapsed_ms.is_none());
        }
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(1, &p(&[1]), &Partition::empty()).unwrap(), p(&[2, 1]));
        assert!(xi(0, &p(&[1, 1]), &Partition::empty()).is_err());
        for n in 2..=7 {
            for lam in admissible_basis(n) {
                for k in 1..n {
                    assert!(xi_consistent(n, k, &lam).unwrap(), "n={n} k={k} lambda={lam}");
                }
            }
        }
    }
}
