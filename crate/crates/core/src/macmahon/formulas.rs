//! Closed expansions in the canonical basis of the quotient.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Ambient, MacMahonVector};
use crate::combinatorics::{
    f_coeff, factorial_q, recip_factorial, recip_factorial_of_difference, BipartitePartition,
    Partition,
};
use crate::exactalg::Rational;
use crate::{Error, Result};

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// The label `(k,l)(lambda,0)(0,1)^{|lambda|+k-l}`.
pub fn kl_label(k: u32, l: u32, lambda: &Partition) -> Result<BipartitePartition> {
    let ones = lambda.weight() as i64 + k as i64 - l as i64;
    if l == 0 || ones < 0 {
        return Err(Error::invalid(format!(
            "need l > 0 and |lambda| + k - l >= 0 (k={k}, l={l}, lambda={lambda})"
        )));
    }
    BipartitePartition::with_row_parts(lambda, ones as u32).add_vector((k, l))
}

/// Canonical target `m̄_{(p,0)(mu,0)(0,1)^{|mu|+p}}` with `p = |lambda|-|mu|+k`.
fn target(mu: &Partition, part: u32) -> BipartitePartition {
    BipartitePartition::canonical(&mu.with_part(part))
}

/// Expansion of `m̄_{(k,l)(lambda,0)(0,1)^{|lambda|+k-l}}` for `k >= l > 0`:
/// the coefficient of the term for `mu ⪯ lambda` is
/// `(-1)^l l! (beta_{|lambda|-|mu|+k} + 1) / ((l - l(lambda) + l(mu))! prod (alpha_i - beta_i)!)`.
pub fn expand_kl_large_k(k: u32, l: u32, lambda: &Partition) -> Result<MacMahonVector> {
    if !(k >= l && l > 0) {
        return Err(Error::invalid(format!("this expansion needs k >= l > 0 (k={k}, l={l})")));
    }
    let lam_w = lambda.weight() as i64;
    let lam_l = lambda.len() as i64;
    let mut out = MacMahonVector::zero(Ambient::SBar);
    for mu in lambda.sub_multisets() {
        let part = (lam_w - mu.weight() as i64 + k as i64) as u32;
        let c = sign(l as i64)
            * factorial_q(l as i64)
            * int(mu.mult(part) as i64 + 1)
            * recip_factorial(l as i64 - lam_l + mu.len() as i64)
            * recip_factorial_of_difference(lambda, &mu);
        out.add_term(target(&mu, part), c)?;
    }
    Ok(out)
}

/// Expansion of `m̄_{(k,l)(lambda,0)(0,1)^{|lambda|+k-l}}` for `k >= 0`,
/// `l > 0`, `|lambda| + k - l >= 0`, as a double sum weighted by the
/// coefficients `f^mu_nu(k + |lambda|)`.
///
/// At `(k, l) = (0, 1)` the double sum is `|lambda|` times the true value:
/// its derivation treats `(k,l)` as a vector of multiplicity zero in the
/// label, while `(0,1)` already occurs `|lambda| - 1` times. [`expand_kl`]
/// handles that label separately.
pub fn expand_kl_general(k: u32, l: u32, lambda: &Partition) -> Result<MacMahonVector> {
    let lam_w = lambda.weight() as i64;
    let lam_l = lambda.len() as i64;
    let (k, l) = (k as i64, l as i64);
    if l <= 0 || lam_w + k - l < 0 {
        return Err(Error::invalid(format!(
            "need l > 0 and |lambda| + k - l >= 0 (k={k}, l={l}, lambda={lambda})"
        )));
    }
    let subs = lambda.sub_multisets();
    let mut out = MacMahonVector::zero(Ambient::SBar);
    for mu in &subs {
        let part = lam_w - mu.weight() as i64 + k;
        if part == 0 {
            // mu = lambda and k = 0: the inner sum is empty because |nu| <= |lambda| - l.
            continue;
        }
        let mut inner = Rational::zero();
        for nu in &subs {
            if !mu.precedes(nu) {
                continue;
            }
            let nu_w = nu.weight() as i64;
            let slack = lam_w - nu_w + k - l;
            if slack < 0 {
                continue;
            }
            let nu_l = nu.len() as i64;
            inner += sign(nu_l + lam_l + l)
                * f_coeff(mu, nu, k + lam_w)?
                * factorial_q(lam_l - nu_l + slack)
                * recip_factorial(slack)
                * recip_factorial_of_difference(lambda, nu);
        }
        let c = int(mu.mult(part as u32) as i64 + 1) * inner;
        out.add_term(target(mu, part as u32), c)?;
    }
    Ok(out)
}

/// `m̄_{(k,l)(lambda,0)(0,1)^{|lambda|+k-l}}` in the canonical basis, using
/// the `k >= l` expansion where it applies and the general one otherwise.
pub fn expand_kl(k: u32, l: u32, lambda: &Partition) -> Result<MacMahonVector> {
    if (k, l) == (0, 1) && !lambda.is_empty() {
        // (0,1)(lambda,0)(0,1)^{|lambda|-1} is already canonical
        return Ok(MacMahonVector::canonical(lambda));
    }
    if l > 0 && k >= l {
        expand_kl_large_k(k, l, lambda)
    } else {
        expand_kl_general(k, l, lambda)
    }
}

/// `m̄_(k,k) · m̄_{(lambda,0)(0,1)^{|lambda|}}` in the canonical basis: a sum
/// over `mu ⪯ lambda` with `l(lambda) - l(mu) <= k + 1` of
/// `(-1)^k k! (k+|lambda|-|mu|+1) (beta_{|lambda|-|mu|+k}+1) / ((k-l(lambda)+l(mu)+1)! prod (alpha_i-beta_i)!)`.
pub fn generator_times_basis(k: u32, lambda: &Partition) -> Result<MacMahonVector> {
    if k == 0 {
        return Err(Error::invalid("generator index must be positive"));
    }
    let lam_w = lambda.weight() as i64;
    let lam_l = lambda.len() as i64;
    let k = k as i64;
    let mut out = MacMahonVector::zero(Ambient::SBar);
    for mu in lambda.sub_multisets() {
        let mu_l = mu.len() as i64;
        if lam_l - mu_l > k + 1 {
            continue;
        }
        let part = lam_w - mu.weight() as i64 + k;
        let c = sign(k)
            * factorial_q(k)
            * int(part + 1)
            * int(mu.mult(part as u32) as i64 + 1)
            * recip_factorial(k - lam_l + mu_l + 1)
            * recip_factorial_of_difference(lambda, &mu);
        out.add_term(target(&mu, part as u32), c)?;
    }
    Ok(out)
}
