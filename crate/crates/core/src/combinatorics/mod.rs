//! Partitions, bipartite partitions and the factorial-built coefficient
//! functions used throughout the crate.

mod bipartite;
mod partition;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub use bipartite::{
    bipartite_partitions_of, bipartite_partitions_of_degree, BipartitePartition, Vector,
};
pub use partition::{partition_count, partitions_of, partitions_with_max_part, Partition};

use crate::exactalg::Rational;
use crate::{Error, Result};

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `1/x!` with the convention that it vanishes for negative `x`.
pub fn recip_factorial(x: i64) -> Rational {
    if x < 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::one(), BigInt::from(factorial(x as u64)))
    }
}

/// `x!` as a rational, for `x >= 0`.
pub fn factorial_q(x: i64) -> Rational {
    assert!(x >= 0, "factorial of a negative integer");
    Rational::from_integer(BigInt::from(factorial(x as u64)))
}

/// `1 / prod_i (a_i - b_i)!` over all part sizes, guarded.
pub fn recip_factorial_of_difference(a: &Partition, b: &Partition) -> Rational {
    let top = a.largest_part().max(b.largest_part());
    let mut acc = Rational::one();
    for i in 1..=top {
        let d = a.mult(i) as i64 - b.mult(i) as i64;
        let r = recip_factorial(d);
        if r.is_zero() {
            return r;
        }
        acc *= r;
    }
    acc
}

/// Size of the conjugacy class of cycle type `lam` in `S_{|lam|}`.
pub fn class_size(lam: &Partition) -> BigUint {
    let n = lam.weight() as u64;
    let mut denom = BigUint::one();
    for i in 1..=lam.largest_part() {
        let a = lam.mult(i);
        denom *= BigUint::from(i).pow(a) * factorial(a as u64);
    }
    factorial(n) / denom
}

/// Filtration degree `2(|lam| - l(lam))` of a class sum.
pub fn class_degree(lam: &Partition) -> u32 {
    2 * (lam.weight() - lam.len())
}

/// The multiplicity order `mu ⪯ nu`.
pub fn dominates(mu: &Partition, nu: &Partition) -> bool {
    mu.precedes(nu)
}

/// `f^mu_nu(x) = (x-|nu|)! (x-|mu|+1) / ((x-|nu|-l(nu)+l(mu)+1)! prod (gamma_i-beta_i)!)`.
pub fn f_coeff(mu: &Partition, nu: &Partition, x: i64) -> Result<Rational> {
    let nu_w = nu.weight() as i64;
    if x < nu_w {
        return Err(Error::invalid(format!(
            "f_coeff needs x >= |nu| (x = {x}, |nu| = {nu_w})"
        )));
    }
    let diff = recip_factorial_of_difference(nu, mu);
    if diff.is_zero() {
        return Ok(diff);
    }
    let mu_w = mu.weight() as i64;
    let lower = x - nu_w - nu.len() as i64 + mu.len() as i64 + 1;
    Ok(factorial_q(x - nu_w)
        * Rational::from_integer(BigInt::from(x - mu_w + 1))
        * recip_factorial(lower)
        * diff)
}

/// `(n_0 + ... + n_a)! / (n_0! ... n_a!)`.
pub fn multinomial(parts: &[u64]) -> BigUint {
    let total: u64 = parts.iter().sum();
    let denom = parts
        .iter()
        .fold(BigUint::one(), |acc, &p| acc * factorial(p));
    factorial(total) / denom
}
