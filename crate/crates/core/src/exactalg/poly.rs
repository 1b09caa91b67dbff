use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::{Error, Result};

/// An ordered set of named variables with positive integer degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variables {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl Variables {
    pub fn new(names: Vec<String>, degrees: Vec<u32>) -> Result<Arc<Self>> {
        if names.len() != degrees.len() {
            return Err(Error::invalid("one degree per variable is required"));
        }
        if degrees.contains(&0) {
            return Err(Error::invalid("variable degrees must be positive"));
        }
        let mut seen = std::collections::HashSet::new();
        if !names.iter().all(|n| seen.insert(n)) {
            return Err(Error::invalid("duplicate variable name"));
        }
        Ok(Arc::new(Variables { names, degrees }))
    }

    /// Variables of degree 1.
    pub fn standard<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let degrees = vec![1; names.len()];
        Variables::new(names, degrees).expect("valid standard variables")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.degrees).map(|(e, d)| e * d).sum()
    }

    /// All monomials of weighted degree `d`, in descending lexicographic order.
    pub fn monomials_of_degree(&self, d: u32, cap: usize) -> Result<Vec<Monomial>> {
        fn rec(
            i: usize,
            rest: u32,
            degs: &[u32],
            cur: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
            cap: usize,
        ) -> Result<()> {
            if i == degs.len() {
                if rest == 0 {
                    if out.len() == cap {
                        return Err(Error::CapExceeded {
                            what: "monomials in a degree piece",
                            value: cap + 1,
                            bound: cap,
                        });
                    }
                    out.push(Monomial(cur.clone()));
                }
                return Ok(());
            }
            if i + 1 == degs.len() {
                if rest % degs[i] == 0 {
                    cur[i] = rest / degs[i];
                    rec(i + 1, 0, degs, cur, out, cap)?;
                    cur[i] = 0;
                }
                return Ok(());
            }
            for e in (0..=rest / degs[i]).rev() {
                cur[i] = e;
                rec(i + 1, rest - e * degs[i], degs, cur, out, cap)?;
            }
            cur[i] = 0;
            Ok(())
        }
        let mut out = Vec::new();
        let mut cur = vec![0; self.len()];
        rec(0, d, &self.degrees, &mut cur, &mut out, cap)?;
        Ok(out)
    }
}

/// Exponent vector over a fixed variable set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<Variables>,
    terms: BTreeMap<Monomial, Rational>,
}

fn same_vars(a: &Arc<Variables>, b: &Arc<Variables>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(vars: &Arc<Variables>) -> Self {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<Variables>, c: Rational) -> Self {
        Polynomial::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &Arc<Variables>) -> Self {
        Polynomial::constant(vars, Rational::one())
    }

    pub fn var(vars: &Arc<Variables>, i: usize) -> Self {
        Polynomial::monomial(vars, Monomial::var(vars.len(), i), Rational::one())
    }

    /// Looks a variable up by name.
    pub fn named(vars: &Arc<Variables>, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::invalid(format!("unknown variable {name}")))?;
        Ok(Polynomial::var(vars, i))
    }

    pub fn monomial(vars: &Arc<Variables>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn from_terms(
        vars: &Arc<Variables>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Polynomial::from_accumulator(vars, acc)
    }

    fn from_accumulator(vars: &Arc<Variables>, acc: HashMap<Monomial, Rational>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.vars.len()))
    }

    /// `Some(d)` if every term has weighted degree `d`; `None` for a
    /// non-homogeneous polynomial. The zero polynomial is homogeneous of
    /// every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| self.vars.degree_of(m));
        let first = match it.next() {
            Some(d) => d,
            None => return Some(0),
        };
        it.all(|d| d == first).then_some(first)
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(self.vars.degree_of(m))
                .or_insert_with(|| Polynomial::zero(&self.vars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn scalar_mul(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_vars(&self.vars, &other.vars) {
            return Err(Error::VariableMismatch);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m, c);
        }
        Ok(Polynomial { vars: self.vars.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_vars(&self.vars, &other.vars) {
            return Err(Error::VariableMismatch);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Ok(Polynomial::from_accumulator(&self.vars, acc))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Result<Polynomial> {
        if !same_vars(&self.vars, &value.vars) {
            return Err(Error::VariableMismatch);
        }
        if var >= self.vars.len() {
            return Err(Error::IndexOutOfRange(format!("variable {var}")));
        }
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.vars)];
        let mut out: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty") * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            for (pm, pc) in &powers[e].terms {
                *out.entry(rest.mul(pm)).or_insert_with(Rational::zero) += c * pc;
            }
        }
        Ok(Polynomial::from_accumulator(&self.vars, out))
    }

    /// The polynomial `p` with `self = sum_k p_k var^k`, for `k = power`.
    pub fn coefficient_of(&self, var: usize, power: u32) -> Result<Polynomial> {
        if var >= self.vars.len() {
            return Err(Error::IndexOutOfRange(format!("variable {var}")));
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] == power)
            .map(|(m, c)| {
                let mut m = m.clone();
                m.0[var] = 0;
                (m, c.clone())
            })
            .collect();
        Ok(Polynomial { vars: self.vars.clone(), terms })
    }

    /// Ring map sending variable `i` to `images[i]`, all over `target`.
    pub fn map_to(&self, target: &Arc<Variables>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.vars.len() {
            return Err(Error::invalid("one image per variable is required"));
        }
        if images.iter().any(|p| !same_vars(&p.vars, target)) {
            return Err(Error::VariableMismatch);
        }
        let mut cache: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; images.len()];
        let mut out: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().expect("nonempty") * &images[i];
                    cache[i].push(next);
                }
                term = &term * &cache[i][e as usize];
            }
            for (tm, tc) in term.terms {
                *out.entry(tm).or_insert_with(Rational::zero) += tc;
            }
        }
        Ok(Polynomial::from_accumulator(target, out))
    }

    /// Terms in descending graded-lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(&self.vars, a.0, b.0));
        v
    }

    /// Leading term in graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .min_by(|a, b| grlex_desc(&self.vars, a.0, b.0))
    }
}

fn grlex_desc(vars: &Variables, a: &Monomial, b: &Monomial) -> Ordering {
    vars.degree_of(b)
        .cmp(&vars.degree_of(a))
        .then_with(|| b.cmp(a))
}

fn add_term(terms: &mut BTreeMap<Monomial, Rational>, m: &Monomial, c: &Rational) {
    if let Some(x) = terms.get_mut(m) {
        *x += c;
        if x.is_zero() {
            terms.remove(m);
        }
    } else if !c.is_zero() {
        terms.insert(m.clone(), c.clone());
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics if the operands live over different variable sets; use
            /// the `checked_` form to get an error instead.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials over the same variables")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.vars.names[v].clone()
                    } else {
                        format!("{}^{}", self.vars.names[v], e)
                    }
                })
                .collect();
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

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{frac, q};

    fn xyt() -> (Arc<Variables>, Polynomial, Polynomial, Polynomial) {
        let v = Variables::standard(["x", "y", "t"]);
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let t = Polynomial::var(&v, 2);
        (v, x, y, t)
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y, _) = xyt();
        assert_eq!((&x + &y) * (&x - &y), &x * &x - &y * &y);
    }

    #[test]
    fn coefficient_extraction() {
        let v = Variables::standard(["t", "x1", "x2"]);
        let t = Polynomial::var(&v, 0);
        let x1 = Polynomial::var(&v, 1);
        let x2 = Polynomial::var(&v, 2);
        let p = (&t - &x1) * (&t - &x2);
        assert_eq!(p.coefficient_of(0, 1).unwrap(), -(&x1 + &x2));
        assert_eq!(p.coefficient_of(0, 0).unwrap(), &x1 * &x2);
    }

    #[test]
    fn substitution() {
        let (v, x, y, _) = xyt();
        let zero = Polynomial::zero(&v);
        assert!(x.pow(2).substitute(0, &zero).unwrap().is_zero());
        let p = x.pow(2).substitute(0, &(&y + &Polynomial::one(&v))).unwrap();
        assert_eq!(p, y.pow(2) + y.scalar_mul(&q(2)) + Polynomial::one(&v));
    }

    #[test]
    fn mismatched_variables() {
        let (_, x, _, _) = xyt();
        let other = Variables::standard(["u"]);
        let u = Polynomial::var(&other, 0);
        assert!(matches!(x.checked_add(&u), Err(Error::VariableMismatch)));
        assert!(matches!(x.checked_mul(&u), Err(Error::VariableMismatch)));
    }

    #[test]
    fn display_is_canonical() {
        let v = Variables::new(
            vec!["x1".into(), "y2".into(), "t".into()],
            vec![1, 1, 1],
        )
        .unwrap();
        let x1 = Polynomial::var(&v, 0);
        let y2 = Polynomial::var(&v, 1);
        let t = Polynomial::var(&v, 2);
        let p = (x1.pow(2) * &y2).scalar_mul(&q(3)) - t.scalar_mul(&frac(1, 2));
        assert_eq!(p.to_string(), "3*x1^2*y2 - 1/2*t");
        assert_eq!(Polynomial::zero(&v).to_string(), "0");
        assert_eq!((-Polynomial::one(&v)).to_string(), "-1");
    }

    #[test]
    fn weighted_degrees() {
        let v = Variables::new(vec!["a".into(), "b".into()], vec![2, 4]).unwrap();
        let a = Polynomial::var(&v, 0);
        let b = Polynomial::var(&v, 1);
        assert_eq!((a.pow(2) + &b).homogeneous_degree(), Some(4));
        assert_eq!((&a + &b).homogeneous_degree(), None);
        let mons = v.monomials_of_degree(8, 100).unwrap();
        assert_eq!(mons.len(), 3);
        assert!(mons.windows(2).all(|w| w[0] > w[1]));
        assert!(v.monomials_of_degree(3, 100).unwrap().is_empty());
        assert!(matches!(
            Variables::standard(["x", "y", "z"]).monomials_of_degree(10, 5),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn ring_map() {
        let (v, x, y, _) = xyt();
        let w = Variables::standard(["s"]);
        let s = Polynomial::var(&w, 0);
        let images = vec![s.clone(), s.scalar_mul(&q(-1)), Polynomial::zero(&w)];
        let p = &x * &y + x.pow(2);
        assert!(p.map_to(&w, &images).unwrap().is_zero());
        let _ = v;
    }
}
