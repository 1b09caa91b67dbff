use std::sync::Arc;

use proptest::prelude::*;

use fixring::exactalg::{minor, q, GradedIdeal, Monomial, PolyMatrix, Polynomial, Variables};

fn vars() -> Arc<Variables> {
    Variables::standard(["x", "y", "z"])
}

/// Small polynomials in x, y, z with exponents below 3.
fn poly(vars: &Arc<Variables>, terms: &[(u32, u32, u32, i64)]) -> Polynomial {
    Polynomial::from_terms(vars, terms.iter().map(|&(a, b, c, k)| (Monomial(vec![a, b, c]), q(k))))
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, u32, i64)>> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -3i64..4), 0..4)
}

fn leibniz(entries: &[Vec<Polynomial>], vars: &Arc<Variables>) -> Polynomial {
    let n = entries.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Polynomial::zero(vars);
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = Polynomial::one(vars);
        for (i, &p) in perm.iter().enumerate() {
            term = &term * &entries[i][p];
        }
        total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_matches_leibniz(n in 1usize..5, raw in prop::collection::vec(terms(), 16)) {
        let v = vars();
        let entries: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| poly(&v, &raw[4 * i + j])).collect()).collect();
        let m = PolyMatrix::from_rows(&v, entries.clone()).unwrap();
        let idx: Vec<usize> = (0..n).collect();
        prop_assert_eq!(minor(&m, &idx, &idx).unwrap(), leibniz(&entries, &v));
    }

    #[test]
    fn ring_axioms(a in terms(), b in terms(), c in terms()) {
        let v = vars();
        let (a, b, c) = (poly(&v, &a), poly(&v, &b), poly(&v, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn degree_spans_ignore_generator_order(picks in prop::collection::vec(0usize..6, 1..5), rotate in 0usize..5) {
        let v = vars();
        let pool = [
            poly(&v, &[(1, 0, 0, 1), (0, 1, 0, -1)]),
            poly(&v, &[(2, 0, 0, 1), (0, 0, 2, 2)]),
            poly(&v, &[(1, 1, 0, 1), (0, 1, 1, 1), (1, 0, 1, -3)]),
            poly(&v, &[(0, 0, 1, 1)]),
            poly(&v, &[(1, 1, 1, 1), (0, 0, 3, -1)]),
            poly(&v, &[(2, 1, 0, 5)]),
        ];
        let gens: Vec<Polynomial> = picks.iter().map(|&i| pool[i].clone()).collect();
        let mut rotated = gens.clone();
        let len = rotated.len();
        rotated.rotate_left(rotate % len);
        rotated.reverse();
        let i = GradedIdeal::new(&v, gens).unwrap();
        let j = GradedIdeal::new(&v, rotated).unwrap();
        for d in 0..=4 {
            let a = i.degree_component_span(d).unwrap();
            let b = j.degree_component_span(d).unwrap();
            prop_assert!(a.echelon() == b.echelon());
            // adding multiples of generators changes nothing
            let mut extended = i.generators().to_vec();
            extended.push(&i.generators()[0] * &Polynomial::var(&v, 1));
            let k = GradedIdeal::new(&v, extended).unwrap();
            prop_assert!(k.degree_component_span(d).unwrap().echelon() == a.echelon());
        }
    }
}
