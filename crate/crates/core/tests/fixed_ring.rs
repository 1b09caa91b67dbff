use proptest::prelude::*;

use fixring::combinatorics::{partitions_of, Partition};
use fixring::exactalg::q;
use fixring::fixed_ring::{
    admissible_basis, evaluate_generators, express_in_generators, fr_multiply, hilbert_series, is_admissible,
    sbar_multiply, truncate, FixedRingVector, WeightZeroOracle,
};
use fixring::macmahon::{Ambient, MacMahonVector};

fn element(n: u32, coeffs: &[i64]) -> FixedRingVector {
    FixedRingVector::from_terms(n, admissible_basis(n).into_iter().zip(coeffs.iter()).map(|(l, &c)| (l, q(c)))).unwrap()
}

fn sbar_element(max_weight: u32, coeffs: &[i64]) -> MacMahonVector {
    let labels = (0..=max_weight).flat_map(partitions_of);
    let mut out = MacMahonVector::zero(Ambient::SBar);
    for (l, &c) in labels.zip(coeffs.iter()) {
        out.add_term(fixring::combinatorics::BipartitePartition::canonical(&l), q(c)).unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn products_are_commutative_and_associative(
        n in 1u32..6,
        a in prop::collection::vec(-2i64..3, 16),
        b in prop::collection::vec(-2i64..3, 16),
        c in prop::collection::vec(-2i64..3, 16),
    ) {
        let (a, b, c) = (element(n, &a), element(n, &b), element(n, &c));
        let ab = fr_multiply(&a, &b).unwrap();
        prop_assert_eq!(&ab, &fr_multiply(&b, &a).unwrap());
        prop_assert_eq!(fr_multiply(&ab, &c).unwrap(), fr_multiply(&a, &fr_multiply(&b, &c).unwrap()).unwrap());
        for (lam, _) in ab.terms() {
            prop_assert!(is_admissible(lam, n));
        }
    }

    #[test]
    fn truncation_is_a_ring_map(
        n in 1u32..6,
        a in prop::collection::vec(-2i64..3, 7),
        b in prop::collection::vec(-2i64..3, 7),
    ) {
        let (u, v) = (sbar_element(3, &a), sbar_element(3, &b));
        let lhs = truncate(&sbar_multiply(&u, &v).unwrap(), n).unwrap();
        let rhs = fr_multiply(&truncate(&u, n).unwrap(), &truncate(&v, n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn generator_expressions_evaluate_back() {
    for n in 1..=6 {
        for lam in admissible_basis(n) {
            let p = express_in_generators(&lam, n).unwrap();
            assert_eq!(evaluate_generators(&p, n).unwrap(), FixedRingVector::basis(n, &lam).unwrap(), "{lam} at {n}");
        }
    }
}

#[test]
fn unit_and_dimensions() {
    for n in 1..=6 {
        let one = FixedRingVector::one(n);
        for lam in admissible_basis(n) {
            let b = FixedRingVector::basis(n, &lam).unwrap();
            assert_eq!(fr_multiply(&one, &b).unwrap(), b);
        }
        assert_eq!(hilbert_series(n).iter().sum::<usize>(), admissible_basis(n).len());
    }
    assert!(!is_admissible(&Partition::from_parts(&[2]).unwrap(), 2));
    assert!(is_admissible(&Partition::from_parts(&[1]).unwrap(), 2));
}

#[test]
fn oracle_agrees_on_small_products() {
    for n in 2..=4 {
        let oracle = WeightZeroOracle::new(n, 8).unwrap();
        let formula = fixring::fixed_ring::multiplication_table(n).unwrap();
        let table = oracle.multiplication_table().unwrap();
        for entry in &table.structure_constants {
            let same = formula.structure_constants.iter().find(|e| e.a == entry.a && e.b == entry.b);
            assert_eq!(same.map(|e| &e.terms), Some(&entry.terms), "{} * {} at {n}", entry.a, entry.b);
        }
    }
}
