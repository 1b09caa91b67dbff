use proptest::prelude::*;

use fixring::combinatorics::{bipartite_partitions_of, partition_count, partitions_of, BipartitePartition};
use fixring::exactalg::{q, rank, Rational};
use fixring::fixed_ring::sbar_multiply;
use fixring::macmahon::{express_in_monomials, multiply, realize, sbar_project, vector_multiply, MacMahonVector};

fn label(max_len: usize) -> impl Strategy<Value = BipartitePartition> {
    prop::collection::vec((0u32..3, 0u32..3).prop_filter("nonzero", |v| *v != (0, 0)), 0..=max_len)
        .prop_map(|vs| BipartitePartition::from_vectors(vs).unwrap())
}

fn balanced(max_len: usize) -> impl Strategy<Value = BipartitePartition> {
    label(max_len).prop_filter("weight zero", |l| l.weight() == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn realization_round_trips(lam in label(4), extra in 0usize..2) {
        let n = lam.len().max(1) + extra;
        let back = express_in_monomials(&realize(&lam, n)).unwrap();
        prop_assert!(back == MacMahonVector::monomial(lam));
    }

    #[test]
    fn vector_rule_matches_full_product(
        v in (0u32..3, 0u32..3).prop_filter("nonzero", |v| *v != (0, 0)),
        lam in label(3),
    ) {
        let single = BipartitePartition::from_vectors([v]).unwrap();
        let full = multiply(&MacMahonVector::monomial(single), &MacMahonVector::monomial(lam.clone())).unwrap();
        prop_assert!(vector_multiply(v, &lam).unwrap() == full);
    }

    #[test]
    fn products_commute_and_add_degrees(a in label(2), b in label(2)) {
        let (ma, mb) = (MacMahonVector::monomial(a.clone()), MacMahonVector::monomial(b.clone()));
        let ab = multiply(&ma, &mb).unwrap();
        prop_assert!(ab == multiply(&mb, &ma).unwrap());
        prop_assert_eq!(ab.homogeneous_degree(), Some(a.degree() + b.degree()));
    }

    #[test]
    fn projection_is_multiplicative(a in balanced(3), b in balanced(3)) {
        let (ma, mb) = (MacMahonVector::monomial(a), MacMahonVector::monomial(b));
        let direct = sbar_project(&multiply(&ma, &mb).unwrap()).unwrap();
        let via = sbar_multiply(&sbar_project(&ma).unwrap(), &sbar_project(&mb).unwrap()).unwrap();
        prop_assert!(direct.canonical_terms() == via.canonical_terms());
    }
}

#[test]
fn quotient_degree_pieces_have_partition_dimension() {
    for k in 0..=5u32 {
        let labels = partitions_of(k);
        let rows: Vec<Vec<Rational>> = bipartite_partitions_of(k, k, usize::MAX)
            .into_iter()
            .map(|lam| {
                let p = sbar_project(&MacMahonVector::monomial(lam)).unwrap();
                labels.iter().map(|l| p.canonical_coeff(l)).collect()
            })
            .collect();
        assert_eq!(rank(&rows) as u64, partition_count(k), "k = {k}");
    }
}

#[test]
fn off_balance_labels_vanish_in_the_quotient() {
    let lam = BipartitePartition::from_vectors([(2, 0), (0, 1)]).unwrap();
    assert!(sbar_project(&MacMahonVector::monomial(lam)).unwrap().is_zero());
    let one = BipartitePartition::from_vectors([(1, 1)]).unwrap();
    let p = sbar_project(&MacMahonVector::monomial(one)).unwrap();
    assert!(p.canonical_terms().values().all(|c| *c != q(0)));
}
