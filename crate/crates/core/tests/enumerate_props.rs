use proptest::prelude::*;
use rbell::enumerate::{iter_compositions, iter_lambda, iter_pi};
use rbell::polyring::rational::binomial;

proptest! {
    #[test]
    fn compositions_are_counted_by_stars_and_bars(total in 0usize..8, slots in 1usize..6) {
        let all: Vec<_> = iter_compositions(total, slots).collect();
        prop_assert_eq!(num_bigint::BigInt::from(all.len()), binomial(total + slots - 1, slots - 1));
        for c in &all {
            prop_assert_eq!(c.parts.len(), slots);
            prop_assert_eq!(c.parts.iter().sum::<usize>(), total);
        }
    }

    #[test]
    fn pi_vectors_satisfy_both_sums(n in 0usize..10, k in 0usize..10) {
        for p in iter_pi(n, k) {
            prop_assert_eq!(p.counts.iter().sum::<usize>(), k);
            prop_assert_eq!(p.counts.iter().enumerate().map(|(i, c)| (i + 1) * c).sum::<usize>(), n);
        }
    }

    #[test]
    fn lambda_vectors_satisfy_all_sums(n in 0usize..8, k in 0usize..8, r in 0usize..4) {
        for l in iter_lambda(n, k, r) {
            prop_assert_eq!(l.ks.iter().sum::<usize>(), k);
            prop_assert_eq!(l.rs.iter().sum::<usize>(), r);
            let weight: usize = l.ks.iter().enumerate().map(|(i, c)| (i + 1) * c).sum::<usize>()
                + l.rs.iter().enumerate().map(|(i, c)| i * c).sum::<usize>();
            prop_assert_eq!(weight, n);
        }
    }
}

#[test]
fn empty_compositions() {
    assert_eq!(iter_compositions(0, 0).count(), 1);
    assert_eq!(iter_compositions(3, 0).count(), 0);
}
