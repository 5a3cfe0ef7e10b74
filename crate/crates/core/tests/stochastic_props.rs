use proptest::prelude::*;
use rbell::polyring::rational::{binomial_q, pow, rat, ratio};
use rbell::stochastic::{
    moment_of_sum, moment_oracle, monte_carlo_check, pmf_of_sum, pmf_oracle, rstirling_uniform_identity,
    MomentSpec, PmfSpec, Sampler,
};
use rbell::{Error, Rational};

fn pmf(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(0i64..6, 1..=len).prop_filter_map("nonzero mass", |w| {
        let total: i64 = w.iter().sum();
        (total > 0).then(|| w.iter().map(|&x| ratio(x, total)).collect())
    })
}

fn moments(order: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-5i64..=5, 1i64..=3).prop_map(|(n, d)| ratio(n, d)), order)
        .prop_map(|tail| std::iter::once(rat(1)).chain(tail).collect())
}

proptest! {
    #[test]
    fn pmf_matches_convolution(px in pmf(4), qy in pmf(4), p in 1usize..4, q in 0usize..3, n in 0usize..7) {
        let spec = PmfSpec::new(px, qy).unwrap();
        prop_assert_eq!(pmf_of_sum(p, q, n, &spec).unwrap(), pmf_oracle(p, q, n, &spec));
    }

    #[test]
    fn pmf_sums_to_one(px in pmf(3), qy in pmf(3), p in 1usize..3, q in 0usize..3) {
        let spec = PmfSpec::new(px.clone(), qy.clone()).unwrap();
        let support = (px.len() - 1) * p + (qy.len() - 1) * q;
        let total: Rational = (0..=support).map(|n| pmf_of_sum(p, q, n, &spec).unwrap()).sum();
        prop_assert_eq!(total, rat(1));
    }

    #[test]
    fn moments_match_expansion(mu in moments(6), nu in moments(6), p in 1usize..4, q in 0usize..3, n in 0usize..7) {
        let spec = MomentSpec::new(mu, nu).unwrap();
        prop_assert_eq!(moment_of_sum(p, q, n, &spec).unwrap(), moment_oracle(p, q, n, &spec).unwrap());
    }

    #[test]
    fn no_y_terms_is_classical(mu in moments(5), p in 1usize..4, n in 0usize..6) {
        let spec = MomentSpec::new(mu.clone(), vec![rat(1)]).unwrap();
        let via_bell = rbell::bell::bell_egf(
            n + p,
            p,
            &rbell::bell::VarSeq::from_values((1..=n + 1).map(|l| rat(l as i64) * &mu[l - 1]).collect()),
        );
        let classical = via_bell.as_constant().unwrap() / binomial_q(n + p, p);
        prop_assert_eq!(moment_of_sum(p, 0, n, &spec).unwrap(), classical);
    }
}

#[test]
fn uniform_identity() {
    for p in 1..=3 {
        for r in 0..=3 {
            for n in 0..=6 {
                assert!(rstirling_uniform_identity(p, r, n).unwrap().holds(), "p={p} r={r} n={n}");
            }
        }
    }
}

#[test]
fn constant_variables() {
    let spec = MomentSpec::from_fn(5, |j| pow(&rat(2), j), |j| pow(&rat(3), j)).unwrap();
    for n in 0..=5 {
        assert_eq!(moment_of_sum(2, 1, n, &spec).unwrap(), pow(&rat(7), n));
    }
}

#[test]
fn bernoulli_sum_is_binomial() {
    let spec = PmfSpec::new(vec![ratio(2, 3), ratio(1, 3)], vec![rat(1)]).unwrap();
    for n in 0..=4 {
        let expected = binomial_q(4, n) * pow(&ratio(1, 3), n) * pow(&ratio(2, 3), 4 - n);
        assert_eq!(pmf_of_sum(4, 0, n, &spec).unwrap(), expected);
    }
    assert_eq!(pmf_of_sum(4, 0, 5, &spec).unwrap(), rat(0));
}

#[test]
fn preconditions() {
    assert!(PmfSpec::new(vec![ratio(1, 2)], vec![rat(1)]).is_err());
    assert!(PmfSpec::new(vec![rat(2), rat(-1)], vec![rat(1)]).is_err());
    assert!(MomentSpec::new(vec![rat(2)], vec![rat(1)]).is_err());
    let spec = MomentSpec::new(vec![rat(1), rat(0)], vec![rat(1)]).unwrap();
    assert!(matches!(moment_of_sum(1, 1, 2, &spec), Err(Error::OrderTooLow { .. })));
    assert!(moment_of_sum(0, 1, 0, &spec).is_err());
}

#[test]
fn monte_carlo_agrees() {
    let rep = monte_carlo_check(2, 1, 3, &Sampler::Uniform01, &Sampler::Bernoulli(ratio(1, 4)), 20_000, 11).unwrap();
    assert!(rep.holds(), "{rep:?}");
    assert!(monte_carlo_check(1, 0, 1, &Sampler::Uniform01, &Sampler::Uniform01, 100, 1).is_err());
}
