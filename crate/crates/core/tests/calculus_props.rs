use proptest::prelude::*;
use rbell::calculus::{derivative_via_rbell, derivative_via_series, whitney_exp_identity, JetSpec};
use rbell::polyring::rational::{rat, ratio};
use rbell::{Error, Rational};

fn jet(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d)), len)
}

proptest! {
    #[test]
    fn composition_rule(f in jet(8), g in jet(7), h in jet(8), n in 0usize..7, r in 0usize..4) {
        let spec = JetSpec::new(f, g, h);
        prop_assert_eq!(derivative_via_rbell(n, r, &spec).unwrap(), derivative_via_series(n, r, &spec).unwrap());
    }

    #[test]
    fn linear_in_outer(f1 in jet(6), f2 in jet(6), g in jet(5), h in jet(6), c in -4i64..4, n in 0usize..5, r in 0usize..3) {
        let sum: Vec<Rational> = f1.iter().zip(&f2).map(|(x, y)| x + rat(c) * y).collect();
        let lhs = derivative_via_rbell(n, r, &JetSpec::new(sum, g.clone(), h.clone())).unwrap();
        let rhs = derivative_via_rbell(n, r, &JetSpec::new(f1, g.clone(), h.clone())).unwrap()
            + rat(c) * derivative_via_rbell(n, r, &JetSpec::new(f2, g, h)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn exp_of_identity() {
    // F = exp, G = H = t: the n-th derivative of e^t is 1
    for n in 0..=6 {
        for r in 0..=3 {
            let f = vec![rat(1); n + 1];
            let mut g = vec![rat(0); n];
            let mut h = vec![rat(0); n + 1];
            if n > 0 {
                g[0] = rat(1);
            }
            h[0] = rat(1);
            assert_eq!(derivative_via_rbell(n, r, &JetSpec::new(f, g, h)).unwrap(), rat(1));
        }
    }
}

#[test]
fn jet_preconditions() {
    let short = JetSpec::new(vec![rat(1); 3], vec![rat(1); 2], vec![rat(1); 2]);
    assert!(matches!(derivative_via_rbell(2, 1, &short), Err(Error::OrderTooLow { needed: 2, available: 1 })));
    assert!(matches!(
        JetSpec::with_g0(vec![rat(1)], vec![rat(1), rat(2)], vec![rat(1)]),
        Err(Error::NonzeroConstantTerm)
    ));
    let ok = JetSpec::with_g0(vec![rat(1), rat(1)], vec![rat(0), rat(2)], vec![rat(1), rat(0)]).unwrap();
    assert_eq!(ok.g, vec![rat(2)]);
}

#[test]
fn whitney_exponential_routes() {
    for m in 1..=3 {
        for r in 0..=3 {
            for n in 0..=6 {
                let rep = whitney_exp_identity(m, r, n, ratio(1, 2)).unwrap();
                assert!(rep.holds(), "m={m} r={r} n={n}");
                assert!(rep.value_f64().is_finite());
            }
        }
    }
}
