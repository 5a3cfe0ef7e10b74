//! Moments and probability mass functions of
//! `S = X_1 + ... + X_p + Y_1 + ... + Y_q` for independent `X_i ~ X`,
//! `Y_j ~ Y`, through partial r-Bell polynomials.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::VarSeq;
use crate::enumerate::iter_compositions;
use crate::error::{Error, Result};
use crate::polyring::rational::{binomial_q, factorial_q, pow, rat, ratio, to_f64, Rational};
use crate::rbell::{rbell_egf, RBellQuery};

/// Raw moments `mu_j = E(X^j)` and `nu_j = E(Y^j)`, listed from `j = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSpec {
    pub mu: Vec<Rational>,
    pub nu: Vec<Rational>,
}

impl MomentSpec {
    pub fn new(mu: Vec<Rational>, nu: Vec<Rational>) -> Result<Self> {
        for (name, seq) in [("mu", &mu), ("nu", &nu)] {
            if seq.first() != Some(&Rational::one()) {
                return Err(Error::Precondition(format!("{name}_0 must be 1")));
            }
        }
        Ok(MomentSpec { mu, nu })
    }

    /// Moments `0..=order` from two rules.
    pub fn from_fn(order: usize, mu: impl Fn(usize) -> Rational, nu: impl Fn(usize) -> Rational) -> Result<Self> {
        MomentSpec::new((0..=order).map(mu).collect(), (0..=order).map(nu).collect())
    }

    fn check_order(&self, n: usize, q: usize) -> Result<()> {
        let available = if q == 0 {
            self.mu.len()
        } else {
            self.mu.len().min(self.nu.len())
        };
        if available <= n {
            return Err(Error::OrderTooLow {
                needed: n,
                available: available.saturating_sub(1),
            });
        }
        Ok(())
    }
}

/// `P(X = j)` and `P(Y = j)` for `j = 0..len`; zero beyond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmfSpec {
    pub p: Vec<Rational>,
    pub q: Vec<Rational>,
}

impl PmfSpec {
    pub fn new(p: Vec<Rational>, q: Vec<Rational>) -> Result<Self> {
        for (name, seq) in [("p", &p), ("q", &q)] {
            if seq.iter().any(|x| *x < Rational::zero()) {
                return Err(Error::Precondition(format!("{name} has a negative mass")));
            }
            if seq.iter().sum::<Rational>() != Rational::one() {
                return Err(Error::Precondition(format!("{name} does not sum to 1")));
            }
        }
        Ok(PmfSpec { p, q })
    }
}

fn at(seq: &[Rational], j: usize) -> Rational {
    seq.get(j).cloned().unwrap_or_else(Rational::zero)
}

fn need_summand(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::Precondition("need p >= 1".into()));
    }
    Ok(())
}

fn constant(q: &RBellQuery) -> Rational {
    rbell_egf(q).as_constant().expect("numeric weights")
}

/// `E(S^n) = C(n+p,p)^{-1} B^{(q)}_{n+p+q,p+q}(l mu_{l-1}; nu_{l-1})`.
pub fn moment_of_sum(p: usize, q: usize, n: usize, spec: &MomentSpec) -> Result<Rational> {
    need_summand(p)?;
    spec.check_order(n, q)?;
    let mu = spec.mu.clone();
    let nu = spec.nu.clone();
    let a = VarSeq::from_rational_fn(move |l| rat(l as i64) * at(&mu, l - 1));
    let b = VarSeq::from_rational_fn(move |l| at(&nu, l - 1));
    let value = constant(&RBellQuery::new(n + p, p, q, a, b));
    Ok(value / binomial_q(n + p, p))
}

/// `P(S = n) = p!/(n+p)! B^{(q)}_{n+p+q,p+q}(l! p_{l-1}; (l-1)! q_{l-1})`.
pub fn pmf_of_sum(p: usize, q: usize, n: usize, spec: &PmfSpec) -> Result<Rational> {
    need_summand(p)?;
    let pp = spec.p.clone();
    let qq = spec.q.clone();
    let a = VarSeq::from_rational_fn(move |l| factorial_q(l) * at(&pp, l - 1));
    let b = VarSeq::from_rational_fn(move |l| factorial_q(l - 1) * at(&qq, l - 1));
    let value = constant(&RBellQuery::new(n + p, p, q, a, b));
    Ok(value * factorial_q(p) / factorial_q(n + p))
}

/// `E(S^n)` by multinomial expansion:
/// `sum n!/prod e_i! prod E(Z_i^{e_i})` over weak compositions `e` of `n`.
pub fn moment_oracle(p: usize, q: usize, n: usize, spec: &MomentSpec) -> Result<Rational> {
    spec.check_order(n, q)?;
    let mut sum = Rational::zero();
    for comp in iter_compositions(n, p + q) {
        let mut term = factorial_q(n);
        for (i, &e) in comp.parts.iter().enumerate() {
            let moment = if i < p { &spec.mu[e] } else { &spec.nu[e] };
            term = term * moment / factorial_q(e);
        }
        sum += term;
    }
    Ok(sum)
}

fn convolve(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); x.len() + y.len() - 1];
    for (i, u) in x.iter().enumerate() {
        for (j, v) in y.iter().enumerate() {
            out[i + j] += u * v;
        }
    }
    out
}

/// `P(S = n)` by repeated direct convolution.
pub fn pmf_oracle(p: usize, q: usize, n: usize, spec: &PmfSpec) -> Rational {
    let mut dist = vec![Rational::one()];
    for _ in 0..p {
        dist = convolve(&dist, &spec.p);
    }
    for _ in 0..q {
        dist = convolve(&dist, &spec.q);
    }
    at(&dist, n)
}

/// `P(X_1 + ... + X_p + q = n)`: the pmf theorem with `Y` fixed at 1.
pub fn pmf_with_shift(p: usize, q: usize, n: usize, px: &[Rational]) -> Result<Rational> {
    let spec = PmfSpec::new(px.to_vec(), vec![rat(0), rat(1)])?;
    pmf_of_sum(p, q, n, &spec)
}

/// The shifted pmf as published: `p!/(n+p)! B^{(q)}_{n+p+q,p+q}` with
/// `l! p_{l-1}` in both weight slots.
pub fn printed_shift_corollary(p: usize, q: usize, n: usize, px: &[Rational]) -> Result<Rational> {
    need_summand(p)?;
    let pp = px.to_vec();
    let w = VarSeq::from_rational_fn(move |l| factorial_q(l) * at(&pp, l - 1));
    let value = constant(&RBellQuery::new(n + p, p, q, w.clone(), w));
    Ok(value * factorial_q(p) / factorial_q(n + p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactReport {
    pub label: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ExactReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `{n+p+r, p+r}_r = C(n+p,p) E((U_1 + ... + U_p + r)^n)` for uniform
/// `U_i` on `[0,1]`. The left side is the r-Stirling number; the right side
/// is the multinomial expectation with the constant `r` as one more
/// summand.
pub fn rstirling_uniform_identity(p: usize, r: usize, n: usize) -> Result<ExactReport> {
    need_summand(p)?;
    let ones = VarSeq::constant(rat(1));
    let lhs = constant(&RBellQuery::new(n + p, p, r, ones.clone(), ones));
    let spec = MomentSpec::from_fn(n, |j| ratio(1, j as i64 + 1), |j| pow(&rat(r as i64), j))?;
    let rhs = binomial_q(n + p, p) * moment_oracle(p, 1, n, &spec)?;
    Ok(ExactReport {
        label: format!("uniform r-Stirling identity p={p} r={r} n={n}"),
        lhs,
        rhs,
    })
}

/// Distributions available to the Monte Carlo harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sampler {
    Constant(Rational),
    Uniform01,
    Bernoulli(Rational),
    /// uniform on `{0, ..., max}`
    DiscreteUniform(u32),
}

impl Sampler {
    pub fn moment(&self, j: usize) -> Rational {
        match self {
            Sampler::Constant(c) => pow(c, j),
            Sampler::Uniform01 => ratio(1, j as i64 + 1),
            Sampler::Bernoulli(prob) => {
                if j == 0 {
                    Rational::one()
                } else {
                    prob.clone()
                }
            }
            Sampler::DiscreteUniform(max) => {
                let total: Rational = (0..=*max).map(|x| pow(&rat(i64::from(x)), j)).sum();
                total / rat(i64::from(*max) + 1)
            }
        }
    }

    pub fn moments(&self, order: usize) -> Vec<Rational> {
        (0..=order).map(|j| self.moment(j)).collect()
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Sampler::Constant(c) => to_f64(c),
            Sampler::Uniform01 => rng.gen::<f64>(),
            Sampler::Bernoulli(prob) => f64::from(u8::from(rng.gen::<f64>() < to_f64(prob))),
            Sampler::DiscreteUniform(max) => f64::from(rng.gen_range(0..=*max)),
        }
    }

    pub fn parse(s: &str) -> Result<Sampler> {
        let bad = || Error::Parse(format!("unknown sampler `{s}`"));
        match s.split_once(':') {
            None if s == "uniform" => Ok(Sampler::Uniform01),
            Some(("constant", c)) => Ok(Sampler::Constant(crate::polyring::rational::parse_rational(c)?)),
            Some(("bernoulli", c)) => {
                let prob = crate::polyring::rational::parse_rational(c)?;
                if prob < Rational::zero() || prob > Rational::one() {
                    return Err(bad());
                }
                Ok(Sampler::Bernoulli(prob))
            }
            Some(("discrete", m)) => m.parse().map(Sampler::DiscreteUniform).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

/// Monte Carlo threshold in standard errors.
pub const MC_SIGMAS: f64 = 4.0;
/// Absolute slack used when the sample variance vanishes.
pub const MC_ZERO_VARIANCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloReport {
    pub exact: Rational,
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
    pub seed: u64,
}

impl MonteCarloReport {
    /// Deviation in standard errors; zero when the error is zero and the
    /// mean is exact up to the absolute slack.
    pub fn deviation(&self) -> f64 {
        let diff = (self.mean - to_f64(&self.exact)).abs();
        if self.std_error == 0.0 {
            if diff <= MC_ZERO_VARIANCE_TOL * to_f64(&self.exact).abs().max(1.0) {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / self.std_error
        }
    }

    pub fn holds(&self) -> bool {
        self.deviation() <= MC_SIGMAS
    }
}

/// Sample mean of `S^n` against [`moment_of_sum`].
pub fn monte_carlo_check(
    p: usize,
    q: usize,
    n: usize,
    x: &Sampler,
    y: &Sampler,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    if trials < 10_000 {
        return Err(Error::Precondition("need at least 10^4 trials".into()));
    }
    let spec = MomentSpec::new(x.moments(n), y.moments(n))?;
    let exact = moment_of_sum(p, q, n, &spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let s: f64 = (0..p).map(|_| x.draw(&mut rng)).sum::<f64>() + (0..q).map(|_| y.draw(&mut rng)).sum::<f64>();
        let v = s.powi(n as i32);
        sum += v;
        sum_sq += v * v;
    }
    let t = trials as f64;
    let mean = sum / t;
    let var = ((sum_sq - t * mean * mean) / (t - 1.0)).max(0.0);
    Ok(MonteCarloReport {
        exact,
        mean,
        std_error: (var / t).sqrt(),
        trials,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_summand_moment() {
        let mu = vec![rat(1), ratio(1, 2), ratio(1, 3), rat(2), ratio(7, 5), rat(11)];
        let spec = MomentSpec::new(mu, vec![rat(1)]).unwrap();
        for n in 0..=5 {
            assert_eq!(moment_of_sum(1, 0, n, &spec).unwrap(), spec.mu[n]);
        }
    }

    #[test]
    fn uniform_pair_plus_one() {
        let spec = MomentSpec::from_fn(2, |j| ratio(1, j as i64 + 1), |_| rat(1)).unwrap();
        // E((U1+U2+1)^2) = 2/3 + 1 + 1/2 + 2 + ... expanded exactly
        let expected = ratio(1, 3) * rat(2) + ratio(1, 4) * rat(2) + rat(2) * rat(2) * ratio(1, 2) + rat(1);
        assert_eq!(moment_of_sum(2, 1, 2, &spec).unwrap(), expected);
        assert_eq!(moment_oracle(2, 1, 2, &spec).unwrap(), expected);
    }

    #[test]
    fn degenerate_first_moment() {
        let spec = MomentSpec::from_fn(1, |j| pow(&rat(3), j), |j| pow(&ratio(1, 2), j)).unwrap();
        assert_eq!(moment_of_sum(2, 3, 1, &spec).unwrap(), rat(6) + ratio(3, 2));
    }

    #[test]
    fn pmf_examples() {
        let coin = PmfSpec::new(vec![ratio(1, 2), ratio(1, 2)], vec![rat(1)]).unwrap();
        assert_eq!(pmf_of_sum(2, 0, 1, &coin).unwrap(), ratio(1, 2));
        let mixed = PmfSpec::new(vec![ratio(1, 2), ratio(1, 2)], vec![ratio(1, 3); 3]).unwrap();
        assert_eq!(pmf_of_sum(1, 1, 2, &mixed).unwrap(), ratio(1, 3));
        assert_eq!(pmf_oracle(1, 1, 2, &mixed), ratio(1, 3));
        for n in 0..3 {
            assert_eq!(pmf_of_sum(1, 0, n, &mixed).unwrap(), at(&mixed.p, n));
        }
    }

    #[test]
    fn shifted_pmf() {
        let coin = vec![ratio(1, 2), ratio(1, 2)];
        assert_eq!(pmf_with_shift(1, 1, 1, &coin).unwrap(), ratio(1, 2));
        assert_eq!(pmf_with_shift(2, 3, 4, &coin).unwrap(), ratio(1, 2));
        assert_eq!(printed_shift_corollary(1, 1, 1, &coin).unwrap(), ratio(3, 4));
    }

    #[test]
    fn uniform_identity_examples() {
        let rep = rstirling_uniform_identity(1, 0, 2).unwrap();
        assert_eq!(rep.lhs, rat(1));
        assert!(rep.holds());
        assert!(rstirling_uniform_identity(2, 1, 2).unwrap().holds());
    }

    #[test]
    fn bernoulli_cube() {
        let coin = Sampler::Bernoulli(ratio(1, 2));
        let rep = monte_carlo_check(2, 0, 3, &coin, &Sampler::Constant(rat(1)), 10_000, 1).unwrap();
        assert_eq!(rep.exact, ratio(5, 2));
        assert!(rep.holds());
    }

    #[test]
    fn constant_has_zero_variance() {
        let one = Sampler::Constant(rat(1));
        let rep = monte_carlo_check(3, 1, 4, &one, &one, 10_000, 9).unwrap();
        assert_eq!(rep.exact, rat(256));
        assert_eq!(rep.std_error, 0.0);
        assert!(rep.holds());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MomentSpec::new(vec![rat(2)], vec![rat(1)]).is_err());
        assert!(PmfSpec::new(vec![ratio(1, 2)], vec![rat(1)]).is_err());
        let spec = MomentSpec::from_fn(1, |_| rat(1), |_| rat(1)).unwrap();
        assert!(matches!(moment_of_sum(1, 0, 3, &spec), Err(Error::OrderTooLow { .. })));
        assert!(moment_of_sum(0, 1, 1, &spec).is_err());
    }

    #[test]
    fn sampler_parsing() {
        assert_eq!(Sampler::parse("uniform").unwrap(), Sampler::Uniform01);
        assert_eq!(Sampler::parse("bernoulli:1/3").unwrap(), Sampler::Bernoulli(ratio(1, 3)));
        assert_eq!(Sampler::parse("discrete:2").unwrap(), Sampler::DiscreteUniform(2));
        assert!(Sampler::parse("bernoulli:3/2").is_err());
        assert!(Sampler::parse("gauss").is_err());
    }
}
