//! Higher derivatives of `(H')^r (F o G)` from Taylor data, via partial
//! r-Bell polynomials and via direct series arithmetic.

use num_traits::Zero;

use crate::bell::VarSeq;
use crate::error::{Error, Result};
use crate::families::{table_via_egf, Family, SeqSpec};
use crate::polyring::rational::{factorial_q, from_big, pow, rat, to_f64, Rational};
use crate::polyring::{egf_coefficient, Poly, Series, VarId};
use crate::rbell::{rbell_egf, RBellQuery};

/// Derivatives at the expansion point: `f[k] = F^{(k)}(G(a))` from `k = 0`,
/// `g[j-1] = G^{(j)}(a)` and `h[j-1] = H^{(j)}(a)` from `j = 1`. `G(a)` is
/// taken as the expansion point of `F`, so `G` carries no constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetSpec {
    pub f: Vec<Rational>,
    pub g: Vec<Rational>,
    pub h: Vec<Rational>,
}

impl JetSpec {
    pub fn new(f: Vec<Rational>, g: Vec<Rational>, h: Vec<Rational>) -> Self {
        JetSpec { f, g, h }
    }

    /// Same, with `g` listed from `g_0`, which must vanish.
    pub fn with_g0(f: Vec<Rational>, g: Vec<Rational>, h: Vec<Rational>) -> Result<Self> {
        match g.split_first() {
            Some((g0, rest)) if g0.is_zero() => Ok(JetSpec::new(f, rest.to_vec(), h)),
            Some(_) => Err(Error::NonzeroConstantTerm),
            None => Ok(JetSpec::new(f, Vec::new(), h)),
        }
    }

    /// `n` needs `f_0..f_n`, `g_1..g_n` and `h_1..h_{n+1}`.
    fn check(&self, n: usize) -> Result<()> {
        let available = (self.f.len().saturating_sub(1))
            .min(self.g.len())
            .min(self.h.len().saturating_sub(1));
        if available < n {
            return Err(Error::OrderTooLow { needed: n, available });
        }
        Ok(())
    }
}

fn jet_seq(values: &[Rational]) -> VarSeq {
    VarSeq::from_values(values.to_vec())
}

/// `sum_{k=0}^{n} f_k B^{(r)}_{n+r,k+r}(g; h)`.
pub fn derivative_via_rbell(n: usize, r: usize, jet: &JetSpec) -> Result<Rational> {
    jet.check(n)?;
    let (g, h) = (jet_seq(&jet.g), jet_seq(&jet.h));
    let mut sum = Rational::zero();
    for k in 0..=n {
        if jet.f[k].is_zero() {
            continue;
        }
        let b = rbell_egf(&RBellQuery::new(n, k, r, g.clone(), h.clone()));
        sum += &jet.f[k] * b.as_constant().expect("numeric jet");
    }
    Ok(sum)
}

/// `n! [t^n] (H'(a+t))^r F(G(a+t))` from truncated Taylor series.
pub fn derivative_via_series(n: usize, r: usize, jet: &JetSpec) -> Result<Rational> {
    jet.check(n)?;
    let taylor = |c: &[Rational], j: usize| c.get(j.wrapping_sub(1)).cloned().unwrap_or_else(Rational::zero);
    let h = Series::from_rationals(n + 1, |j| if j == 0 { rat(0) } else { taylor(&jet.h, j) / factorial_q(j) });
    let hp = h.derivative().pow(r);
    let g = Series::from_rationals(n, |j| if j == 0 { rat(0) } else { taylor(&jet.g, j) / factorial_q(j) });
    let outer: Vec<Poly> = (0..=n).map(|k| Poly::constant(&jet.f[k] / factorial_q(k))).collect();
    let fg = g.compose_into(&outer)?;
    Ok(egf_coefficient(&(&hp * &fg), n).as_constant().expect("numeric series"))
}

/// The three polynomials in the formal units `E = e^{m a0}` (written `a_1`)
/// and `D = e^{a0}` (written `b_1`) describing
/// `d^n/da^n exp(e^{ma}/m + ra)` divided by `exp(e^{ma}/m)` at `a = a0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhitneyExpReport {
    pub m: usize,
    pub r: usize,
    pub n: usize,
    pub a0: Rational,
    /// `sum_k B^{(r)}_{n+r,k+r}(m^{j-1} E; D)`
    pub via_rbell: Poly,
    /// `D^r sum_k W_{m,r}(n,k) E^k`
    pub via_table: Poly,
    /// `D^r P_n(E)` with `P_0 = 1`, `P_{n+1} = m E P_n' + (E + r) P_n`
    pub via_differentiation: Poly,
}

impl WhitneyExpReport {
    pub fn holds(&self) -> bool {
        self.via_rbell == self.via_table && self.via_table == self.via_differentiation
    }

    /// The derivative itself at `a0`, in floating point.
    pub fn value_f64(&self) -> f64 {
        let a0 = to_f64(&self.a0);
        let m = self.m as f64;
        let e = (m * a0).exp();
        let d = a0.exp();
        let poly = self.via_rbell.terms().fold(0.0, |acc, (mono, c)| {
            let ee = mono.exponent(VarId::a(1)) as i32;
            let dd = mono.exponent(VarId::b(1)) as i32;
            acc + to_f64(c) * e.powi(ee) * d.powi(dd)
        });
        (e / m).exp() * poly
    }
}

pub fn whitney_exp_identity(m: usize, r: usize, n: usize, a0: Rational) -> Result<WhitneyExpReport> {
    if m == 0 {
        return Err(Error::Precondition("need m >= 1".into()));
    }
    let unit_e = Poly::a(1);
    let unit_d = Poly::b(1);
    let mq = rat(m as i64);

    let e = unit_e.clone();
    let g = VarSeq::from_fn(move |j| e.scale(&pow(&mq, j - 1)));
    let d = unit_d.clone();
    let h = VarSeq::from_fn(move |_| d.clone());
    let mut via_rbell = Poly::zero();
    for k in 0..=n {
        via_rbell += rbell_egf(&RBellQuery::new(n, k, r, g.clone(), h.clone()));
    }

    let table = table_via_egf(&SeqSpec::whitney(Family::RWhitney2, m, r), n)?;
    let mut sum = Poly::zero();
    for k in 0..=n {
        sum += unit_e.pow(k).scale(&from_big(table.get(n, k)));
    }
    let via_table = &unit_d.pow(r) * &sum;

    let mut p = Poly::one();
    let shift = &unit_e + &Poly::constant(rat(r as i64));
    for _ in 0..n {
        let de = p.partial_derivative(VarId::a(1));
        p = (&unit_e * &de).scale(&rat(m as i64)) + &shift * &p;
    }
    let via_differentiation = &unit_d.pow(r) * &p;

    Ok(WhitneyExpReport {
        m,
        r,
        n,
        a0,
        via_rbell,
        via_table,
        via_differentiation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::ratio;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn order_zero() {
        let jet = JetSpec::new(v(&[3]), vec![], v(&[2]));
        assert_eq!(derivative_via_rbell(0, 3, &jet).unwrap(), rat(24));
        assert_eq!(derivative_via_series(0, 3, &jet).unwrap(), rat(24));
    }

    #[test]
    fn bell_number_three() {
        let jet = JetSpec::new(v(&[1; 4]), v(&[1; 3]), v(&[1; 4]));
        assert_eq!(derivative_via_rbell(3, 0, &jet).unwrap(), rat(5));
        assert_eq!(derivative_via_series(3, 0, &jet).unwrap(), rat(5));
    }

    #[test]
    fn first_order_product_rule() {
        let jet = JetSpec::new(v(&[2, 3]), v(&[5]), v(&[7, 11]));
        // f_0 h_2 + f_1 g_1 h_1
        let expected = rat(2 * 11 + 3 * 5 * 7);
        assert_eq!(derivative_via_rbell(1, 1, &jet).unwrap(), expected);
        assert_eq!(derivative_via_series(1, 1, &jet).unwrap(), expected);
    }

    #[test]
    fn identity_outer() {
        let g = vec![ratio(1, 2), rat(3), ratio(-2, 7), rat(5)];
        let jet = JetSpec::new(v(&[0, 1, 0, 0, 0]), g.clone(), v(&[1; 5]));
        for n in 1..=4 {
            assert_eq!(derivative_via_series(n, 0, &jet).unwrap(), g[n - 1]);
            assert_eq!(derivative_via_rbell(n, 0, &jet).unwrap(), g[n - 1]);
        }
    }

    #[test]
    fn order_is_checked() {
        let jet = JetSpec::new(v(&[1, 1, 1]), v(&[1, 1]), v(&[1, 1]));
        assert_eq!(
            derivative_via_rbell(2, 1, &jet),
            Err(Error::OrderTooLow { needed: 2, available: 1 })
        );
        assert!(JetSpec::with_g0(v(&[1]), v(&[1, 2]), v(&[1])).is_err());
    }

    #[test]
    fn whitney_examples() {
        let rep = whitney_exp_identity(1, 0, 3, rat(0)).unwrap();
        assert!(rep.holds());
        // all units equal 1 at a0 = 0
        let at_zero: Rational = rep.via_rbell.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(at_zero, rat(5));
        assert!(whitney_exp_identity(1, 1, 2, rat(0)).unwrap().holds());
    }
}
