use std::ops::{Add, Mul};

use super::poly::Poly;
use super::rational::{rat, Rational};
use crate::error::{Error, Result};

/// Truncated power series `c_0 + c_1 t + ... + c_N t^N` with polynomial
/// coefficients. Coefficients are plain (not divided by `n!`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Poly>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = Poly::one();
        s
    }

    /// The series `t` truncated at `order`.
    pub fn t(order: usize) -> Self {
        Series::from_fn(order, |n| if n == 1 { Poly::one() } else { Poly::zero() })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Poly) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn from_rationals(order: usize, mut f: impl FnMut(usize) -> Rational) -> Self {
        Series::from_fn(order, |n| Poly::constant(f(n)))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Poly) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// `f^k` truncated at `f.order()`; `k = 0` gives the unit series.
    pub fn pow(&self, k: usize) -> Series {
        let mut acc = Series::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Termwise derivative `d/dt`; the order drops by one (not below zero).
    pub fn derivative(&self) -> Series {
        let order = self.order().saturating_sub(1);
        Series::from_fn(order, |j| {
            self.coeffs
                .get(j + 1)
                .map(|c| c.scale(&rat(j as i64 + 1)))
                .unwrap_or_else(Poly::zero)
        })
    }

    /// `exp(g)` via `n e_n = sum_{j=1..n} j g_j e_{n-j}`; requires `g(0) = 0`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut e = vec![Poly::one()];
        for n in 1..=order {
            let mut acc = Poly::zero();
            for j in 1..=n {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc += (&self.coeffs[j] * &e[n - j]).scale(&rat(j as i64));
            }
            e.push(acc.scale(&Rational::new(1.into(), (n as i64).into())));
        }
        Ok(Series { coeffs: e })
    }

    /// `sum_k outer[k] * self^k`; requires `self(0) = 0` so the sum is finite
    /// at every truncation order.
    pub fn compose_into(&self, outer: &[Poly]) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut acc = Series::zero(order);
        for c in outer.iter().take(order + 1).rev() {
            acc = &(&acc * self) + &Series::one(order).scale_poly(c);
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Lowest `n` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl Add<&Series> for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_fn(order, |n| &self.coeffs[n] + &rhs.coeffs[n])
    }
}

impl Mul<&Series> for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let lo_f = self.valuation().unwrap_or(order + 1);
        let lo_g = rhs.valuation().unwrap_or(order + 1);
        Series::from_fn(order, |n| {
            let mut acc = Poly::zero();
            if n < lo_f + lo_g {
                return acc;
            }
            for i in lo_f..=n - lo_g {
                let (f, g) = (&self.coeffs[i], &rhs.coeffs[n - i]);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                acc += f * g;
            }
            acc
        })
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        &self * &rhs
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        &self + &rhs
    }
}

/// Coefficient `n! [t^n] f`.
pub fn egf_coefficient(f: &Series, n: usize) -> Poly {
    if n > f.order() {
        return Poly::zero();
    }
    f.coeff(n).scale(&super::rational::factorial_q(n))
}

/// Checks that `f` has only constant coefficients and returns them.
pub fn rational_coeffs(f: &Series) -> Option<Vec<Rational>> {
    f.coeffs().iter().map(Poly::as_constant).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::{factorial_q, ratio};

    fn is_unit(f: &Series) -> bool {
        f.coeffs()
            .iter()
            .enumerate()
            .all(|(n, c)| if n == 0 { c == &Poly::one() } else { c.is_zero() })
    }

    fn consts(s: &Series) -> Vec<Rational> {
        rational_coeffs(s).unwrap()
    }

    #[test]
    fn power_of_t() {
        let t3 = Series::t(4).pow(3);
        assert_eq!(consts(&t3), vec![rat(0), rat(0), rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn zeroth_power_is_unit() {
        let f = Series::from_rationals(4, |n| rat(n as i64 + 1));
        assert!(is_unit(&f.pow(0)));
    }

    #[test]
    fn binomial_square() {
        let f = Series::from_rationals(4, |n| if n <= 1 { rat(1) } else { rat(0) });
        assert_eq!(consts(&f.pow(2)), vec![rat(1), rat(2), rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn exp_of_zero_is_unit() {
        assert!(is_unit(&Series::zero(5).exp().unwrap()));
    }

    #[test]
    fn exp_of_t() {
        let e = Series::t(3).exp().unwrap();
        assert_eq!(consts(&e), vec![rat(1), rat(1), ratio(1, 2), ratio(1, 6)]);
    }

    #[test]
    fn exp_group_law() {
        for order in 0..7 {
            let e = Series::t(order).exp().unwrap();
            let f = Series::t(order).scale(&rat(-1)).exp().unwrap();
            assert!(is_unit(&(&e * &f)), "order {order}");
        }
    }

    #[test]
    fn exp_rejects_constant_term() {
        let g = Series::one(3);
        assert_eq!(g.exp().unwrap_err(), Error::NonzeroConstantTerm);
    }

    #[test]
    fn product_order_is_min() {
        let f = Series::one(5);
        let g = Series::one(3);
        assert_eq!((&f * &g).order(), 3);
    }

    #[test]
    fn derivative_and_egf_coefficient() {
        let e = Series::t(5).exp().unwrap();
        let d = e.derivative();
        assert_eq!(d.order(), 4);
        assert_eq!(consts(&d), consts(&e.truncate(4)));
        assert_eq!(egf_coefficient(&e, 4), Poly::one());
        assert_eq!(factorial_q(4), rat(24));
    }

    #[test]
    fn composition_matches_exp() {
        let g = Series::from_rationals(5, |n| match n {
            0 => rat(0),
            1 => rat(2),
            2 => ratio(1, 3),
            _ => rat(0),
        });
        let outer: Vec<Poly> = (0..=5).map(|k| Poly::constant(rat(1) / factorial_q(k))).collect();
        assert_eq!(g.compose_into(&outer).unwrap(), g.exp().unwrap());
    }
}
