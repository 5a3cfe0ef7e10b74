//! Classical partial Bell polynomials `B_{n,k}`.

use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

use crate::enumerate::iter_pi;
use crate::error::Result;
use crate::polyring::rational::{expect_integer, factorial, factorial_q, Rational};
use crate::polyring::{egf_coefficient, Poly, Series};

/// A weight sequence `l -> x_l` for `l >= 1`, either symbolic or concrete.
#[derive(Clone)]
pub struct VarSeq {
    rule: Arc<dyn Fn(usize) -> Poly + Send + Sync>,
}

impl VarSeq {
    pub fn from_fn(f: impl Fn(usize) -> Poly + Send + Sync + 'static) -> Self {
        VarSeq { rule: Arc::new(f) }
    }

    pub fn from_rational_fn(f: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Self {
        VarSeq::from_fn(move |l| Poly::constant(f(l)))
    }

    /// The indeterminates `a_1, a_2, ...`.
    pub fn symbolic_a() -> Self {
        VarSeq::from_fn(|l| Poly::a(l as u32))
    }

    /// The indeterminates `b_1, b_2, ...`.
    pub fn symbolic_b() -> Self {
        VarSeq::from_fn(|l| Poly::b(l as u32))
    }

    pub fn constant(c: Rational) -> Self {
        let p = Poly::constant(c);
        VarSeq::from_fn(move |_| p.clone())
    }

    /// `values[l-1]` for `l <= values.len()`, zero past the end.
    pub fn from_values(values: Vec<Rational>) -> Self {
        VarSeq::from_fn(move |l| {
            values
                .get(l - 1)
                .cloned()
                .map(Poly::constant)
                .unwrap_or_else(Poly::zero)
        })
    }

    pub fn get(&self, l: usize) -> Poly {
        assert!(l >= 1, "weight sequences are indexed from 1");
        (self.rule)(l)
    }

    /// `l -> c(l) * x_l`.
    pub fn scaled(&self, c: impl Fn(usize) -> Rational + Send + Sync + 'static) -> VarSeq {
        let inner = self.clone();
        VarSeq::from_fn(move |l| inner.get(l).scale(&c(l)))
    }

    /// `l -> p(l) * x_l`.
    pub fn times(&self, p: impl Fn(usize) -> Poly + Send + Sync + 'static) -> VarSeq {
        let inner = self.clone();
        VarSeq::from_fn(move |l| &inner.get(l) * &p(l))
    }

    /// `(0, x_2, x_3, ...)`.
    pub fn without_first(&self) -> VarSeq {
        let inner = self.clone();
        VarSeq::from_fn(move |l| if l == 1 { Poly::zero() } else { inner.get(l) })
    }
}

impl fmt::Debug for VarSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = (1..=4).map(|l| self.get(l).to_string()).collect();
        write!(f, "VarSeq({}, ...)", head.join(", "))
    }
}

/// `sum_{m>=1} x_m t^m / m!` truncated at `order`.
pub fn egf_series(x: &VarSeq, order: usize) -> Series {
    Series::from_fn(order, |m| {
        if m == 0 {
            Poly::zero()
        } else {
            x.get(m).scale(&(Rational::from_integer(1.into()) / factorial_q(m)))
        }
    })
}

/// Explicit sum over `pi(n,k)`. Zero when `k > n`; `B_{0,0} = 1`.
pub fn bell_explicit(n: usize, k: usize, x: &VarSeq) -> Poly {
    let weights: Vec<Poly> = (1..=n)
        .map(|i| x.get(i).scale(&(Rational::from_integer(1.into()) / factorial_q(i))))
        .collect();
    let mut total = Poly::zero();
    for idx in iter_pi(n, k) {
        let mut denom = BigInt::from(1);
        let mut term = Poly::one();
        for (i, &ki) in idx.counts.iter().enumerate() {
            if ki == 0 {
                continue;
            }
            denom *= factorial(ki);
            term = &term * &weights[i].pow(ki);
        }
        total += term.scale(&Rational::new(factorial(n), denom));
    }
    total
}

/// `n! [t^n] (1/k!) (sum x_m t^m/m!)^k`.
pub fn bell_egf(n: usize, k: usize, x: &VarSeq) -> Poly {
    if k > n {
        return Poly::zero();
    }
    let power = egf_series(x, n).pow(k);
    egf_coefficient(&power, n).scale(&(Rational::from_integer(1.into()) / factorial_q(k)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicFamily {
    /// unsigned Stirling numbers of the first kind, `x_l = (l-1)!`
    Stirling1Unsigned,
    /// Stirling numbers of the second kind, `x_l = 1`
    Stirling2,
    /// Lah numbers, `x_l = l!`
    Lah,
    /// idempotent numbers `C(n,k) k^{n-k}`, `x_l = l`
    Idempotent,
}

impl ClassicFamily {
    pub fn weights(self) -> VarSeq {
        match self {
            ClassicFamily::Stirling1Unsigned => VarSeq::from_rational_fn(|l| factorial_q(l - 1)),
            ClassicFamily::Stirling2 => VarSeq::constant(Rational::from_integer(1.into())),
            ClassicFamily::Lah => VarSeq::from_rational_fn(factorial_q),
            ClassicFamily::Idempotent => VarSeq::from_rational_fn(|l| Rational::from_integer(l.into())),
        }
    }
}

pub fn classic_numbers(family: ClassicFamily, n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Ok(BigInt::zero());
    }
    let value = bell_egf(n, k, &family.weights())
        .as_constant()
        .expect("concrete weights give a constant");
    expect_integer(&value, &format!("{family:?}({n},{k})"))
}
