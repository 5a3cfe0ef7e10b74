//! Partial r-Bell polynomials.
//!
//! Every function here takes reduced indices `(n, k, r)` and returns
//! `B^{(r)}_{n+r,k+r}(a; b)`: partitions of an `(n+r)`-set into `k+r` blocks
//! with the first `r` elements in distinct blocks, where a block of size `i`
//! holding a distinguished element weighs `b_i` and any other block of size
//! `i` weighs `a_i`. The value is zero whenever `k > n`, and `(0, 0, r)`
//! gives `b_1^r`.
//!
//! Five independent routes compute the same polynomial: the generating
//! function, a sum over weak compositions, a sum over `Lambda(n,k,r)`, a
//! convolution of two classical Bell polynomials, and a recurrence in `k`.

use num_bigint::BigInt;
use num_traits::One;

use crate::bell::{bell_egf, egf_series, VarSeq};
use crate::enumerate::{iter_compositions, iter_lambda};
use crate::error::{Error, Result};
use crate::polyring::rational::{binomial_q, factorial, factorial_q, rat, Rational};
use crate::polyring::{egf_coefficient, Poly, Series, VarId};

#[derive(Debug, Clone)]
pub struct RBellQuery {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub a: VarSeq,
    pub b: VarSeq,
}

impl RBellQuery {
    pub fn new(n: usize, k: usize, r: usize, a: VarSeq, b: VarSeq) -> Self {
        RBellQuery { n, k, r, a, b }
    }

    /// Fully generic weights `a_l`, `b_l`.
    pub fn symbolic(n: usize, k: usize, r: usize) -> Self {
        RBellQuery::new(n, k, r, VarSeq::symbolic_a(), VarSeq::symbolic_b())
    }

    fn with(&self, n: usize, k: usize, r: usize) -> Self {
        RBellQuery::new(n, k, r, self.a.clone(), self.b.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Egf,
    Composition,
    Lambda,
    Convolution,
    Recurrence,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Egf,
        Method::Composition,
        Method::Lambda,
        Method::Convolution,
        Method::Recurrence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Egf => "egf",
            Method::Composition => "composition",
            Method::Lambda => "lambda",
            Method::Convolution => "convolution",
            Method::Recurrence => "recurrence",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == s)
    }
}

pub fn rbell(q: &RBellQuery, method: Method) -> Poly {
    match method {
        Method::Egf => rbell_egf(q),
        Method::Composition => rbell_composition(q),
        Method::Lambda => rbell_lambda(q),
        Method::Convolution => rbell_convolution(q),
        Method::Recurrence => rbell_recurrence(q),
    }
}

fn inv(x: Rational) -> Rational {
    Rational::one() / x
}

/// `sum_{j>=0} b_{j+1} t^j / j!` truncated at `order`.
pub fn shifted_egf_series(b: &VarSeq, order: usize) -> Series {
    Series::from_fn(order, |j| b.get(j + 1).scale(&inv(factorial_q(j))))
}

/// `n! [t^n] (1/k!) A(t)^k Bs(t)^r`.
pub fn rbell_egf(q: &RBellQuery) -> Poly {
    let RBellQuery { n, k, r, .. } = *q;
    if k > n {
        return Poly::zero();
    }
    let a = egf_series(&q.a, n).pow(k);
    let b = shifted_egf_series(&q.b, n).pow(r);
    egf_coefficient(&(&a * &b), n).scale(&inv(factorial_q(k)))
}

/// Sum over ordered weak compositions of `n - k` into `r + k` slots: the
/// first `r` slots feed `b_{m+1}/m!`, the other `k` feed `a_{m+1}/(m+1)!`,
/// and the whole sum carries `n!/k!`.
pub fn rbell_composition(q: &RBellQuery) -> Poly {
    let RBellQuery { n, k, r, .. } = *q;
    if k > n {
        return Poly::zero();
    }
    let total = n - k;
    let b_terms: Vec<Poly> = (0..=total)
        .map(|m| q.b.get(m + 1).scale(&inv(factorial_q(m))))
        .collect();
    let a_terms: Vec<Poly> = (0..=total)
        .map(|m| q.a.get(m + 1).scale(&inv(factorial_q(m + 1))))
        .collect();
    let mut sum = Poly::zero();
    for comp in iter_compositions(total, r + k) {
        let mut term = Poly::one();
        for (slot, &m) in comp.parts.iter().enumerate() {
            let factor = if slot < r { &b_terms[m] } else { &a_terms[m] };
            term = &term * factor;
            if term.is_zero() {
                break;
            }
        }
        sum += term;
    }
    sum.scale(&Rational::new(factorial(n), factorial(k)))
}

/// Sum over `Lambda(n, k, r)` of
/// `[n!/prod k_i! prod (a_i/i!)^{k_i}] [r!/prod r_i! prod (b_{i+1}/i!)^{r_i}]`.
pub fn rbell_lambda(q: &RBellQuery) -> Poly {
    let RBellQuery { n, k, r, .. } = *q;
    let a_terms: Vec<Poly> = (1..=n).map(|i| q.a.get(i).scale(&inv(factorial_q(i)))).collect();
    let b_terms: Vec<Poly> = (0..=n).map(|i| q.b.get(i + 1).scale(&inv(factorial_q(i)))).collect();
    let mut sum = Poly::zero();
    for idx in iter_lambda(n, k, r) {
        let mut denom = BigInt::one();
        let mut term = Poly::one();
        for (i, &ki) in idx.ks.iter().enumerate().filter(|(_, &x)| x > 0) {
            denom *= factorial(ki);
            term = &term * &a_terms[i].pow(ki);
        }
        for (i, &ri) in idx.rs.iter().enumerate().filter(|(_, &x)| x > 0) {
            denom *= factorial(ri);
            term = &term * &b_terms[i].pow(ri);
        }
        sum += term.scale(&Rational::new(factorial(n) * factorial(r), denom));
    }
    sum
}

/// `C(n+r, r)^{-1} sum_{j=k}^{n} C(n+r, j) B_{j,k}(a_l) B_{n+r-j,r}(l b_l)`.
pub fn rbell_convolution(q: &RBellQuery) -> Poly {
    let RBellQuery { n, k, r, .. } = *q;
    if k > n {
        return Poly::zero();
    }
    let lb = q.b.scaled(|l| rat(l as i64));
    let mut sum = Poly::zero();
    for j in k..=n {
        let left = bell_egf(j, k, &q.a);
        let right = bell_egf(n + r - j, r, &lb);
        sum += (&left * &right).scale(&binomial_q(n + r, j));
    }
    sum.scale(&inv(binomial_q(n + r, r)))
}

/// `k B(n,k,r) = sum_{j=1}^{n} C(n,j) a_j B(n-j,k-1,r)`, bottom-up in `k`,
/// starting from the generating-function value at `k = 0`.
pub fn rbell_recurrence(q: &RBellQuery) -> Poly {
    let RBellQuery { n, k, r, .. } = *q;
    if k > n {
        return Poly::zero();
    }
    // table[m] holds B(m, level, r) for m = 0..=n
    let mut table: Vec<Poly> = (0..=n).map(|m| rbell_egf(&q.with(m, 0, r))).collect();
    let a: Vec<Poly> = (0..=n).map(|j| if j == 0 { Poly::zero() } else { q.a.get(j) }).collect();
    for level in 1..=k {
        let next: Vec<Poly> = (0..=n)
            .map(|m| {
                if level > m {
                    return Poly::zero();
                }
                let mut acc = Poly::zero();
                for j in 1..=m {
                    if table[m - j].is_zero() {
                        continue;
                    }
                    acc += (&a[j] * &table[m - j]).scale(&binomial_q(m, j));
                }
                acc.scale(&inv(rat(level as i64)))
            })
            .collect();
        table = next;
    }
    table.swap_remove(n)
}

/// Value at signed reduced indices; anything out of range is zero.
fn rb(q: &RBellQuery, n: i64, k: i64, r: i64) -> Poly {
    if n < 0 || k < 0 || r < 0 {
        return Poly::zero();
    }
    rbell_egf(&q.with(n as usize, k as usize, r as usize))
}

/// Outcome of checking one polynomial identity `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>, lhs: Poly, rhs: Poly) -> Self {
        IdentityReport {
            identity: identity.into(),
            lhs,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// `lhs - rhs`; zero exactly when the identity holds.
    pub fn difference(&self) -> Poly {
        &self.lhs - &self.rhs
    }
}

/// Splitting off the singleton blocks:
/// `B(n,k,r) = sum_{i,j} C(r,i) C(n,j) b_1^i a_1^j B^{(r-i)}(n-j, k-j; a', b')`
/// where `a'`, `b'` have their first entry zeroed.
pub fn check_singleton_decomposition(n: usize, k: usize, r: usize) -> IdentityReport {
    let q = RBellQuery::symbolic(n, k, r);
    let reduced = RBellQuery::new(0, 0, 0, q.a.without_first(), q.b.without_first());
    let mut rhs = Poly::zero();
    for i in 0..=r {
        for j in 0..=k.min(n) {
            let inner = rbell_egf(&reduced.with(n - j, k - j, r - i));
            if inner.is_zero() {
                continue;
            }
            let c = binomial_q(r, i) * binomial_q(n, j);
            rhs += (&(&Poly::b(1).pow(i) * &Poly::a(1).pow(j)) * &inner).scale(&c);
        }
    }
    IdentityReport::new(format!("singleton decomposition ({n},{k},{r})"), rbell_egf(&q), rhs)
}

// Fresh indeterminates used as scaling parameters; no weight sequence at
// desk scale reaches these indices.
const FRESH: u32 = 1_000_000;

/// The three scaling laws: `(x a_l; y b_l) -> x^k y^r`,
/// `(x^l a_l; x^l b_l) -> x^{n+r}`, `(x^{l-1} a_l; x^{l-1} b_l) -> x^{n-k}`.
pub fn check_homogeneity(n: usize, k: usize, r: usize) -> Vec<IdentityReport> {
    let base = rbell_egf(&RBellQuery::symbolic(n, k, r));
    let x = Poly::a(FRESH);
    let y = Poly::b(FRESH);
    let a = VarSeq::symbolic_a();
    let b = VarSeq::symbolic_b();

    let (xc, yc) = (x.clone(), y.clone());
    let first = rbell_egf(&RBellQuery::new(
        n,
        k,
        r,
        a.times(move |_| xc.clone()),
        b.times(move |_| yc.clone()),
    ));
    let (x1, x2) = (x.clone(), x.clone());
    let second = rbell_egf(&RBellQuery::new(
        n,
        k,
        r,
        a.times(move |l| x1.pow(l)),
        b.times(move |l| x2.pow(l)),
    ));
    let (x1, x2) = (x.clone(), x.clone());
    let third = rbell_egf(&RBellQuery::new(
        n,
        k,
        r,
        a.times(move |l| x1.pow(l - 1)),
        b.times(move |l| x2.pow(l - 1)),
    ));
    vec![
        IdentityReport::new(
            format!("scaling by x, y ({n},{k},{r})"),
            first,
            &(&x.pow(k) * &y.pow(r)) * &base,
        ),
        IdentityReport::new(format!("scaling by x^l ({n},{k},{r})"), second, &x.pow(n + r) * &base),
        IdentityReport::new(
            format!("scaling by x^(l-1) ({n},{k},{r})"),
            third,
            &x.pow(n - k.min(n)) * &base,
        ),
    ]
}

/// Partial derivatives with respect to every `a_j` (`1 <= j <= n`) and every
/// `b_j` (`1 <= j <= n+1`):
/// `dB(n,k,r)/da_j = C(n,j) B(n-j,k-1,r)` and
/// `dB(n,k,r)/db_j = r C(n,j-1) B(n-j+1,k,r-1)`.
pub fn check_derivative_relations(n: usize, k: usize, r: usize) -> Vec<IdentityReport> {
    let q = RBellQuery::symbolic(n, k, r);
    let base = rbell_egf(&q);
    let (ni, ki, ri) = (n as i64, k as i64, r as i64);
    let mut out = Vec::new();
    for j in 1..=n {
        out.push(IdentityReport::new(
            format!("d/da_{j} ({n},{k},{r})"),
            base.partial_derivative(VarId::a(j as u32)),
            rb(&q, ni - j as i64, ki - 1, ri).scale(&binomial_q(n, j)),
        ));
    }
    for j in 1..=n + 1 {
        out.push(IdentityReport::new(
            format!("d/db_{j} ({n},{k},{r})"),
            base.partial_derivative(VarId::b(j as u32)),
            rb(&q, ni - j as i64 + 1, ki, ri - 1).scale(&(rat(r as i64) * binomial_q(n, j - 1))),
        ));
    }
    out
}

/// The `b`-derivative exactly as printed in the source:
/// `dB(n,k,r)/db_j = C(n,j-1) B^{(r-1)}_{n-j+r-1,k+r-1}`, i.e. reduced
/// indices `(n-j, k, r-1)` and no factor `r`.
pub fn printed_b_derivative(n: usize, k: usize, r: usize) -> Vec<IdentityReport> {
    let q = RBellQuery::symbolic(n, k, r);
    let base = rbell_egf(&q);
    (1..=n)
        .map(|j| {
            IdentityReport::new(
                format!("printed d/db_{j} ({n},{k},{r})"),
                base.partial_derivative(VarId::b(j as u32)),
                rb(&q, n as i64 - j as i64, k as i64, r as i64 - 1).scale(&binomial_q(n, j - 1)),
            )
        })
        .collect()
}

/// The three recurrences obtained from the derivative relations and the
/// scaling laws, in the form that follows from the generating function.
#[derive(Debug, Clone)]
pub struct P0Report {
    pub derived: Vec<IdentityReport>,
    /// The relations exactly as printed, evaluated for the record.
    pub printed: Vec<IdentityReport>,
}

impl P0Report {
    pub fn holds(&self) -> bool {
        self.derived.iter().all(IdentityReport::holds)
    }
}

pub fn check_p0_relations(n: usize, k: usize, r: usize) -> Result<P0Report> {
    if n == 0 {
        return Err(Error::Precondition("recurrence relations need n >= 1".into()));
    }
    let q = RBellQuery::symbolic(n, k, r);
    let base = rbell_egf(&q);
    let (ni, ki, ri) = (n as i64, k as i64, r as i64);

    // sum_{j=1}^{n} C(n,j) w_j a_j B(n-j, k-1, r)
    let a_sum = |weight: &dyn Fn(usize) -> i64| {
        let mut acc = Poly::zero();
        for j in 1..=n {
            let t = &Poly::a(j as u32) * &rb(&q, ni - j as i64, ki - 1, ri);
            acc += t.scale(&(binomial_q(n, j) * rat(weight(j))));
        }
        acc
    };
    // sum_{j=1}^{upper} C(n,j-1) w_j b_j B(n - j + shift, k, r-1)
    let b_sum = |weight: &dyn Fn(usize) -> i64, upper: usize, shift: i64| {
        let mut acc = Poly::zero();
        for j in 1..=upper {
            let t = &Poly::b(j as u32) * &rb(&q, ni - j as i64 + shift, ki, ri - 1);
            acc += t.scale(&(binomial_q(n, j - 1) * rat(weight(j))));
        }
        acc
    };
    let one = |_: usize| 1i64;
    let id = |j: usize| j as i64;

    let derived = vec![
        IdentityReport::new(
            format!("sum C(n,j) a_j B(n-j,k-1,r) = k B ({n},{k},{r})"),
            a_sum(&one),
            base.scale(&rat(ki)),
        ),
        IdentityReport::new(
            format!("r sum C(n,j-1) b_j B(n-j+1,k,r-1) = r B ({n},{k},{r})"),
            b_sum(&one, n + 1, 1).scale(&rat(ri)),
            base.scale(&rat(ri)),
        ),
        IdentityReport::new(
            format!("weighted sum = (n+r) B ({n},{k},{r})"),
            a_sum(&id) + b_sum(&id, n + 1, 1).scale(&rat(ri)),
            base.scale(&rat(ni + ri)),
        ),
    ];
    let printed = vec![
        IdentityReport::new(
            format!("printed: sum C(n,j) a_j B(n-j,k-1,r) = k B ({n},{k},{r})"),
            a_sum(&one),
            base.scale(&rat(ki)),
        ),
        IdentityReport::new(
            format!("printed: sum C(n,j-1) b_j B(n-j,k,r-1) = r B ({n},{k},{r})"),
            b_sum(&one, n, 0),
            base.scale(&rat(ri)),
        ),
        IdentityReport::new(
            format!("printed: weighted sum = (n+r) B ({n},{k},{r})"),
            a_sum(&id) + b_sum(&id, n, 0).scale(&rat(ri)),
            base.scale(&rat(ni + ri)),
        ),
    ];
    Ok(P0Report { derived, printed })
}

#[derive(Debug, Clone)]
pub struct SymmetryReport {
    /// `C(N,r) B^{(r)}_{N,k+r}(l a_l; b_l) = C(N,k) B^{(k)}_{N,k+r}(l b_l; a_l)`
    pub derived: IdentityReport,
    /// the printed variant with first indices `N+k-r` and `N-k+r`
    pub printed: IdentityReport,
}

/// Exchange symmetry between `(k, a)` and `(r, b)`. Here `total` is the
/// ground-set size `N` (not a reduced index); requires `N >= 2 max(k, r)`.
pub fn check_symmetry(total: usize, k: usize, r: usize) -> Result<SymmetryReport> {
    if total < 2 * k.max(r) {
        return Err(Error::Precondition(format!(
            "symmetry needs N >= 2 max(k, r), got N={total}, k={k}, r={r}"
        )));
    }
    let la = VarSeq::symbolic_a().scaled(|l| rat(l as i64));
    let lb = VarSeq::symbolic_b().scaled(|l| rat(l as i64));
    // B^{(r)}_{N, k+r}(l a_l; b_l) and B^{(k)}_{N, k+r}(l b_l; a_l) with
    // unreduced first index
    let left = |first: usize| {
        rbell_egf(&RBellQuery::new(first - r, k, r, la.clone(), VarSeq::symbolic_b()))
            .scale(&binomial_q(total, r))
    };
    let right = |first: usize| {
        rbell_egf(&RBellQuery::new(first - k, r, k, lb.clone(), VarSeq::symbolic_a()))
            .scale(&binomial_q(total, k))
    };
    Ok(SymmetryReport {
        derived: IdentityReport::new(format!("symmetry N={total} k={k} r={r}"), left(total), right(total)),
        printed: IdentityReport::new(
            format!("printed symmetry n={total} k={k} r={r}"),
            left(total + k - r),
            right(total + r - k),
        ),
    })
}
