//! Named number families as integer tables.
//!
//! The r-Stirling numbers of both kinds and the r-Lah numbers (with their
//! restricted variants) are tabulated by ground-set size: `rows[N][K]` with
//! `N = n + r`, `K = k + r`. The r-Whitney families are tabulated by the
//! reduced `(n, k)` of their generating functions. Each family can be built
//! three ways: from its closed-form generating function, from the r-Bell
//! specialization, and (at small sizes) by enumeration.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::bell::VarSeq;
use crate::error::{Error, Result};
use crate::oracle::{oracle_count_table, StructureKind};
use crate::polyring::rational::{binomial_general, expect_integer, factorial_q, pow, rat, ratio, Rational};
use crate::polyring::{egf_coefficient, Series};
use crate::rbell::{rbell_egf, RBellQuery};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    RStirling2,
    RStirling1,
    RLah,
    RWhitney2,
    RWhitney1,
    RWhitneyLah,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::RStirling2,
        Family::RStirling1,
        Family::RLah,
        Family::RWhitney2,
        Family::RWhitney1,
        Family::RWhitneyLah,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RStirling2 => "r-stirling2",
            Family::RStirling1 => "r-stirling1",
            Family::RLah => "r-lah",
            Family::RWhitney2 => "r-whitney2",
            Family::RWhitney1 => "r-whitney1",
            Family::RWhitneyLah => "r-whitney-lah",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }

    pub fn is_whitney(self) -> bool {
        matches!(self, Family::RWhitney2 | Family::RWhitney1 | Family::RWhitneyLah)
    }

    pub fn is_first_kind(self) -> bool {
        matches!(self, Family::RStirling1 | Family::RWhitney1)
    }

    /// Combinatorial structure realizing the family (non-Whitney only).
    pub fn structure(self) -> Option<StructureKind> {
        match self {
            Family::RStirling2 => Some(StructureKind::Blocks),
            Family::RStirling1 => Some(StructureKind::Cycles),
            Family::RLah => Some(StructureKind::OrderedBlocks),
            _ => None,
        }
    }

    pub fn index_convention(self) -> IndexConvention {
        if self.is_whitney() {
            IndexConvention::Reduced
        } else {
            IndexConvention::Totals
        }
    }
}

/// Restriction on block (or cycle) sizes, applied to every block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Plain,
    /// sizes `>= m`
    Associated(usize),
    /// sizes `<= m`
    Truncated(usize),
    Even,
    Odd,
}

impl Mode {
    pub fn allows(self, size: usize) -> bool {
        match self {
            Mode::Plain => true,
            Mode::Associated(m) => size >= m,
            Mode::Truncated(m) => size <= m,
            Mode::Even => size % 2 == 0,
            Mode::Odd => size % 2 == 1,
        }
    }

    fn indicator(self, size: usize) -> Rational {
        rat(i64::from(self.allows(size)))
    }

    pub fn name(self) -> String {
        match self {
            Mode::Plain => "plain".into(),
            Mode::Associated(m) => format!("associated:{m}"),
            Mode::Truncated(m) => format!("truncated:{m}"),
            Mode::Even => "even".into(),
            Mode::Odd => "odd".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Mode> {
        let bad = || Error::Parse(format!("unknown mode `{s}`"));
        let threshold = |t: &str| t.parse::<usize>().map_err(|_| bad());
        match s.split_once(':') {
            Some(("associated", t)) => Ok(Mode::Associated(threshold(t)?)),
            Some(("truncated", t)) => Ok(Mode::Truncated(threshold(t)?)),
            Some(_) => Err(bad()),
            None => match s {
                "plain" => Ok(Mode::Plain),
                "even" => Ok(Mode::Even),
                "odd" => Ok(Mode::Odd),
                _ => Err(bad()),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeqSpec {
    pub family: Family,
    pub r: usize,
    /// Whitney parameter; ignored by the other families.
    pub m: usize,
    pub mode: Mode,
}

impl SeqSpec {
    pub fn new(family: Family, r: usize, m: usize, mode: Mode) -> Self {
        SeqSpec { family, r, m, mode }
    }

    pub fn plain(family: Family, r: usize) -> Self {
        SeqSpec::new(family, r, 1, Mode::Plain)
    }

    pub fn whitney(family: Family, m: usize, r: usize) -> Self {
        SeqSpec::new(family, r, m, Mode::Plain)
    }

    pub fn validate(&self) -> Result<()> {
        if self.family.is_whitney() && self.mode != Mode::Plain {
            return Err(Error::InvalidMode {
                family: self.family.name().into(),
                mode: self.mode.name(),
            });
        }
        if self.family.is_whitney() && self.m == 0 {
            return Err(Error::Precondition("Whitney families need m >= 1".into()));
        }
        Ok(())
    }
}

fn whitney_a(m: usize, factor: fn(usize) -> Rational) -> VarSeq {
    VarSeq::from_rational_fn(move |l| factor(l) * pow(&rat(m as i64), l - 1))
}

// prod_{i=lo}^{l-2+lo} (i m + c), i.e. l-1 factors
fn rising_product(m: usize, c: i64, lo: usize) -> VarSeq {
    VarSeq::from_rational_fn(move |l| {
        (lo..lo + l - 1).fold(rat(1), |acc, i| acc * rat(i as i64 * m as i64 + c))
    })
}

/// Concrete weights `(a, b)` for the family. For the r-Whitney numbers of
/// the first kind these are the weights of the published specialization
/// `a_l = (l-1)! m^{l-1}`, `b_l = (m+1)(2m+1)...((l-1)m+1)`; see
/// [`whitney1_corrected_weights`] for the pair that reproduces the
/// generating function.
pub fn weights_of(spec: &SeqSpec) -> Result<(VarSeq, VarSeq)> {
    spec.validate()?;
    let mode = spec.mode;
    let m = spec.m;
    let restricted = |base: fn(usize) -> Rational| {
        let w = VarSeq::from_rational_fn(move |l| mode.indicator(l) * base(l));
        (w.clone(), w)
    };
    Ok(match spec.family {
        Family::RStirling2 => restricted(|_| rat(1)),
        Family::RStirling1 => restricted(|l| factorial_q(l - 1)),
        Family::RLah => restricted(factorial_q),
        Family::RWhitney2 => (whitney_a(m, |_| rat(1)), VarSeq::constant(rat(1))),
        Family::RWhitneyLah => (whitney_a(m, factorial_q), rising_product(m, 2, 0)),
        Family::RWhitney1 => (whitney_a(m, |l| factorial_q(l - 1)), rising_product(m, 1, 1)),
    })
}

/// `a_l = (l-1)! m^l`, `b_l = 1 (1+m)(1+2m)...(1+(l-2)m)`: with these,
/// `|w_{m,r}(n,k)| = B^{(r)}_{n+r,k+r}(a; b)`.
pub fn whitney1_corrected_weights(m: usize) -> (VarSeq, VarSeq) {
    let a = VarSeq::from_rational_fn(move |l| factorial_q(l - 1) * pow(&rat(m as i64), l));
    (a, rising_product(m, 1, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexConvention {
    /// `rows[N][K]` counts structures on `N = n + r` elements with `K = k + r`
    Totals,
    /// `rows[n][k]` with `r` implicit
    Reduced,
}

impl IndexConvention {
    pub fn name(self) -> &'static str {
        match self {
            IndexConvention::Totals => "totals",
            IndexConvention::Reduced => "reduced",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConvention {
    /// `(-1)^{n-k}`, as the generating function gives
    Derived,
    /// `(-1)^{n-k+r}`, as published
    Printed,
}

/// Lower-triangular integer table; first-kind families hold absolute values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberTable {
    pub spec: SeqSpec,
    pub index: IndexConvention,
    pub rows: Vec<Vec<BigInt>>,
}

impl NumberTable {
    pub fn n_max(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Entry with the first-kind sign applied; other families are unsigned.
    pub fn signed(&self, n: usize, k: usize, sign: SignConvention) -> BigInt {
        let v = self.get(n, k);
        if !self.spec.family.is_first_kind() || k > n {
            return v;
        }
        let mut e = n - k;
        if sign == SignConvention::Printed {
            e += self.spec.r;
        }
        if e % 2 == 1 {
            -v
        } else {
            v
        }
    }

    fn m_field(&self) -> String {
        if self.spec.family.is_whitney() {
            self.spec.m.to_string()
        } else {
            String::new()
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,m,r,mode,n,k,value\n");
        let m = self.m_field();
        for (n, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    self.spec.family.name(),
                    m,
                    self.spec.r,
                    self.spec.mode.name(),
                    n,
                    k,
                    v
                ));
            }
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        let m = if self.spec.family.is_whitney() {
            json!(self.spec.m)
        } else {
            Value::Null
        };
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(BigInt::to_string).collect())
            .collect();
        json!({
            "metadata": {
                "family": self.spec.family.name(),
                "m": m,
                "r": self.spec.r,
                "mode": self.spec.mode.name(),
                "index": self.index.name(),
                "absolute_values": self.spec.family.is_first_kind(),
                "n_max": self.n_max(),
            },
            "rows": rows,
        })
    }
}

/// Builds a table from a function of reduced `(n, k)`.
fn tabulate(spec: &SeqSpec, n_max: usize, mut cell: impl FnMut(usize, usize) -> Result<BigInt>) -> Result<NumberTable> {
    spec.validate()?;
    let index = spec.family.index_convention();
    let r = spec.r;
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let v = match index {
                IndexConvention::Reduced => cell(n, k)?,
                IndexConvention::Totals if n >= r && k >= r => cell(n - r, k - r)?,
                IndexConvention::Totals => BigInt::zero(),
            };
            row.push(v);
        }
        rows.push(row);
    }
    Ok(NumberTable { spec: *spec, index, rows })
}

fn integer_entry(value: Rational, spec: &SeqSpec, n: usize, k: usize) -> Result<BigInt> {
    expect_integer(&value, &format!("{} entry ({n},{k})", spec.family.name()))
}

/// Table from the r-Bell specialization with [`weights_of`].
pub fn table_via_rbell(spec: &SeqSpec, n_max: usize) -> Result<NumberTable> {
    let (a, b) = weights_of(spec)?;
    table_from_weights(spec, n_max, &a, &b)
}

fn table_from_weights(spec: &SeqSpec, n_max: usize, a: &VarSeq, b: &VarSeq) -> Result<NumberTable> {
    tabulate(spec, n_max, |n, k| {
        let q = RBellQuery::new(n, k, spec.r, a.clone(), b.clone());
        let value = rbell_egf(&q).as_constant().expect("numeric weights");
        integer_entry(value.abs(), spec, n, k)
    })
}

/// The pair of series `(A, Bs)` such that the entry at reduced `(n, k)` is
/// `n! [t^n] A^k Bs^r / k!`.
fn family_series(spec: &SeqSpec, order: usize) -> Result<(Series, Series)> {
    let m = rat(spec.m as i64);
    let mode = spec.mode;
    let geometric = |c: Rational| Series::from_rationals(order, |j| pow(&c, j));
    // (1 + c t)^e via the binomial series
    let binomial_power = |c: Rational, e: Rational| {
        Series::from_rationals(order, |j| binomial_general(&e, j) * pow(&c, j))
    };
    let t = Series::t(order);
    let one = Series::one(order);
    let neg = |s: Series| s.scale(&rat(-1));
    Ok(match (spec.family, mode) {
        (Family::RStirling2, Mode::Plain) => {
            let et = t.exp()?;
            (&et + &neg(one), et)
        }
        (Family::RStirling1, Mode::Plain) => {
            // -ln(1-t) and (1-t)^{-1}
            let log = Series::from_rationals(order, |j| if j == 0 { rat(0) } else { ratio(1, j as i64) });
            (log, geometric(rat(1)))
        }
        (Family::RLah, Mode::Plain) => (&t * &geometric(rat(1)), binomial_power(rat(-1), rat(-2))),
        (Family::RStirling2, _) => (
            Series::from_rationals(order, |j| if j == 0 { rat(0) } else { mode.indicator(j) / factorial_q(j) }),
            Series::from_rationals(order, |j| mode.indicator(j + 1) / factorial_q(j)),
        ),
        (Family::RStirling1, _) => (
            Series::from_rationals(order, |j| if j == 0 { rat(0) } else { mode.indicator(j) * ratio(1, j as i64) }),
            Series::from_rationals(order, |j| mode.indicator(j + 1)),
        ),
        (Family::RLah, _) => (
            Series::from_rationals(order, |j| if j == 0 { rat(0) } else { mode.indicator(j) }),
            Series::from_rationals(order, |j| mode.indicator(j + 1) * rat(j as i64 + 1)),
        ),
        (Family::RWhitney2, _) => {
            // (e^{mt} - 1)/m and e^{t}
            let emt = t.scale(&m).exp()?;
            ((&emt + &neg(one)).scale(&(rat(1) / &m)), t.exp()?)
        }
        (Family::RWhitneyLah, _) => {
            // t/(1-mt) and (1-mt)^{-2/m}
            (&t * &geometric(m.clone()), binomial_power(-m.clone(), rat(-2) / &m))
        }
        (Family::RWhitney1, _) => {
            // ln(1+mt) and (1+mt)^{-1/m}
            let log = Series::from_rationals(order, |j| {
                if j == 0 {
                    rat(0)
                } else {
                    pow(&rat(-1), j - 1) * pow(&m, j) / rat(j as i64)
                }
            });
            (log, binomial_power(m.clone(), rat(-1) / &m))
        }
    })
}

/// Table read off the family's generating function.
pub fn table_via_egf(spec: &SeqSpec, n_max: usize) -> Result<NumberTable> {
    spec.validate()?;
    let order = n_max;
    let (a, bs) = family_series(spec, order)?;
    let tail = bs.pow(spec.r);
    let mut power = Series::one(order);
    let mut by_k = Vec::new();
    for _ in 0..=order {
        by_k.push(&power * &tail);
        power = &power * &a;
    }
    tabulate(spec, n_max, |n, k| {
        let value = egf_coefficient(&by_k[k], n).as_constant().expect("numeric series") / factorial_q(k);
        integer_entry(value.abs(), spec, n, k)
    })
}

/// Enumeration table. The r-Stirling/r-Lah families use their own
/// structures with mode-restricted weights; the Whitney families enumerate
/// partitions with their (corrected, for the first kind) block weights.
pub fn oracle_table(spec: &SeqSpec, n_max: usize) -> Result<NumberTable> {
    spec.validate()?;
    let r = spec.r;
    let (kind, a, b) = match spec.family.structure() {
        Some(kind) => {
            let mode = spec.mode;
            let w = VarSeq::from_rational_fn(move |l| mode.indicator(l));
            (kind, w.clone(), w)
        }
        None if spec.family == Family::RWhitney1 => {
            let (a, b) = whitney1_corrected_weights(spec.m);
            (StructureKind::Blocks, a, b)
        }
        None => {
            let (a, b) = weights_of(spec)?;
            (StructureKind::Blocks, a, b)
        }
    };
    let reduced_max = match spec.family.index_convention() {
        IndexConvention::Reduced => n_max,
        IndexConvention::Totals => n_max.saturating_sub(r),
    };
    let counts = if n_max < r && spec.family.index_convention() == IndexConvention::Totals {
        Vec::new()
    } else {
        oracle_count_table(kind, r, &a, &b, reduced_max)?
    };
    tabulate(spec, n_max, |n, k| Ok(counts[n][k].abs()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub k: usize,
    pub left: BigInt,
    pub right: BigInt,
    /// which comparison, e.g. `egf/rbell`
    pub between: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioEntry {
    pub n: usize,
    pub k: usize,
    /// signed value from the generating function
    pub egf: BigInt,
    /// signed value of the published specialization
    pub claimed: BigInt,
    /// `egf / claimed`, absent when the claimed value is zero
    pub ratio: Option<Rational>,
}

/// Deviation of the published first-kind Whitney specialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownDiscrepancy {
    pub description: String,
    pub entries: Vec<RatioEntry>,
    /// entries where the claim differs from the generating function
    pub differing: usize,
    /// whether `(-1)^{n-k} B^{(r)}((l-1)! m^l; prod (1+im))` reproduces
    /// every entry
    pub corrected_holds: bool,
}

#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub spec: SeqSpec,
    pub n_max: usize,
    pub egf: NumberTable,
    pub rbell: NumberTable,
    pub oracle: Option<NumberTable>,
    pub mismatches: Vec<Mismatch>,
    pub known_discrepancy: Option<KnownDiscrepancy>,
}

impl CrosscheckReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.known_discrepancy.as_ref().is_none_or(|d| d.corrected_holds)
    }
}

fn compare(left: &NumberTable, right: &NumberTable, between: &str, out: &mut Vec<Mismatch>) {
    for n in 0..=left.n_max() {
        for k in 0..=n {
            let (l, r) = (left.get(n, k), right.get(n, k));
            if l != r {
                out.push(Mismatch {
                    n,
                    k,
                    left: l,
                    right: r,
                    between: between.into(),
                });
            }
        }
    }
}

/// Compares the generating-function, specialization and enumeration tables.
/// The oracle is included when the ground set stays within its guard.
pub fn crosscheck_family(spec: &SeqSpec, n_max: usize) -> Result<CrosscheckReport> {
    let egf = table_via_egf(spec, n_max)?;
    let rbell = table_via_rbell(spec, n_max)?;
    let oracle_size = match spec.family.index_convention() {
        IndexConvention::Reduced => n_max + spec.r,
        IndexConvention::Totals => n_max.max(spec.r),
    };
    let oracle = if oracle_size <= crate::oracle::guard() {
        Some(oracle_table(spec, n_max)?)
    } else {
        None
    };
    let mut mismatches = Vec::new();
    let mut known_discrepancy = None;
    if spec.family == Family::RWhitney1 {
        known_discrepancy = Some(whitney1_discrepancy(spec, n_max, &egf, &rbell)?);
    } else {
        compare(&egf, &rbell, "egf/rbell", &mut mismatches);
    }
    if let Some(o) = &oracle {
        compare(&egf, o, "egf/oracle", &mut mismatches);
    }
    Ok(CrosscheckReport {
        spec: *spec,
        n_max,
        egf,
        rbell,
        oracle,
        mismatches,
        known_discrepancy,
    })
}

fn whitney1_discrepancy(
    spec: &SeqSpec,
    n_max: usize,
    egf: &NumberTable,
    claimed: &NumberTable,
) -> Result<KnownDiscrepancy> {
    let (a, b) = whitney1_corrected_weights(spec.m);
    let corrected = table_from_weights(spec, n_max, &a, &b)?;
    let mut entries = Vec::new();
    let mut differing = 0;
    for n in 0..=n_max {
        for k in 0..=n {
            let e = egf.signed(n, k, SignConvention::Derived);
            let c = claimed.signed(n, k, SignConvention::Printed);
            if e != c {
                differing += 1;
            }
            let ratio = (!c.is_zero()).then(|| Rational::new(e.clone(), c.clone()));
            entries.push(RatioEntry {
                n,
                k,
                egf: e,
                claimed: c,
                ratio,
            });
        }
    }
    Ok(KnownDiscrepancy {
        description: "published specialization (-1)^{n-k+r} B^{(r)}((l-1)! m^{l-1}; (m+1)...((l-1)m+1)) \
                      versus the generating function (1/k!) ln(1+mt)^k (1+mt)^{-r/m}"
            .into(),
        entries,
        differing,
        corrected_holds: corrected == *egf,
    })
}
