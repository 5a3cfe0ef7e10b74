//! Verification suites behind `rbell verify`.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rbell::bell::VarSeq;
use rbell::calculus::{derivative_via_rbell, derivative_via_series, whitney_exp_identity, JetSpec};
use rbell::families::{crosscheck_family, Family, Mode, SeqSpec};
use rbell::oracle::{guard, oracle_sum, StructureKind};
use rbell::polyring::rational::{factorial_q, rat, ratio, render_rational};
use rbell::rbell::{
    check_derivative_relations, check_homogeneity, check_p0_relations, check_singleton_decomposition,
    check_symmetry, printed_b_derivative, rbell, rbell_egf, IdentityReport, Method, RBellQuery,
};
use rbell::stochastic::{
    moment_of_sum, moment_oracle, monte_carlo_check, pmf_of_sum, pmf_oracle, pmf_with_shift,
    printed_shift_corollary, rstirling_uniform_identity, MomentSpec, PmfSpec, Sampler,
};
use rbell::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paths,
    Oracle,
    Identities,
    Families,
    Stochastic,
    Calculus,
    All,
}

impl Suite {
    const EACH: [Suite; 6] = [
        Suite::Paths,
        Suite::Oracle,
        Suite::Identities,
        Suite::Families,
        Suite::Stochastic,
        Suite::Calculus,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Paths => "paths",
            Suite::Oracle => "oracle",
            Suite::Identities => "identities",
            Suite::Families => "families",
            Suite::Stochastic => "stochastic",
            Suite::Calculus => "calculus",
            Suite::All => "all",
        }
    }
}

pub struct Bounds {
    pub n_max: usize,
    pub r_max: usize,
    pub seed: u64,
}

#[derive(Default)]
struct SuiteResult {
    checks: usize,
    failures: Vec<String>,
}

impl SuiteResult {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn identity(&mut self, rep: &IdentityReport) {
        self.check(rep.holds(), || format!("{}: lhs - rhs = {}", rep.identity, rep.difference()));
    }
}

struct Known {
    suite: &'static str,
    name: String,
    summary: String,
    detail: Value,
}

pub struct Report {
    suites: Vec<(Suite, SuiteResult)>,
    known: Vec<Known>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|(_, s)| s.failures.is_empty())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (suite, res) in &self.suites {
            let status = if res.failures.is_empty() { "PASS" } else { "FAIL" };
            let passed = res.checks - res.failures.len();
            out.push_str(&format!("{:<12} {status}  {passed}/{}\n", suite.name(), res.checks));
            for f in &res.failures {
                out.push_str(&format!("  failed: {f}\n"));
            }
        }
        if !self.known.is_empty() {
            out.push_str("known-discrepancy:\n");
            for k in &self.known {
                out.push_str(&format!("  [{}] {}: {}\n", k.suite, k.name, k.summary));
            }
        }
        out.push_str(if self.passed() { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }

    pub fn to_json(&self, bounds: &Bounds) -> Value {
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|(suite, res)| {
                json!({
                    "suite": suite.name(),
                    "checks": res.checks,
                    "passed": res.checks - res.failures.len(),
                    "failures": res.failures,
                })
            })
            .collect();
        let known: Vec<Value> = self
            .known
            .iter()
            .map(|k| json!({"suite": k.suite, "name": k.name, "summary": k.summary, "detail": k.detail}))
            .collect();
        json!({
            "bounds": {"n_max": bounds.n_max, "r_max": bounds.r_max, "seed": bounds.seed},
            "suites": suites,
            "known-discrepancy": known,
            "passed": self.passed(),
        })
    }
}

pub fn run(suite: Suite, bounds: &Bounds) -> Report {
    let selected: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let mut report = Report {
        suites: Vec::new(),
        known: Vec::new(),
    };
    for s in selected {
        let mut res = SuiteResult::default();
        match s {
            Suite::Paths => paths(bounds, &mut res),
            Suite::Oracle => oracle(bounds, &mut res),
            Suite::Identities => identities(bounds, &mut res, &mut report.known),
            Suite::Families => families(bounds, &mut res, &mut report.known),
            Suite::Stochastic => stochastic(bounds, &mut res, &mut report.known),
            Suite::Calculus => calculus(bounds, &mut res),
            Suite::All => unreachable!(),
        }
        report.suites.push((s, res));
    }
    report
}

fn paths(b: &Bounds, res: &mut SuiteResult) {
    for r in 0..=b.r_max {
        for n in 0..=b.n_max {
            for k in 0..=n {
                let q = RBellQuery::symbolic(n, k, r);
                let reference = rbell(&q, Method::Egf);
                for m in &Method::ALL[1..] {
                    res.check(rbell(&q, *m) == reference, || {
                        format!("({n},{k},{r}): {} differs from egf", m.name())
                    });
                }
            }
        }
    }
}

fn oracle(b: &Bounds, res: &mut SuiteResult) {
    let kinds = [
        (StructureKind::Blocks, VarSeq::symbolic_a(), VarSeq::symbolic_b()),
        (
            StructureKind::Cycles,
            VarSeq::symbolic_a().scaled(|l| factorial_q(l - 1)),
            VarSeq::symbolic_b().scaled(|l| factorial_q(l - 1)),
        ),
        (
            StructureKind::OrderedBlocks,
            VarSeq::symbolic_a().scaled(factorial_q),
            VarSeq::symbolic_b().scaled(factorial_q),
        ),
    ];
    let limit = guard();
    for r in 0..=b.r_max {
        for n in 0..=b.n_max {
            if n + r > limit {
                continue;
            }
            for k in 0..=n {
                for (kind, a, bb) in &kinds {
                    let expected = rbell_egf(&RBellQuery::new(n, k, r, a.clone(), bb.clone()));
                    let got = oracle_sum(n, k, r, *kind, &VarSeq::symbolic_a(), &VarSeq::symbolic_b());
                    res.check(got.as_ref() == Ok(&expected), || {
                        format!("({n},{k},{r}) {kind:?}: enumeration differs from the generating function")
                    });
                }
            }
        }
    }
}

fn printed_status(suite: &'static str, name: &str, reports: &[IdentityReport]) -> Known {
    let failing: Vec<&IdentityReport> = reports.iter().filter(|r| !r.holds()).collect();
    let summary = match failing.first() {
        None => format!("holds in all {} instances", reports.len()),
        Some(first) => format!(
            "fails in {} of {} instances; first: {}",
            failing.len(),
            reports.len(),
            first.identity
        ),
    };
    let detail = json!({
        "instances": reports.len(),
        "failing": failing.iter().map(|r| json!({
            "identity": r.identity,
            "lhs": r.lhs.to_string(),
            "rhs": r.rhs.to_string(),
        })).take(5).collect::<Vec<_>>(),
        "failing_count": failing.len(),
    });
    Known {
        suite,
        name: name.into(),
        summary,
        detail,
    }
}

fn identities(b: &Bounds, res: &mut SuiteResult, known: &mut Vec<Known>) {
    let mut printed_db = Vec::new();
    let mut printed_rel2 = Vec::new();
    let mut printed_rel3 = Vec::new();
    let mut printed_sym = Vec::new();
    for r in 0..=b.r_max {
        for n in 0..=b.n_max {
            for k in 0..=n {
                res.identity(&check_singleton_decomposition(n, k, r));
                for rep in check_homogeneity(n, k, r) {
                    res.identity(&rep);
                }
                for rep in check_derivative_relations(n, k, r) {
                    res.identity(&rep);
                }
                printed_db.extend(printed_b_derivative(n, k, r));
                if n >= 1 {
                    let p0 = check_p0_relations(n, k, r).expect("n >= 1");
                    for rep in &p0.derived {
                        res.identity(rep);
                    }
                    res.check(p0.printed[0].holds(), || p0.printed[0].identity.clone());
                    printed_rel2.push(p0.printed[1].clone());
                    printed_rel3.push(p0.printed[2].clone());
                }
            }
        }
    }
    for total in 0..=b.n_max {
        for k in 0..=b.r_max {
            for r in 0..=b.r_max {
                if let Ok(sym) = check_symmetry(total, k, r) {
                    res.identity(&sym.derived);
                    printed_sym.push(sym.printed);
                }
            }
        }
    }
    known.push(printed_status("identities", "printed b-derivative", &printed_db));
    known.push(printed_status("identities", "printed second recurrence", &printed_rel2));
    known.push(printed_status("identities", "printed third recurrence", &printed_rel3));
    known.push(printed_status("identities", "printed symmetry", &printed_sym));
}

const MODES: [Mode; 5] = [Mode::Plain, Mode::Associated(2), Mode::Truncated(2), Mode::Even, Mode::Odd];

fn families(b: &Bounds, res: &mut SuiteResult, known: &mut Vec<Known>) {
    for family in [Family::RStirling2, Family::RStirling1, Family::RLah] {
        for mode in MODES {
            for r in 0..=b.r_max {
                let spec = SeqSpec::new(family, r, 1, mode);
                crosscheck_into(&spec, b.n_max + r, res);
            }
        }
    }
    for family in [Family::RWhitney2, Family::RWhitneyLah, Family::RWhitney1] {
        for m in 1..=3 {
            for r in 0..=b.r_max {
                let spec = SeqSpec::whitney(family, m, r);
                let Some(rep) = crosscheck_into(&spec, b.n_max, res) else { continue };
                if let Some(d) = rep.known_discrepancy {
                    let entries: Vec<Value> = d
                        .entries
                        .iter()
                        .map(|e| {
                            json!({
                                "n": e.n,
                                "k": e.k,
                                "egf": e.egf.to_string(),
                                "claimed": e.claimed.to_string(),
                                "ratio": e.ratio.as_ref().map(render_rational),
                            })
                        })
                        .collect();
                    let corrected = if d.corrected_holds {
                        "(-1)^(n-k) m^k B^(r)((l-1)! m^(l-1); prod_(i<l-1)(1+im)) reproduces every entry"
                    } else {
                        "corrected specialization also deviates"
                    };
                    known.push(Known {
                        suite: "families",
                        name: format!("r-whitney1 m={m} r={r}"),
                        summary: format!("{} of {} entries differ; {corrected}", d.differing, d.entries.len()),
                        detail: json!({ "description": d.description, "entries": entries }),
                    });
                }
            }
        }
    }
}

fn crosscheck_into(spec: &SeqSpec, n_max: usize, res: &mut SuiteResult) -> Option<rbell::families::CrosscheckReport> {
    let label = format!(
        "{} m={} r={} mode={}",
        spec.family.name(),
        spec.m,
        spec.r,
        spec.mode.name()
    );
    match crosscheck_family(spec, n_max) {
        Ok(rep) => {
            res.check(rep.holds(), || {
                let first = rep.mismatches.first().map(|m| {
                    format!("{} at ({},{}): {} vs {}", m.between, m.n, m.k, m.left, m.right)
                });
                format!("{label}: {}", first.unwrap_or_else(|| "corrected specialization deviates".into()))
            });
            Some(rep)
        }
        Err(e) => {
            res.check(false, || format!("{label}: {e}"));
            None
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_pmf(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let len = rng.gen_range(1..=4);
    let weights: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=5)).collect();
    let total: i64 = weights.iter().sum();
    if total == 0 {
        return vec![rat(1)];
    }
    weights.into_iter().map(|w| ratio(w, total)).collect()
}

fn stochastic(b: &Bounds, res: &mut SuiteResult, known: &mut Vec<Known>) {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let n_moment = b.n_max.min(6);
    for p in 1..=4 {
        for q in 0..=4 - p {
            let px = random_pmf(&mut rng);
            let qy = random_pmf(&mut rng);
            let spec = PmfSpec::new(px.clone(), qy.clone()).expect("normalized");
            let support = p * (px.len() - 1) + q * (qy.len() - 1);
            let mut total = rat(0);
            for n in 0..=support {
                let v = pmf_of_sum(p, q, n, &spec).expect("p >= 1");
                res.check(v == pmf_oracle(p, q, n, &spec), || {
                    format!("pmf p={p} q={q} n={n}: differs from direct convolution")
                });
                total += v;
            }
            res.check(total == rat(1), || format!("pmf p={p} q={q}: total mass {total}"));

            let mut mu = vec![rat(1)];
            let mut nu = vec![rat(1)];
            for _ in 0..n_moment {
                mu.push(random_rational(&mut rng));
                nu.push(random_rational(&mut rng));
            }
            let spec = MomentSpec::new(mu, nu).expect("mu_0 = nu_0 = 1");
            for n in 0..=n_moment {
                let ok = moment_of_sum(p, q, n, &spec).ok() == moment_oracle(p, q, n, &spec).ok();
                res.check(ok, || format!("moment p={p} q={q} n={n}: differs from multinomial expansion"));
            }
        }
    }
    for p in 1..=5 {
        for r in 0..=5 - p {
            for n in 0..=n_moment {
                let rep = rstirling_uniform_identity(p, r, n).expect("p >= 1");
                res.check(rep.holds(), || format!("{}: {} vs {}", rep.label, rep.lhs, rep.rhs));
            }
        }
    }
    let one = Sampler::Constant(rat(1));
    let runs = [
        (3, 0, 2, Sampler::Uniform01, one.clone()),
        (2, 0, 3, Sampler::Bernoulli(ratio(1, 2)), one.clone()),
        (2, 1, 4, one.clone(), one.clone()),
        (2, 2, 3, Sampler::DiscreteUniform(2), Sampler::Bernoulli(ratio(1, 3))),
    ];
    for (i, (p, q, n, x, y)) in runs.iter().enumerate() {
        let seed = b.seed.wrapping_add(i as u64);
        let rep = monte_carlo_check(*p, *q, *n, x, y, 100_000, seed).expect("valid setup");
        res.check(rep.holds(), || {
            format!(
                "monte carlo p={p} q={q} n={n}: mean {} vs exact {} ({:.2} standard errors)",
                rep.mean,
                render_rational(&rep.exact),
                rep.deviation()
            )
        });
    }

    let coin = vec![ratio(1, 2), ratio(1, 2)];
    let mut rows = Vec::new();
    let mut differing = 0;
    for p in 1..=2 {
        for q in 1..=2 {
            for n in 0..=p + q {
                let exact = pmf_with_shift(p, q, n, &coin).expect("valid");
                let printed = printed_shift_corollary(p, q, n, &coin).expect("valid");
                if exact != printed {
                    differing += 1;
                }
                rows.push(json!({
                    "p": p, "q": q, "n": n,
                    "exact": render_rational(&exact),
                    "printed": render_rational(&printed),
                }));
            }
        }
    }
    known.push(Known {
        suite: "stochastic",
        name: "printed shifted-pmf corollary".into(),
        summary: format!(
            "{differing} of {} fair-coin cases differ from P(X_1+...+X_p+q = n)",
            rows.len()
        ),
        detail: json!({ "cases": rows }),
    });
}

fn calculus(b: &Bounds, res: &mut SuiteResult) {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed ^ 0x5eed);
    for i in 0..50 {
        let n = rng.gen_range(0..=b.n_max);
        let r = rng.gen_range(0..=b.r_max);
        let f: Vec<Rational> = (0..=n).map(|_| random_rational(&mut rng)).collect();
        let g: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let h: Vec<Rational> = (0..=n).map(|_| random_rational(&mut rng)).collect();
        let jet = JetSpec::new(f, g, h);
        let ok = derivative_via_rbell(n, r, &jet).ok() == derivative_via_series(n, r, &jet).ok();
        res.check(ok, || format!("random jet #{i} (n={n}, r={r}): routes disagree"));
    }
    for m in 1..=3 {
        for r in 0..=b.r_max.min(2) {
            for n in 0..=b.n_max {
                let rep = whitney_exp_identity(m, r, n, ratio(3, 10)).expect("m >= 1");
                res.check(rep.holds(), || format!("exponential identity m={m} r={r} n={n}"));
            }
        }
    }
}
