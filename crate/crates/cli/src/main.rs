use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rbell::calculus::{derivative_via_rbell, derivative_via_series, JetSpec};
use rbell::families::{oracle_table, table_via_egf, table_via_rbell, Family, Mode, SeqSpec};
use rbell::polyring::rational::{parse_rational_list, render_rational};
use rbell::rbell::{rbell, Method, RBellQuery};
use rbell::stochastic::{moment_of_sum, pmf_of_sum, MomentSpec, PmfSpec};
use rbell::{Error, Poly, Rational, VarId, VarKind};

mod verify;

#[derive(Parser, Debug)]
#[command(name = "rbell", version, about = "Exact partial r-Bell polynomials and related number families")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Comma-separated exact rationals such as `1,1/2,-3`.
#[derive(Clone, Debug)]
struct List(Vec<Rational>);

fn rational_list(s: &str) -> Result<List, String> {
    parse_rational_list(s).map(List).map_err(|e| e.to_string())
}

fn family(s: &str) -> Result<Family, String> {
    Family::parse(s).map_err(|e| e.to_string())
}

fn mode(s: &str) -> Result<Mode, String> {
    Mode::parse(s).map_err(|e| e.to_string())
}

fn method(s: &str) -> Result<Method, String> {
    Method::parse(s).ok_or_else(|| format!("unknown method `{s}`"))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate B^{(r)}_{n+r,k+r}, symbolically or at given weights
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        /// a_1,a_2,... as exact rationals
        #[arg(long, value_parser = rational_list)]
        a: Option<List>,
        /// b_1,b_2,... as exact rationals
        #[arg(long, value_parser = rational_list)]
        b: Option<List>,
        #[arg(long, value_parser = method, default_value = "egf")]
        method: Method,
    },
    /// Print a number table
    Table {
        #[arg(long, value_parser = family)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = mode, default_value = "plain")]
        mode: Mode,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Source::Egf)]
        source: Source,
    },
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// E(S^n) for S = X_1+...+X_p + Y_1+...+Y_q from raw moments
    Moments {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long)]
        n: usize,
        /// mu_0,mu_1,... with mu_0 = 1
        #[arg(long, value_parser = rational_list)]
        mu: List,
        /// nu_0,nu_1,... with nu_0 = 1
        #[arg(long, value_parser = rational_list, default_value = "1")]
        nu: List,
    },
    /// P(S = n) for S = X_1+...+X_p + Y_1+...+Y_q
    Pmf {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long)]
        n: usize,
        /// P(X=0),P(X=1),...
        #[arg(long, value_parser = rational_list)]
        px: List,
        /// P(Y=0),P(Y=1),...
        #[arg(long, value_parser = rational_list, default_value = "1")]
        qy: List,
    },
    /// n-th derivative of (H')^r F(G) from Taylor data
    Derive {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// f_0,f_1,...
        #[arg(long, value_parser = rational_list)]
        f: List,
        /// g_1,g_2,...
        #[arg(long, value_parser = rational_list)]
        g: List,
        /// h_1,h_2,...
        #[arg(long, value_parser = rational_list, default_value = "1")]
        h: List,
        #[arg(long, value_enum, default_value_t = DeriveMethod::Rbell)]
        method: DeriveMethod,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Source {
    Egf,
    Rbell,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DeriveMethod {
    Rbell,
    Series,
}

/// Failure raised by a command: usage problems exit with 2, failed
/// verification with 1.
enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn print_value(json_out: bool, value: &Rational) {
    if json_out {
        println!("{}", json!({ "value": render_rational(value) }));
    } else {
        println!("{}", render_rational(value));
    }
}

fn bind(env: &mut BTreeMap<VarId, Rational>, kind: VarKind, values: &[Rational]) {
    for (i, v) in values.iter().enumerate() {
        env.insert(VarId { kind, index: i as u32 + 1 }, v.clone());
    }
}

fn eval(
    json_out: bool,
    q: RBellQuery,
    a: Option<List>,
    b: Option<List>,
    method: Method,
) -> Result<(), Failure> {
    let poly = rbell(&q, method);
    let mut env = BTreeMap::new();
    for (kind, values, flag) in [(VarKind::A, a, "--a"), (VarKind::B, b, "--b")] {
        let Some(List(values)) = values else { continue };
        bind(&mut env, kind, &values);
        let missing = poly
            .variables()
            .into_iter()
            .filter(|v| v.kind == kind && !env.contains_key(v))
            .max();
        if let Some(v) = missing {
            return Err(Failure::Usage(format!("{flag} needs at least {} values", v.index)));
        }
    }
    let result: Poly = poly.substitute_partial(&env);
    // numeric output once weights were supplied and nothing symbolic is left
    match result.as_constant() {
        Some(c) if !env.is_empty() => print_value(json_out, &c),
        _ => println!("{}", result.to_json()),
    }
    Ok(())
}

fn table(
    json_out: bool,
    spec: SeqSpec,
    n_max: usize,
    format: Format,
    source: Source,
) -> Result<(), Failure> {
    let t = match source {
        Source::Egf => table_via_egf(&spec, n_max)?,
        Source::Rbell => table_via_rbell(&spec, n_max)?,
        Source::Oracle => oracle_table(&spec, n_max)?,
    };
    if json_out || matches!(format, Format::Json) {
        println!("{}", serde_json::to_string(&t.to_json_value()).expect("serializable"));
    } else {
        print!("{}", t.to_csv());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json_out = cli.json;
    match cli.command {
        Command::Eval { n, k, r, a, b, method } => eval(json_out, RBellQuery::symbolic(n, k, r), a, b, method),
        Command::Table {
            family,
            m,
            r,
            mode,
            n_max,
            format,
            source,
        } => table(json_out, SeqSpec::new(family, r, m, mode), n_max, format, source),
        Command::Verify { suite, n_max, r_max, seed } => {
            let bounds = verify::Bounds { n_max, r_max, seed };
            let report = verify::run(suite, &bounds);
            if json_out {
                println!("{}", serde_json::to_string_pretty(&report.to_json(&bounds)).expect("serializable"));
            } else {
                print!("{}", report.render());
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Moments { p, q, n, mu, nu } => {
            let spec = MomentSpec::new(mu.0, nu.0)?;
            print_value(json_out, &moment_of_sum(p, q, n, &spec)?);
            Ok(())
        }
        Command::Pmf { p, q, n, px, qy } => {
            let spec = PmfSpec::new(px.0, qy.0)?;
            print_value(json_out, &pmf_of_sum(p, q, n, &spec)?);
            Ok(())
        }
        Command::Derive { n, r, f, g, h, method } => {
            let jet = JetSpec::new(f.0, g.0, h.0);
            let value = match method {
                DeriveMethod::Rbell => derivative_via_rbell(n, r, &jet)?,
                DeriveMethod::Series => derivative_via_series(n, r, &jet)?,
            };
            print_value(json_out, &value);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(g) = std::env::var_os("RBELL_GUARD") {
        eprintln!("warning: enumeration guard overridden by RBELL_GUARD={}", g.to_string_lossy());
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
