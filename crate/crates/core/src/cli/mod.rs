//! Command-line driver.
//!
//! [`execute`] takes the argument list and returns the exit code and the text
//! destined for stdout and stderr, so the whole front end is testable
//! in-process. Exit codes: 0 success, 1 mismatch, 2 usage or parse error,
//! 3 numeric non-convergence.

pub mod demo;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;

use crate::expr::{self, format_series, ExprError, Variables};
use crate::inversion::{self, InversionError, SeriesSystem, MAX_VARIABLES};
use crate::oracle::{self, OracleError, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::rational::Rational;
use crate::series::MultiIndex;

use demo::{DemoName, Observable};
use report::{csv_table, k_text, mismatch, term, text_table, Format, JsonReport, NumericRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lagrange-good", version, about = "Check Lagrange-Good inversion on truncated power series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the solution g of g_i = x_i f_i(g) to order N.
    Solve(SystemArgs),
    /// Print one coefficient of both sides.
    Coeff {
        #[command(flatten)]
        system: SystemArgs,
        /// Multi-index, comma separated.
        #[arg(short = 'k', value_delimiter = ',', required = true)]
        k: Vec<u32>,
    },
    /// Compare every coefficient of both sides up to order N.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, hide = true)]
        sabotage: Option<Sabotage>,
    },
    /// Compare partial sums of the left side against a float fixed point.
    NumericCheck {
        #[command(flatten)]
        system: SystemArgs,
        /// Evaluation point, comma separated.
        #[arg(long = "x", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Orders to tabulate; defaults to 1..=N.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u32>,
    },
    /// Run a built-in instance against its known sequence.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Test-only perturbations used to exercise the mismatch path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sabotage {
    /// Add one to every right-hand coefficient.
    Rhs,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Number of variables.
    #[arg(short = 'n')]
    pub n: usize,
    /// Truncation order (total degree).
    #[arg(short = 'N')]
    pub order: u32,
    #[arg(long)]
    pub phi: String,
    /// f_1, ..., f_n in order (repeatable).
    #[arg(long = "f")]
    pub f: Vec<String>,
    #[arg(long)]
    pub f1: Option<String>,
    #[arg(long)]
    pub f2: Option<String>,
    #[arg(long)]
    pub f3: Option<String>,
    #[arg(long)]
    pub f4: Option<String>,
    #[arg(long)]
    pub f5: Option<String>,
    #[arg(long)]
    pub f6: Option<String>,
    #[arg(long)]
    pub f7: Option<String>,
    #[arg(long)]
    pub f8: Option<String>,
    /// Variable names, comma separated (x1..xn are always accepted).
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Validated run settings.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub order: u32,
    pub vars: Variables,
    pub format: Format,
    pub phi: String,
    pub f: Vec<String>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Expr { what: String, error: ExprError },
    Inversion(InversionError),
    Oracle(OracleError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Expr { what, error } => write!(f, "in {what}: {error}"),
            CliError::Inversion(e) => write!(f, "{e}"),
            CliError::Oracle(e) => write!(f, "numeric error: {e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Oracle(
                OracleError::NotConverged { .. }
                | OracleError::NearSingular { .. }
                | OracleError::Exhausted,
            ) => EXIT_NUMERIC,
            _ => EXIT_USAGE,
        }
    }
}

impl From<InversionError> for CliError {
    fn from(e: InversionError) -> Self {
        CliError::Inversion(e)
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Oracle(e)
    }
}

/// Exit code plus captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

impl SystemArgs {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        if self.n == 0 || self.n > MAX_VARIABLES {
            return Err(CliError::Usage(format!(
                "-n must lie in 1..={MAX_VARIABLES}, got {}",
                self.n
            )));
        }
        let numbered = [
            &self.f1, &self.f2, &self.f3, &self.f4, &self.f5, &self.f6, &self.f7, &self.f8,
        ];
        let f: Vec<String> = if numbered.iter().any(|f| f.is_some()) {
            if !self.f.is_empty() {
                return Err(CliError::Usage("use either --f or --f1..--f8, not both".into()));
            }
            if let Some(extra) = numbered[self.n..].iter().position(|f| f.is_some()) {
                return Err(CliError::Usage(format!(
                    "--f{} given but -n is {}",
                    self.n + extra + 1,
                    self.n
                )));
            }
            numbered[..self.n]
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    f.as_ref()
                        .cloned()
                        .ok_or_else(|| CliError::Usage(format!("--f{} is missing", i + 1)))
                })
                .collect::<Result<_, _>>()?
        } else {
            self.f.clone()
        };
        if f.len() != self.n {
            return Err(CliError::Usage(format!(
                "expected {} f expressions, got {}",
                self.n,
                f.len()
            )));
        }
        let vars = match &self.vars {
            Some(names) if names.len() != self.n => {
                return Err(CliError::Usage(format!(
                    "--vars lists {} names for {} variables",
                    names.len(),
                    self.n
                )))
            }
            Some(names) => Variables::named(names.clone()).map_err(|error| CliError::Expr {
                what: "--vars".into(),
                error,
            })?,
            None => Variables::standard(self.n),
        };
        Ok(RunConfig {
            n: self.n,
            order: self.order,
            vars,
            format: self.format,
            phi: self.phi.clone(),
            f,
        })
    }
}

impl RunConfig {
    pub fn system(&self) -> Result<SeriesSystem, CliError> {
        let lower = |what: String, src: &str| {
            expr::parse_series(src, &self.vars, self.order)
                .map_err(|error| CliError::Expr { what, error })
        };
        let phi = lower("--phi".into(), &self.phi)?;
        let f = self
            .f
            .iter()
            .enumerate()
            .map(|(i, src)| lower(format!("f{}", i + 1), src))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SeriesSystem::new(phi, f)?)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(EXIT_OK, text)
            };
        }
    };
    match run(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Solve(args) => solve(&args.config()?),
        Command::Coeff { system, k } => coeff(&system.config()?, k),
        Command::Verify { system, sabotage } => verify(&system.config()?, *sabotage),
        Command::NumericCheck {
            system,
            x,
            tol,
            orders,
        } => numeric_check(&system.config()?, x, *tol, orders),
        Command::Demo { name, format } => run_demo(*name, *format),
    }
}

fn solve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sys = cfg.system()?;
    let solution = inversion::solve_fixed_point(&sys);
    let code = if solution.residual_ok { EXIT_OK } else { EXIT_MISMATCH };
    let out = match cfg.format {
        Format::Text => {
            let mut s = String::new();
            for (i, g) in solution.g.iter().enumerate() {
                s.push_str(&format!("g{} = {}\n", i + 1, format_series(g, &cfg.vars)));
            }
            s.push_str(&format!(
                "order {}; residual {}\n",
                cfg.order,
                if solution.residual_ok { "vanishes" } else { "NONZERO" }
            ));
            s
        }
        Format::Json => {
            let mut r = JsonReport::new(cfg.n, cfg.order, "solve");
            r.series = Some(
                solution
                    .g
                    .iter()
                    .enumerate()
                    .flat_map(|(i, g)| g.terms().map(move |(k, c)| term(k, c, Some(i + 1))))
                    .collect(),
            );
            r.render()
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = solution
                .g
                .iter()
                .enumerate()
                .flat_map(|(i, g)| {
                    g.terms()
                        .map(move |(k, c)| vec![(i + 1).to_string(), k_text(k), c.to_string()])
                })
                .collect();
            csv_table(&["i", "k", "c"], &rows)
        }
    };
    Ok(Outcome::ok(code, out))
}

fn coeff(cfg: &RunConfig, k: &[u32]) -> Result<Outcome, CliError> {
    if k.len() != cfg.n {
        return Err(CliError::Usage(format!(
            "-k has {} entries for {} variables",
            k.len(),
            cfg.n
        )));
    }
    let k = MultiIndex::new(k.to_vec());
    if k.degree() > cfg.order {
        return Err(CliError::Usage(format!(
            "|k| = {} exceeds the order {}",
            k.degree(),
            cfg.order
        )));
    }
    let sys = cfg.system()?;
    let lhs = inversion::lhs_series(&sys)
        .coefficient(&k)
        .map_err(InversionError::from)?;
    let rhs = inversion::rhs_coefficient(&sys, &k)?;
    let code = if lhs == rhs { EXIT_OK } else { EXIT_MISMATCH };
    let out = match cfg.format {
        Format::Text => format!(
            "k = ({})\nlhs = {lhs}\nrhs = {rhs}\n{}\n",
            k_text(&k),
            if lhs == rhs { "equal" } else { "MISMATCH" }
        ),
        Format::Json => {
            let mut r = JsonReport::new(cfg.n, cfg.order, "coeff");
            r.checked = Some(1);
            r.mismatches = Some(if lhs == rhs {
                Vec::new()
            } else {
                vec![mismatch(&k, &lhs, &rhs)]
            });
            r.series = Some(vec![term(&k, &lhs, None)]);
            r.render()
        }
        Format::Csv => csv_table(
            &["k", "lhs", "rhs"],
            &[vec![k_text(&k), lhs.to_string(), rhs.to_string()]],
        ),
    };
    Ok(Outcome::ok(code, out))
}

fn verify(cfg: &RunConfig, sabotage: Option<Sabotage>) -> Result<Outcome, CliError> {
    let sys = cfg.system()?;
    let rhs = |k: &MultiIndex| {
        let c = inversion::rhs_coefficient(&sys, k).expect("k within order");
        match sabotage {
            Some(Sabotage::Rhs) => c + Rational::one(),
            None => c,
        }
    };
    let report = inversion::verify_identity_against(&sys, rhs);
    let code = if report.holds() { EXIT_OK } else { EXIT_MISMATCH };
    let rows: Vec<(MultiIndex, Rational, Rational)> = MultiIndex::all_up_to(cfg.n, cfg.order)
        .into_iter()
        .map(|k| {
            let lhs = report.lhs.coefficient(&k).expect("k within order");
            let rhs = report
                .mismatches
                .iter()
                .find(|m| m.k == k)
                .map_or_else(|| lhs.clone(), |m| m.rhs.clone());
            (k, lhs, rhs)
        })
        .collect();
    let out = match cfg.format {
        Format::Text => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(k, l, r)| {
                    vec![
                        format!("({})", k_text(k)),
                        l.to_string(),
                        r.to_string(),
                        if l == r { "ok" } else { "MISMATCH" }.to_string(),
                    ]
                })
                .collect();
            let mut s = format!(
                "lhs = {}\n\n",
                format_series(&report.lhs, &cfg.vars)
            );
            s.push_str(&text_table(&["k", "lhs", "rhs", ""], &table));
            s.push_str(&format!(
                "\nchecked {} coefficients (n = {}, N = {}): {} mismatches\n",
                report.checked,
                cfg.n,
                cfg.order,
                report.mismatches.len()
            ));
            s
        }
        Format::Json => {
            let mut r = JsonReport::new(cfg.n, cfg.order, "verify");
            r.checked = Some(report.checked);
            r.mismatches = Some(
                report
                    .mismatches
                    .iter()
                    .map(|m| mismatch(&m.k, &m.lhs, &m.rhs))
                    .collect(),
            );
            r.series = Some(rows.iter().map(|(k, l, _)| term(k, l, None)).collect());
            r.render()
        }
        Format::Csv => csv_table(
            &["k", "lhs", "rhs", "match"],
            &rows
                .iter()
                .map(|(k, l, r)| vec![k_text(k), l.to_string(), r.to_string(), (l == r).to_string()])
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::ok(code, out))
}

fn numeric_check(cfg: &RunConfig, x: &[f64], tol: f64, orders: &[u32]) -> Result<Outcome, CliError> {
    if x.len() != cfg.n {
        return Err(CliError::Usage(format!(
            "--x has {} coordinates for {} variables",
            x.len(),
            cfg.n
        )));
    }
    if !(tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let orders: Vec<u32> = if orders.is_empty() {
        (1..=cfg.order.max(1)).filter(|&o| o <= cfg.order).collect()
    } else {
        orders.to_vec()
    };
    let orders = if orders.is_empty() { vec![0] } else { orders };
    if let Some(&bad) = orders.iter().find(|&&o| o > cfg.order) {
        return Err(CliError::Usage(format!("order {bad} exceeds -N {}", cfg.order)));
    }
    if orders.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage("--orders must be increasing".into()));
    }
    let sys = cfg.system()?;
    let table = oracle::compare_partial_sums_with(&sys, x, &orders, tol, DEFAULT_MAX_ITER)?;
    let out = match cfg.format {
        Format::Text => {
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.order.to_string(),
                        format!("{:.15e}", r.series_value),
                        format!("{:.15e}", r.oracle_value),
                        format!("{:.3e}", r.abs_error),
                    ]
                })
                .collect();
            let mut s = text_table(&["N", "series", "oracle", "abs_error"], &rows);
            s.push_str(&format!(
                "\nerrors non-increasing: {}\n",
                if table.is_non_increasing(1e-10) { "yes" } else { "no" }
            ));
            if let Some(slope) = table.log_error_slope() {
                s.push_str(&format!("log-error slope per order: {slope:.4}\n"));
            }
            s
        }
        Format::Json => {
            let mut r = JsonReport::new(cfg.n, cfg.order, "numeric-check");
            r.numeric = Some(
                table
                    .rows
                    .iter()
                    .map(|row| NumericRow {
                        order: row.order,
                        series_value: row.series_value,
                        oracle_value: row.oracle_value,
                        abs_error: row.abs_error,
                    })
                    .collect(),
            );
            r.render()
        }
        Format::Csv => csv_table(
            &["order", "series_value", "oracle_value", "abs_error"],
            &table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.order.to_string(),
                        r.series_value.to_string(),
                        r.oracle_value.to_string(),
                        r.abs_error.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::ok(EXIT_OK, out))
}

fn run_demo(name: DemoName, format: Format) -> Result<Outcome, CliError> {
    let demo = demo::build(name);
    let sys = &demo.system;
    let report = inversion::verify_identity(sys);
    let observed = match demo.observable {
        Observable::PhiOfG => {
            let g = inversion::solve_fixed_point(sys).g;
            sys.phi().compose(&g).map_err(InversionError::from)?
        }
        Observable::GoodLhs => report.lhs.clone(),
    };
    let mut fixture_misses = Vec::new();
    let mut rows = Vec::new();
    for (k, expected) in &demo.expected {
        let computed = observed.coefficient(k).map_err(InversionError::from)?;
        let lhs = report.lhs.coefficient(k).map_err(InversionError::from)?;
        let rhs = report
            .mismatches
            .iter()
            .find(|m| &m.k == k)
            .map_or_else(|| lhs.clone(), |m| m.rhs.clone());
        if &computed != expected {
            fixture_misses.push((k.clone(), computed.clone(), expected.clone()));
        }
        rows.push((k.clone(), expected.clone(), computed, lhs, rhs));
    }
    let code = if report.holds() && fixture_misses.is_empty() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let vars = Variables::standard(sys.nvars());
    let observed_label = match demo.observable {
        Observable::PhiOfG => "phi(g)",
        Observable::GoodLhs => "lhs",
    };
    let out = match format {
        Format::Text => {
            let mut s = format!("demo {}: {}\n", demo.name, demo.description);
            s.push_str(&format!("phi = {}\n", format_series(sys.phi(), &vars)));
            for (i, f) in sys.f().iter().enumerate() {
                s.push_str(&format!("f{} = {}\n", i + 1, format_series(f, &vars)));
            }
            s.push('\n');
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(k, e, c, l, r)| {
                    vec![
                        format!("({})", k_text(k)),
                        e.to_string(),
                        c.to_string(),
                        l.to_string(),
                        r.to_string(),
                        if e == c && l == r { "ok" } else { "MISMATCH" }.to_string(),
                    ]
                })
                .collect();
            s.push_str(&text_table(
                &["k", "expected", observed_label, "good lhs", "good rhs", ""],
                &table,
            ));
            s.push_str(&format!(
                "\nidentity: {} of {} coefficients disagree; fixture: {} disagree\n",
                report.mismatches.len(),
                report.checked,
                fixture_misses.len()
            ));
            s
        }
        Format::Json => {
            let mut r = JsonReport::new(sys.nvars(), sys.order(), &format!("demo {}", demo.name));
            r.checked = Some(report.checked);
            let mut misses: Vec<_> = report
                .mismatches
                .iter()
                .map(|m| mismatch(&m.k, &m.lhs, &m.rhs))
                .collect();
            misses.extend(fixture_misses.iter().map(|(k, c, e)| mismatch(k, c, e)));
            r.mismatches = Some(misses);
            r.series = Some(rows.iter().map(|(k, _, c, _, _)| term(k, c, None)).collect());
            r.render()
        }
        Format::Csv => csv_table(
            &["k", "expected", "computed", "lhs", "rhs"],
            &rows
                .iter()
                .map(|(k, e, c, l, r)| {
                    vec![k_text(k), e.to_string(), c.to_string(), l.to_string(), r.to_string()]
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::ok(code, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        execute(std::iter::once("lagrange-good").chain(args.iter().copied()))
    }

    #[test]
    fn verify_catalan_shaped_system() {
        let out = run_args(&["verify", "-n", "1", "-N", "6", "--phi", "x1", "--f", "1/(1-x1)"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.contains("0 mismatches"));
        // [x^k] u (1-u)^-k = C(2k-2, k-1)
        assert!(out.stdout.contains("lhs = x1 + 2*x1^2 + 6*x1^3 + 20*x1^4 + 70*x1^5 + 252*x1^6"));
    }

    #[test]
    fn coeff_bivariate() {
        let out = run_args(&[
            "coeff", "-n", "2", "-N", "4", "--phi", "1", "--f1", "1+x2", "--f2", "1+x1", "-k", "1,1",
        ]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.contains("lhs = 1\nrhs = 1"));
    }

    #[test]
    fn sabotage_is_reported() {
        let out = run_args(&[
            "verify", "-n", "1", "-N", "3", "--phi", "x1", "--f", "1/(1-x1)", "--sabotage", "rhs",
        ]);
        assert_eq!(out.code, EXIT_MISMATCH);
        assert!(out.stdout.contains("MISMATCH"));
        assert!(out.stdout.contains("4 mismatches"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["verify", "-n", "2", "-N", "3", "--phi", "1", "--f", "1"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["verify", "-n", "9", "-N", "3", "--phi", "1"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        let out = run_args(&["verify", "-n", "1", "-N", "3", "--phi", "x2", "--f", "1"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("unknown variable `x2`"), "{}", out.stderr);
        let out = run_args(&["verify", "-n", "1", "-N", "3", "--phi", "1/x1", "--f", "1"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("cannot be inverted"));
        let out = run_args(&[
            "verify", "-n", "2", "-N", "3", "--phi", "1", "--f", "1", "--f2", "1",
        ]);
        assert_eq!(out.code, EXIT_USAGE);
    }

    #[test]
    fn help_goes_to_stdout() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("numeric-check"));
    }

    #[test]
    fn non_convergence_exit_code() {
        let out = run_args(&[
            "numeric-check", "-n", "1", "-N", "8", "--phi", "1", "--f", "1/(1-x1)", "--x", "0.9",
        ]);
        assert_eq!(out.code, EXIT_NUMERIC, "{}", out.stderr);
    }

    #[test]
    fn negative_points_parse() {
        let out = run_args(&[
            "numeric-check", "-n", "2", "-N", "4", "--phi", "1", "--f", "1+x2", "--f", "1+x1", "--x",
            "-0.05,0.05", "--format", "csv",
        ]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.starts_with("order,series_value,oracle_value,abs_error\n"));
        assert_eq!(out.stdout.lines().count(), 5);
    }

    #[test]
    fn named_variables() {
        let out = run_args(&[
            "solve", "-n", "2", "-N", "3", "--vars", "a,b", "--phi", "1", "--f", "1+b", "--f", "1+a",
        ]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.contains("g1 = a + a*b + a^2*b"), "{}", out.stdout);
    }

    #[test]
    fn demos_pass() {
        for name in ["catalan", "cayley", "bivariate-pair"] {
            let out = run_args(&["demo", name]);
            assert_eq!(out.code, EXIT_OK, "{name}: {}{}", out.stdout, out.stderr);
        }
    }
}
