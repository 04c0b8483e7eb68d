//! Command-line front end: normal forms, relation checks, spectrum tables.
//!
//! Every command produces a [`Report`] that renders as text or as key-sorted
//! JSON. Exit codes: 0 all checks pass, 1 a verification failed, 2 usage,
//! parse or evaluation error.

pub mod parser;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::builders::{Mu, Registry};
use crate::relations::{self, CheckOptions, FamilyId, RelationReport};
use crate::states::{self, SpectrumTable};

pub use parser::{parse, Atom, EvalError, Expr, Func, ParseError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dunkl", version, about = "Exact operator algebra for the Dunkl oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of an operator expression.
    Nf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 2)]
        dims: usize,
        /// Comma-separated rationals fixing mu1, mu2, ...
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check a relation family, or `all`.
    Verify(VerifyArgs),
    /// Energy levels, degeneracies and ladder coefficients.
    Spectrum {
        #[arg(long, default_value_t = 2)]
        dims: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value_t = 3)]
        levels: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List the relation families.
    ListRelations {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub family: String,
    /// Keep every mu_i symbolic (default).
    #[arg(long, conflicts_with = "mu")]
    pub parametric: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Corrupt one identity per family; the check must then fail.
    #[arg(long)]
    pub perturb: bool,
}

/// Machine-readable result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub dims: usize,
    pub mu: Mu,
    pub results: Vec<Value>,
    pub passed: bool,
}

impl Report {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_json(&self) -> Value {
        let (mode, values) = match &self.mu {
            Mu::Parametric => ("parametric", Vec::new()),
            Mu::Numeric(v) => ("numeric", v.iter().map(rat_str).collect()),
        };
        json!({
            "command": self.command,
            "dims": self.dims,
            "mu_mode": mode,
            "mu": values,
            "results": self.results,
            "status": self.status(),
        })
    }
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            stdout: String::new(),
            stderr,
            code: EXIT_USAGE,
        }
    }
}

/// Rational as `p/q`, or `p` for integers.
pub fn rat_str(q: &BigRational) -> String {
    q.to_string()
}

fn mu_from(values: Option<&str>) -> Result<Mu, String> {
    match values {
        None => Ok(Mu::Parametric),
        Some(s) => relations::parse_mu_values(s).map(Mu::Numeric),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_PASS,
                }
            };
        }
    };
    execute(&cli.command)
}

pub fn execute(cmd: &Command) -> Outcome {
    let (report, format, text) = match cmd {
        Command::Nf { expr, dims, mu, format } => match command_nf(expr, *dims, mu.as_deref()) {
            Ok(r) => {
                let t = r.results[0]["normal_form"].as_str().unwrap_or_default().to_string() + "\n";
                (r, *format, t)
            }
            Err(e) => return Outcome::usage(e),
        },
        Command::Verify(v) => {
            let mu = match mu_from(v.mu.as_deref()) {
                Ok(m) => m,
                Err(e) => return Outcome::usage(e),
            };
            match command_verify(&v.family, &mu, v.perturb) {
                Ok((r, reports)) => {
                    let t = verify_text(&r, &reports);
                    (r, v.format, t)
                }
                Err(e) => return Outcome::usage(e),
            }
        }
        Command::Spectrum { dims, mu, levels, format } => match command_spectrum(*dims, mu, *levels) {
            Ok((r, table)) => {
                let t = spectrum_text(&table, &r.mu);
                (r, *format, t)
            }
            Err(e) => return Outcome::usage(e),
        },
        Command::ListRelations { format } => {
            let r = command_list_relations();
            let mut t = String::new();
            for id in relations::list_families() {
                let _ = writeln!(t, "{:<18} {}", id.as_str(), id.description());
            }
            (r, *format, t)
        }
    };
    let stdout = match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("json values serialize") + "\n",
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: report.exit_code(),
    }
}

pub fn command_nf(expr: &str, dims: usize, mu: Option<&str>) -> Result<Report, String> {
    let mu = mu_from(mu)?;
    let reg = Registry::new(dims, mu.clone()).map_err(|e| e.to_string())?;
    let ast = parse(expr, dims).map_err(|e| e.to_string())?;
    let value = ast.eval(&reg).map_err(|e| e.to_string())?;
    Ok(Report {
        command: format!("nf {expr}"),
        dims,
        mu,
        results: vec![json!({
            "expr": expr,
            "normal_form": value.to_string(),
            "terms": value.len(),
        })],
        passed: true,
    })
}

pub fn command_verify(family: &str, mu: &Mu, perturb: bool) -> Result<(Report, Vec<RelationReport>), String> {
    let ids: Vec<FamilyId> = if family == "all" {
        relations::list_families().to_vec()
    } else {
        vec![family.parse::<FamilyId>().map_err(|e| e.to_string())?]
    };
    let opts = CheckOptions { perturb };
    let reports = relations::check_many(&ids, mu, &opts).map_err(|e| e.to_string())?;
    let results = reports
        .iter()
        .map(|r| {
            let identities: Vec<Value> = r
                .identities
                .iter()
                .map(|i| {
                    json!({
                        "label": i.label,
                        "passed": i.passed,
                        "residual_terms": i.term_count(),
                        "residual": i.residual.to_string(),
                    })
                })
                .collect();
            json!({
                "family": r.family.as_str(),
                "passed": r.passed(),
                "identities": identities,
            })
        })
        .collect();
    let mut command = format!("verify {family}");
    match mu {
        Mu::Parametric => command.push_str(" --parametric"),
        Mu::Numeric(v) => {
            let vals: Vec<String> = v.iter().map(rat_str).collect();
            let _ = write!(command, " --mu {}", vals.join(","));
        }
    }
    if perturb {
        command.push_str(" --perturb");
    }
    let report = Report {
        command,
        dims: 2,
        mu: mu.clone(),
        results,
        passed: reports.iter().all(RelationReport::passed),
    };
    Ok((report, reports))
}

fn verify_text(report: &Report, reports: &[RelationReport]) -> String {
    const SHOWN: usize = 240;
    let mut t = String::new();
    for r in reports {
        let ok = r.identities.iter().filter(|i| i.passed).count();
        let _ = writeln!(
            t,
            "{} {:<18} {}/{} identities",
            if r.passed() { "PASS" } else { "FAIL" },
            r.family.as_str(),
            ok,
            r.identities.len()
        );
        for i in r.identities.iter().filter(|i| !i.passed) {
            let mut res = i.residual.to_string();
            if res.len() > SHOWN {
                let cut = (0..=SHOWN).rev().find(|k| res.is_char_boundary(*k)).unwrap_or(0);
                res.truncate(cut);
                res.push_str(" ...");
            }
            let _ = writeln!(t, "    {}: residual has {} term(s): {}", i.label, i.term_count(), res);
        }
    }
    let _ = writeln!(t, "status: {}", report.status());
    t
}

pub fn command_spectrum(dims: usize, mu: &str, levels: u32) -> Result<(Report, SpectrumTable), String> {
    let values = relations::parse_mu_values(mu)?;
    if values.len() != dims {
        return Err(format!("spectrum needs {dims} mu value(s), got {}", values.len()));
    }
    let table = states::spectrum_table(dims, &values, levels).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "level": r.level,
                "energy": r.energy.to_string(),
                "degeneracy": r.degeneracy,
            })
        })
        .collect();
    let ladder: Vec<Vec<String>> = table
        .ladder
        .iter()
        .map(|cs| cs.iter().map(ToString::to_string).collect())
        .collect();
    let warning = (!table.admissible).then(admissibility_warning);
    let command = format!("spectrum --dims {dims} --mu {mu} --levels {levels}");
    let report = Report {
        command,
        dims,
        mu: Mu::Numeric(values),
        results: vec![json!({
            "rows": rows,
            "ladder": ladder,
            "admissible": table.admissible,
            "warning": warning,
        })],
        passed: true,
    };
    Ok((report, table))
}

fn admissibility_warning() -> String {
    "inadmissible parameters: some ladder coefficient c_k <= 0, so the states are not normalizable".to_string()
}

fn spectrum_text(table: &SpectrumTable, mu: &Mu) -> String {
    let mut t = String::new();
    if let Mu::Numeric(v) = mu {
        let vals: Vec<String> = v.iter().map(rat_str).collect();
        let _ = writeln!(t, "dims {}, mu = ({})", table.dims, vals.join(", "));
    }
    let _ = writeln!(t, "{:>4}  {:>12}  {:>10}", "N", "energy", "degeneracy");
    for r in &table.rows {
        let _ = writeln!(t, "{:>4}  {:>12}  {:>10}", r.level, r.energy.to_string(), r.degeneracy);
    }
    for (v, cs) in table.ladder.iter().enumerate() {
        let cs: Vec<String> = cs.iter().map(ToString::to_string).collect();
        let _ = writeln!(t, "ladder c_k (x{}): {}", v + 1, cs.join(", "));
    }
    if !table.admissible {
        let _ = writeln!(t, "warning: {}", admissibility_warning());
    }
    t
}

pub fn command_list_relations() -> Report {
    let results = relations::list_families()
        .iter()
        .map(|id| {
            json!({
                "family": id.as_str(),
                "description": id.description(),
                "prerequisites": id.prerequisites().iter().map(FamilyId::as_str).collect::<Vec<_>>(),
            })
        })
        .collect();
    Report {
        command: "list-relations".into(),
        dims: 2,
        mu: Mu::Parametric,
        results,
        passed: true,
    }
}
