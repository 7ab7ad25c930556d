//! Command-line front end. [`run`] is the whole program; the `qkernel`
//! binary only forwards `std::env::args` to it.

mod format;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use format::{Format, Table};

use crate::audit::{run_audit, AuditConfig, AuditReport, Verdict, DEFAULT_N_MAX, DEFAULT_RANGE_LIMIT};
use crate::bernstein::{basis_matrix, operator_eval, OperatorMode, OperatorValue};
use crate::carlitz::{beta, beta_inverse_at, beta_order, BetaFamily};
use crate::exact::{fmt_rational, parse_rational, Rational};
use crate::padic::{convergence_probe, riemann_sum, QSeed};
use crate::qcalc::{q_binomial, q_factorial, q_integer, stirling, StirlingVariant};
use crate::{Error, Result};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Usage, parse or domain error.
pub const EXIT_USAGE: i32 = 1;
/// `audit --expect` found verdicts that differ from the golden report.
pub const EXIT_DRIFT: i32 = 2;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "QKERNEL_THREADS";

const SYNOPSIS: &str = "usage: qkernel [--config FILE] [--format text|csv|json|latex] <COMMAND>
commands: table, beta, bernstein-matrix, bernstein-eval, padic-probe, audit
run `qkernel <COMMAND> --help` for the flags of one command";

#[derive(Parser, Debug)]
#[command(
    name = "qkernel",
    version,
    about = "Exact q-calculus: q-Bernstein bases, Carlitz q-Bernoulli numbers, identity audits"
)]
#[command(args_override_self = true)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tables of q-integers, q-factorials, Gaussian binomials or q-Stirling numbers.
    Table(TableArgs),
    /// Carlitz q-Bernoulli numbers and their higher-order and inverse families.
    Beta(BetaArgs),
    /// Power-basis coefficients of the degree-n q-Bernstein basis.
    BernsteinMatrix(MatrixArgs),
    /// Evaluate the q-Bernstein operator on sampled values.
    BernsteinEval(EvalArgs),
    /// Riemann sums of the p-adic q-integral against the closed-form moments.
    PadicProbe(ProbeArgs),
    /// Check every registered identity under every Stirling reading.
    Audit(AuditArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Qint,
    Qfact,
    Qbinom,
    Stirling,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Stirling variant tag (S1_ELEM, S1_SIGNED, S2_EXPLICIT, S2_SERIES, S2_EQ16); all when omitted.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, default_value_t = 6)]
    n_max: u32,
}

#[derive(Args, Debug)]
struct BetaArgs {
    #[arg(long)]
    n: u32,
    /// Order k >= 1 of the higher-order family.
    #[arg(long)]
    order: Option<u32>,
    /// Use the inverse family; `--n` is then the index.
    #[arg(long)]
    inverse: bool,
    /// Integer argument x of the polynomial families.
    #[arg(long, default_value_t = 0)]
    x: u32,
    /// Also print the value at q = 1 (the classical limit).
    #[arg(long)]
    limit_q1: bool,
    /// Also print the value at this rational q.
    #[arg(long)]
    eval_q: Option<String>,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long)]
    n: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalMode {
    /// Exact when q^x is known to be rational, binary64 otherwise.
    Auto,
    Exact,
    Real,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Degree; must match the number of samples minus one.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    q: String,
    #[arg(long)]
    x: String,
    /// File with f(0/n), ..., f(n/n), one rational per line.
    #[arg(long)]
    samples: PathBuf,
    /// Value of [x]_q for exact evaluation at a general x.
    #[arg(long)]
    u: Option<String>,
    #[arg(long, value_enum, default_value_t = EvalMode::Auto)]
    mode: EvalMode,
}

#[derive(Args, Debug)]
struct ProbeArgs {
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
    q: i64,
    #[arg(long, default_value_t = 1)]
    moment: u32,
    /// Largest level N.
    #[arg(long, default_value_t = 6)]
    levels: u32,
    /// Unit digits K of p-adic precision.
    #[arg(long, default_value_t = 12)]
    precision: u32,
}

#[derive(Args, Debug)]
struct AuditArgs {
    /// Comma-separated identity ids; all when omitted.
    #[arg(long, value_delimiter = ',')]
    identities: Vec<String>,
    /// Comma-separated binding labels; all when omitted.
    #[arg(long, value_delimiter = ',')]
    bindings: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n_max: u32,
    #[arg(long, default_value_t = DEFAULT_RANGE_LIMIT)]
    range_limit: u32,
    /// Golden report; exit 2 if any verdict differs.
    #[arg(long)]
    expect: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

/// Runs the program on `args` (including the program name) and returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => return usage(err, &e.to_string()),
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            let _ = writeln!(err, "{SYNOPSIS}");
            return EXIT_USAGE;
        }
    };
    let threads = match &cli.command {
        Command::Audit(a) => thread_cap(a.threads),
        _ => thread_cap(None),
    };
    let (mut buf_out, mut buf_err) = (Vec::new(), Vec::new());
    let outcome = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut buf_out, &mut buf_err)),
            Err(e) => Err(Error::Domain(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli, &mut buf_out, &mut buf_err),
    };
    let _ = out.write_all(&buf_out);
    let _ = err.write_all(&buf_err);
    match outcome {
        Ok(code) => code,
        Err(e) => usage(err, &e.to_string()),
    }
}

fn usage(err: &mut dyn Write, message: &str) -> i32 {
    let _ = writeln!(err, "error: {message}");
    let _ = writeln!(err, "{SYNOPSIS}");
    EXIT_USAGE
}

fn thread_cap(flag: Option<usize>) -> Option<usize> {
    combine_caps(flag, std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()))
}

fn combine_caps(flag: Option<usize>, env: Option<usize>) -> Option<usize> {
    match (flag.filter(|&n| n > 0), env.filter(|&n| n > 0)) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Replaces `--config FILE` with the `--key value` flags listed in the
/// file, placed right after the subcommand so explicit flags win.
fn expand_config(args: Vec<String>) -> Result<Vec<String>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut config = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            config = Some(it.next().ok_or_else(|| Error::Parse("--config needs a file".into()))?);
        } else if let Some(path) = a.strip_prefix("--config=") {
            config = Some(path.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = config else { return Ok(rest) };
    let flags = read_config(Path::new(&path))?;
    let commands = ["table", "beta", "bernstein-matrix", "bernstein-eval", "padic-probe", "audit"];
    let at = rest.iter().position(|a| commands.contains(&a.as_str())).map_or(rest.len(), |i| i + 1);
    rest.splice(at..at, flags);
    Ok(rest)
}

fn read_config(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?;
    let mut flags = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!("config {} line {}: expected key=value", path.display(), lineno + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            _ => {
                flags.push(format!("--{key}"));
                flags.push(value.to_string());
            }
        }
    }
    Ok(flags)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let fmt = cli.format;
    let emit = |out: &mut dyn Write, s: String| -> Result<i32> {
        out.write_all(s.as_bytes()).map_err(|e| Error::Domain(format!("write: {e}")))?;
        Ok(EXIT_OK)
    };
    match &cli.command {
        Command::Table(a) => emit(out, table(a)?.render(fmt)),
        Command::Beta(a) => emit(out, beta_table(a)?.render(fmt)),
        Command::BernsteinMatrix(a) => {
            let m = basis_matrix(a.n);
            let rows = m.rows().iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
            emit(out, Table::matrix(rows).render(fmt))
        }
        Command::BernsteinEval(a) => emit(out, bernstein_eval(a)?.render(fmt)),
        Command::PadicProbe(a) => emit(out, probe_table(a)?.render(fmt)),
        Command::Audit(a) => audit(a, fmt, out, err),
    }
}

fn table(a: &TableArgs) -> Result<Table> {
    let n_max = a.n_max;
    let t = match a.family {
        Family::Qint => {
            let mut t = Table::new(&["n", "value"]);
            (0..=n_max).for_each(|n| t.push(vec![n.to_string(), q_integer(n).to_string()]));
            t
        }
        Family::Qfact => {
            let mut t = Table::new(&["n", "value"]);
            (0..=n_max).for_each(|n| t.push(vec![n.to_string(), q_factorial(n).to_string()]));
            t
        }
        Family::Qbinom => {
            let mut t = Table::new(&["n", "k", "value"]);
            for n in 0..=n_max {
                (0..=n).for_each(|k| t.push(vec![n.to_string(), k.to_string(), q_binomial(n, k as i64).to_string()]));
            }
            t
        }
        Family::Stirling => {
            let variants: Vec<StirlingVariant> = match &a.variant {
                Some(tag) => vec![StirlingVariant::from_tag(tag)
                    .ok_or_else(|| Error::Parse(format!("unknown Stirling variant `{tag}`")))?],
                None => StirlingVariant::ALL.to_vec(),
            };
            let mut t = Table::new(&["variant", "n", "k", "value"]);
            for v in variants {
                for n in 0..=n_max as i64 {
                    for k in 0..=n {
                        t.push(vec![v.tag().into(), n.to_string(), k.to_string(), stirling(v, n, k).to_string()]);
                    }
                }
            }
            t
        }
    };
    Ok(t)
}

fn beta_table(a: &BetaArgs) -> Result<Table> {
    let family = match (a.inverse, a.order) {
        (true, order) => BetaFamily::InverseOrder { index: a.n, order: order.unwrap_or(1), x: a.x },
        (false, Some(k)) => BetaFamily::Order { n: a.n, k, x: a.x },
        (false, None) if a.x == 0 => BetaFamily::Plain { n: a.n },
        (false, None) => BetaFamily::Order { n: a.n, k: 1, x: a.x },
    };
    let value = match family {
        BetaFamily::Plain { n } => beta(n),
        BetaFamily::Order { n, k, x } => beta_order(n, k, x)?,
        BetaFamily::InverseOrder { index, order, x } => beta_inverse_at(index, order, x),
    };
    let label = family.to_string();
    let mut t = Table::new(&["quantity", "q", "value"]);
    t.push(vec![label.clone(), "q".into(), value.to_string()]);
    if a.limit_q1 {
        t.push(vec![label.clone(), "1".into(), fmt_rational(&value.limit_q_to_one()?)]);
    }
    if let Some(q) = &a.eval_q {
        let q0 = parse_rational(q)?;
        t.push(vec![label, fmt_rational(&q0), fmt_rational(&value.eval(&q0)?)]);
    }
    Ok(t)
}

fn read_samples(path: &Path) -> Result<Vec<Rational>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("samples {}: {e}", path.display())))?;
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(parse_rational).collect()
}

fn bernstein_eval(a: &EvalArgs) -> Result<Table> {
    let samples = read_samples(&a.samples)?;
    if let Some(n) = a.n {
        if samples.len() != n as usize + 1 {
            return Err(Error::SequenceTooShort { needed: n as usize + 1, got: samples.len() });
        }
    }
    let (q, x) = (parse_rational(&a.q)?, parse_rational(&a.x)?);
    let u = a.u.as_deref().map(parse_rational).transpose()?;
    let exact_possible = u.is_some() || x == Rational::from_integer(0.into()) || x == Rational::from_integer(1.into());
    let mode = match a.mode {
        EvalMode::Exact => OperatorMode::Exact { u },
        EvalMode::Real => OperatorMode::Real,
        EvalMode::Auto if exact_possible => OperatorMode::Exact { u },
        EvalMode::Auto => OperatorMode::Real,
    };
    let value = operator_eval(&samples, &x, &q, &mode)?;
    let mut t = Table::new(&["n", "q", "x", "mode", "value"]);
    let (mode, shown) = match value {
        OperatorValue::Exact(r) => ("exact", fmt_rational(&r)),
        OperatorValue::Real(v) => ("real", format!("{v:.17e}")),
    };
    t.push(vec![(samples.len() - 1).to_string(), fmt_rational(&q), fmt_rational(&x), mode.into(), shown]);
    Ok(t)
}

fn probe_table(a: &ProbeArgs) -> Result<Table> {
    let seed = QSeed::new(a.p, a.q)?;
    let rows = convergence_probe(a.moment, &seed, a.levels, a.precision)?;
    let mut t = Table::new(&["N", "valuation", "shadow", "sum"]);
    for row in rows {
        let sum = riemann_sum(a.moment, &seed, row.level, a.precision)?;
        let shadow = row.shadow.map_or_else(|| "-".to_string(), |v| v.to_string());
        t.push(vec![row.level.to_string(), row.valuation.to_string(), shadow, sum.to_string()]);
    }
    Ok(t)
}

fn audit(a: &AuditArgs, fmt: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let config = AuditConfig {
        identities: a.identities.clone(),
        n_max: a.n_max,
        range_limit: a.range_limit,
        bindings: a.bindings.clone(),
    };
    let golden = match &a.expect {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("golden {}: {e}", path.display())))?;
            Some(AuditReport::from_json(&text)?)
        }
        None => None,
    };
    let report = run_audit(&config)?;
    let rendered = match fmt {
        Format::Json => report.to_json(),
        other => audit_table(&report).render(other),
    };
    out.write_all(rendered.as_bytes()).map_err(|e| Error::Domain(format!("write: {e}")))?;
    let Some(golden) = golden else { return Ok(EXIT_OK) };
    let drift = report.drift(&golden);
    if drift.is_empty() {
        return Ok(EXIT_OK);
    }
    let _ = writeln!(err, "verdict drift against the golden report ({} differences):", drift.len());
    for (ours, theirs) in drift {
        let show = |v: Option<&Verdict>| {
            v.map_or("absent".to_string(), |v| format!("{} {} {} ({})", v.id, v.binding, v.status, v.note))
        };
        let _ = writeln!(err, "  now: {}\n  was: {}", show(ours), show(theirs));
    }
    Ok(EXIT_DRIFT)
}

fn audit_table(report: &AuditReport) -> Table {
    let mut t = Table::new(&["id", "binding", "status", "params", "lhs", "rhs", "note"]);
    for v in &report.verdicts {
        let (params, lhs, rhs) = match &v.counterexample {
            Some(c) => {
                let p: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                (p.join(" "), c.lhs.clone(), c.rhs.clone())
            }
            None => (String::new(), String::new(), String::new()),
        };
        t.push(vec![v.id.clone(), v.binding.clone(), v.status.tag().into(), params, lhs, rhs, v.note.clone()]);
    }
    let s = &report.summary;
    t.push(vec![
        "summary".into(),
        String::new(),
        format!(
            "HOLDS={} FAILS={} HOLDS_UNDER_CORRECTION={} total={}",
            s.holds, s.fails, s.holds_under_correction, s.total
        ),
    ]);
    t
}
