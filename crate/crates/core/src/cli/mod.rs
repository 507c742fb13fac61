//! Command-line front end.
//!
//! Exit codes: 0 for a true verdict or success, 1 for a false verdict, 2 for
//! usage or input errors.

pub mod format;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::Field;
use crate::channel::{simulate, ChannelInstance, SimulationConfig, SimulationMode};
use crate::code::SubspaceCode;
use crate::construct::{
    lift_family, plotkin_lcp_pair, plotkin_tilde_pair, s_lambda_dual_lcp, s_lambda_lcd, s_lambda_lcp, spread_field,
    spread_matrix, spread_partition, verify_spread, Spread,
};
use crate::error::Error;
use crate::lcp::{check_lcp_with, dual_equivalence_check, CheckOptions, Criterion};
use crate::subspace::{format_vector, DEFAULT_ENUM_CAP};

pub use format::{Block, CodeFile, FieldHeader};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("undefined name `{name}`{}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    UndefinedName { name: String, line: Option<usize> },
    #[error("line {line}: expected {expected} entries, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: bad field header: {msg}")]
    BadFieldHeader { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "lcpsub", about = "Linear complementary pairs of subspace codes", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub output: OutputFormat,
    /// Upper bound on the number of vectors any enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP, global = true)]
    pub cap: u64,
    /// Append wall-clock timing to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Pairwise,
    Distance,
    RightInv,
    Stacked,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructMethod {
    Plotkin,
    PlotkinTilde,
    SLambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Hook {
    /// Product of two input LCPs.
    Lcp,
    /// `S_λ(C, D^⊥)` against its dual; needs `λ² = -1`.
    Dual,
    /// `S_λ(C1, C2)` over an LCD family against its dual; needs `λ² = 1`.
    Lcd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpreadMethod {
    Field,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether two families form an LCP.
    LcpCheck {
        file: PathBuf,
        #[arg(long, default_value = "C")]
        c: String,
        #[arg(long, default_value = "D")]
        d: String,
        #[arg(long, value_enum, default_value = "all")]
        criterion: CriterionArg,
        /// Report every violating pair instead of the first.
        #[arg(long)]
        full_scan: bool,
    },
    /// Subspace distance between two named subspaces.
    Distance { file: PathBuf, a: String, b: String },
    /// Build product families and check the resulting pair.
    Construct {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: ConstructMethod,
        #[arg(long, default_value = "C")]
        c: String,
        #[arg(long, default_value = "D")]
        d: String,
        /// Second input pair; defaults to the first.
        #[arg(long)]
        c2: Option<String>,
        #[arg(long)]
        d2: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value = "lcp")]
        hook: Hook,
        /// Write the constructed families as a code file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Generate and verify a spread, optionally splitting it into an LCP.
    Spread {
        #[arg(long, value_enum)]
        method: SpreadMethod,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
        /// Code file with the matrix blocks (matrix method).
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        partition: Option<usize>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Lift families to matrix codes and compare LCP verdicts.
    Lift {
        file: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "C")]
        c: String,
        #[arg(long, default_value = "D")]
        d: String,
    },
    /// Run the insertion-error channel over many transmissions.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value = "C")]
        c: String,
        #[arg(long, default_value = "D")]
        d: String,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
        /// Accept pairs whose union is not a spread.
        #[arg(long)]
        unchecked: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::LcpCheck { .. } => "lcp-check",
            Command::Distance { .. } => "distance",
            Command::Construct { .. } => "construct",
            Command::Spread { .. } => "spread",
            Command::Lift { .. } => "lift",
            Command::Simulate { .. } => "simulate",
        }
    }
}

/// Ordered key/value report with a rendering for humans and one for machines.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub entries: Vec<(String, Value)>,
    pub verdict: bool,
}

impl Report {
    fn new(command: &str) -> Report {
        Report { command: command.to_string(), entries: Vec::new(), verdict: true }
    }

    fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("command: {}\n", self.command);
        for (k, v) in &self.entries {
            let rendered = match v {
                Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {rendered}\n"));
        }
        s.push_str(&format!("verdict: {}\n", self.verdict));
        s
    }

    pub fn to_json(&self) -> String {
        let mut report = Map::new();
        for (k, v) in &self.entries {
            report.insert(k.clone(), v.clone());
        }
        let doc = json!({ "command": self.command, "report": report, "verdict": self.verdict });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict {
            0
        } else {
            1
        }
    }
}

/// `e1+2e3`-style rendering of a vector.
pub fn format_unit_combination(field: &Field, v: &[u32]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { format!("e{}", i + 1) } else { format!("{}e{}", field.format(x), i + 1) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn dims(c: &SubspaceCode) -> Value {
    Value::from(c.members().iter().map(|u| u.dim()).collect::<Vec<_>>())
}

fn lcp_entries(rep: &mut Report, prefix: &str, c: &SubspaceCode, d: &SubspaceCode) -> Result<bool, CliError> {
    let r = check_lcp_with(c, d, Criterion::Pairwise, CheckOptions::default())?;
    rep.put(&format!("{prefix}lcp"), r.verdict);
    if let Some(v) = &r.violating_pair {
        rep.put(&format!("{prefix}violating_pair"), format!("({}, {})", v.c_index + 1, v.d_index + 1));
        rep.put(&format!("{prefix}witness"), format_vector(c.field(), &v.witness));
        rep.put(&format!("{prefix}witness_basis"), format_unit_combination(c.field(), &v.witness));
    }
    Ok(r.verdict)
}

fn parse_lambda(field: &Field, s: &str) -> Result<u32, CliError> {
    format::parse_element(field, 0, s).map_err(|_| CliError::Usage(format!("bad --lambda `{s}`")))
}

fn prime_power(q: u32) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("q={q} is not a prime power"));
    if q < 2 {
        return Err(bad());
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2 has a divisor");
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(bad());
    }
    Ok((p, m))
}

fn write_code_file(path: &PathBuf, cf: &CodeFile) -> Result<(), CliError> {
    std::fs::write(path, cf.render()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cmd_lcp_check(
    cf: &CodeFile,
    c_name: &str,
    d_name: &str,
    which: CriterionArg,
    full_scan: bool,
) -> Result<Report, CliError> {
    let c = cf.family(c_name)?;
    let d = cf.family(d_name)?;
    let mut rep = Report::new("lcp-check");
    rep.put("q", cf.field.q());
    rep.put("n", cf.ambient);
    rep.put("c_members", c.len());
    rep.put("d_members", d.len());
    let criteria: Vec<Criterion> = match which {
        CriterionArg::All => Criterion::ALL.to_vec(),
        CriterionArg::Pairwise => vec![Criterion::Pairwise],
        CriterionArg::Distance => vec![Criterion::Distance],
        CriterionArg::RightInv => vec![Criterion::RightInv],
        CriterionArg::Stacked => vec![Criterion::Stacked],
    };
    let mut verdicts = Vec::new();
    let mut first_violation = None;
    let mut warnings = Vec::new();
    let mut profile_ok = None;
    for crit in criteria {
        match check_lcp_with(&c, &d, crit, CheckOptions { full_scan }) {
            Ok(r) => {
                rep.put(&format!("verdict.{}", crit.name()), r.verdict);
                if full_scan && !r.all_violations.is_empty() {
                    let all: Vec<String> =
                        r.all_violations.iter().map(|v| format!("({}, {})", v.c_index + 1, v.d_index + 1)).collect();
                    rep.put(&format!("violations.{}", crit.name()), all.join(" "));
                }
                verdicts.push(r.verdict);
                profile_ok.get_or_insert(r.profile_ok);
                if first_violation.is_none() {
                    first_violation = r.violating_pair;
                }
                for w in r.warnings {
                    if !warnings.contains(&w) {
                        warnings.push(w);
                    }
                }
            }
            Err(Error::StackedNotSquare { .. }) if which == CriterionArg::All => {
                rep.put("verdict.stacked", "not applicable");
            }
            Err(e) => return Err(e.into()),
        }
    }
    let agree = verdicts.windows(2).all(|w| w[0] == w[1]);
    rep.put("criteria_agree", agree);
    if let Some(p) = profile_ok {
        rep.put("profile_ok", p);
    }
    if let Some(v) = first_violation {
        rep.put("violating_pair", format!("({}, {})", v.c_index + 1, v.d_index + 1));
        rep.put("witness", format_vector(&cf.field, &v.witness));
        rep.put("witness_basis", format_unit_combination(&cf.field, &v.witness));
    }
    let dual = dual_equivalence_check(&c, &d)?;
    match dual.equivalent {
        Some(eq) => rep.put("dual_equivalent", eq),
        None => rep.put("dual_equivalent", "not applicable"),
    }
    if !warnings.is_empty() {
        rep.put("warnings", warnings.join("; "));
    }
    rep.verdict = agree && verdicts.iter().all(|&v| v);
    Ok(rep)
}

fn cmd_distance(cf: &CodeFile, a: &str, b: &str) -> Result<Report, CliError> {
    let u = cf.subspace(a)?;
    let v = cf.subspace(b)?;
    let mut rep = Report::new("distance");
    rep.put("a", u.to_string());
    rep.put("b", v.to_string());
    rep.put("dim_a", u.dim());
    rep.put("dim_b", v.dim());
    rep.put("dim_sum", u.sum(&v)?.dim());
    rep.put("dim_intersection", u.intersect(&v)?.dim());
    rep.put("distance", u.distance(&v)?);
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    cf: &CodeFile,
    method: ConstructMethod,
    c: &str,
    d: &str,
    c2: Option<&str>,
    d2: Option<&str>,
    lambda: Option<&str>,
    hook: Hook,
    emit: Option<&PathBuf>,
) -> Result<Report, CliError> {
    let c1 = cf.family(c)?;
    // the LCD hook takes a single family
    let d1 = if (method, hook) == (ConstructMethod::SLambda, Hook::Lcd) { c1.clone() } else { cf.family(d)? };
    let c2 = c2.map(|n| cf.family(n)).transpose()?.unwrap_or_else(|| c1.clone());
    let d2 = d2.map(|n| cf.family(n)).transpose()?.unwrap_or_else(|| d1.clone());
    let mut rep = Report::new("construct");
    let (first, second) = match method {
        ConstructMethod::Plotkin => {
            rep.put("method", "plotkin");
            plotkin_lcp_pair(&c1, &d1, &c2, &d2)?
        }
        ConstructMethod::PlotkinTilde => {
            rep.put("method", "plotkin-tilde");
            plotkin_tilde_pair(&c1, &d1)?
        }
        ConstructMethod::SLambda => {
            let lam =
                parse_lambda(&cf.field, lambda.ok_or_else(|| CliError::Usage("s-lambda needs --lambda".into()))?)?;
            rep.put("method", "s-lambda");
            rep.put("lambda", cf.field.format(lam));
            let out = match hook {
                Hook::Lcp => {
                    rep.put("hook", "lcp");
                    s_lambda_lcp(&c1, &d1, &c2, &d2, lam)?
                }
                Hook::Dual => {
                    rep.put("hook", "dual");
                    s_lambda_dual_lcp(&c1, &d1, lam)?
                }
                Hook::Lcd => {
                    rep.put("hook", "lcd");
                    s_lambda_lcd(&c1, lam)?
                }
            };
            rep.put("memberwise", out.memberwise);
            (out.first, out.second)
        }
    };
    rep.put("n", first.ambient());
    rep.put("first_members", first.len());
    rep.put("second_members", second.len());
    rep.put("first_dims", dims(&first));
    rep.put("second_dims", dims(&second));
    let verdict = lcp_entries(&mut rep, "", &first, &second)?;
    rep.verdict = match (method, hook) {
        (ConstructMethod::SLambda, Hook::Dual | Hook::Lcd) => {
            matches!(rep.get("memberwise"), Some(Value::Bool(true)))
        }
        _ => verdict,
    };
    if let Some(path) = emit {
        let mut out = CodeFile::new(&cf.field, first.ambient());
        out.push_code("C", "A", &first);
        out.push_code("D", "B", &second);
        write_code_file(path, &out)?;
        rep.put("emitted", path.display().to_string());
    }
    Ok(rep)
}

fn cmd_spread(
    method: SpreadMethod,
    q: Option<u32>,
    k: Option<usize>,
    file: Option<&PathBuf>,
    partition: Option<usize>,
    emit: Option<&PathBuf>,
    cap: u64,
) -> Result<Report, CliError> {
    let mut rep = Report::new("spread");
    let spread: Spread = match method {
        SpreadMethod::Field => {
            let q = q.ok_or_else(|| CliError::Usage("field method needs --q".into()))?;
            let k = k.ok_or_else(|| CliError::Usage("field method needs --k".into()))?;
            let (p, m) = prime_power(q)?;
            rep.put("method", "field");
            spread_field(&Field::new(p, m)?, k)?
        }
        SpreadMethod::Matrix => {
            let path = file.ok_or_else(|| CliError::Usage("matrix method needs --file".into()))?;
            let cf = CodeFile::load(path)?;
            rep.put("method", "matrix");
            spread_matrix(&cf.matrices()?)?
        }
    };
    let field = spread.code().field().clone();
    rep.put("q", field.q());
    rep.put("n", spread.ambient());
    rep.put("k", spread.k());
    rep.put("members", spread.len());
    let verdict = verify_spread(spread.code(), cap)?;
    rep.put("valid", verdict.valid);
    if let Some(f) = verdict.failure {
        rep.put("failure", serde_json::to_value(f).expect("enum serializes"));
    }
    rep.verdict = verdict.valid;
    let mut out = CodeFile::new(&field, spread.ambient());
    out.push_code("S", "U", spread.code());
    if let Some(s) = partition {
        let (c, d) = spread_partition(&spread, s)?;
        rep.put("partition", s);
        rep.put("c_members", c.len());
        rep.put("d_members", d.len());
        rep.verdict &= lcp_entries(&mut rep, "partition_", &c, &d)?;
        out.push_family("C", (1..=s).map(|i| format!("U{i}")).collect());
        out.push_family("D", (s + 1..=spread.len()).map(|i| format!("U{i}")).collect());
    }
    if let Some(path) = emit {
        write_code_file(path, &out)?;
        rep.put("emitted", path.display().to_string());
    }
    Ok(rep)
}

fn cmd_lift(cf: &CodeFile, m: usize, c: &str, d: &str) -> Result<Report, CliError> {
    let c = cf.family(c)?;
    let d = cf.family(d)?;
    let lc = lift_family(&c, m)?;
    let ld = lift_family(&d, m)?;
    let mut rep = Report::new("lift");
    rep.put("m", m);
    rep.put("n", cf.ambient);
    rep.put("lifted_n", lc.ambient());
    rep.put("c_dims", dims(&c));
    rep.put("lifted_c_dims", dims(&lc));
    rep.put("d_dims", dims(&d));
    rep.put("lifted_d_dims", dims(&ld));
    let before = lcp_entries(&mut rep, "original_", &c, &d)?;
    let after = lcp_entries(&mut rep, "lifted_", &lc, &ld)?;
    rep.put("transfer_agrees", before == after);
    rep.verdict = after;
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    cf: &CodeFile,
    c: &str,
    d: &str,
    mode: ModeArg,
    trials: u64,
    seed: u64,
    parallel: bool,
    unchecked: bool,
    cap: u64,
) -> Result<Report, CliError> {
    let c = cf.family(c)?;
    let d = cf.family(d)?;
    let inst = if unchecked { ChannelInstance::new_unchecked(c, d)? } else { ChannelInstance::new(c, d, cap)? };
    let mode = match mode {
        ModeArg::Exhaustive => SimulationMode::Exhaustive,
        ModeArg::Random => SimulationMode::Random,
    };
    let sim = simulate(&inst, &SimulationConfig { mode, trials, seed, cap, parallel })?;
    let mut rep = Report::new("simulate");
    rep.put("validated", inst.is_validated());
    if let Value::Object(map) = serde_json::to_value(&sim).expect("report serializes") {
        for (k, v) in map {
            rep.put(&k, v);
        }
    }
    rep.verdict = sim.correct_recoveries == sim.trials;
    Ok(rep)
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let cap = cli.cap;
    let load = |p: &PathBuf| CodeFile::load(p);
    match &cli.command {
        Command::LcpCheck { file, c, d, criterion, full_scan } => {
            cmd_lcp_check(&load(file)?, c, d, *criterion, *full_scan)
        }
        Command::Distance { file, a, b } => cmd_distance(&load(file)?, a, b),
        Command::Construct { file, method, c, d, c2, d2, lambda, hook, emit } => cmd_construct(
            &load(file)?,
            *method,
            c,
            d,
            c2.as_deref(),
            d2.as_deref(),
            lambda.as_deref(),
            *hook,
            emit.as_ref(),
        ),
        Command::Spread { method, q, k, file, partition, emit } => {
            cmd_spread(*method, *q, *k, file.as_ref(), *partition, emit.as_ref(), cap)
        }
        Command::Lift { file, m, c, d } => cmd_lift(&load(file)?, *m, c, d),
        Command::Simulate { file, c, d, mode, trials, seed, parallel, unchecked } => {
            cmd_simulate(&load(file)?, c, d, *mode, *trials, *seed, *parallel, *unchecked, cap)
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut rep) => {
            if cli.timing {
                rep.put("elapsed_ms", format!("{:.3}", start.elapsed().as_secs_f64() * 1e3));
            }
            let text = match cli.output {
                OutputFormat::Text => rep.to_text(),
                OutputFormat::Structured => rep.to_json(),
            };
            let _ = out.write_all(text.as_bytes());
            rep.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
