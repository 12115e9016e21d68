//! Argument parsing and command execution for the `quandlekit` binary.
//!
//! `run` never touches the process streams: it returns the exit status and
//! the text for stdout and stderr, so tests can drive it in-process.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use quandlekit::json::{self, ClassificationReportJson, QuandleJson, QuandleRepJson, TableRowJson};
use quandlekit::quandle_rep::SYMMETRIC_CENTER_ASSUMPTION;
use quandlekit::{
    classify_conj_group, classify_via_inn, cocycle_of_projective, conj_quandle, decompose_irreps,
    induced_projective, is_coboundary_over_cx, reproduce_table, second_cohomology,
    survey_conj_group, ClassificationReport, Error, Family, FamilySpec, FiniteGroup, FiniteQuandle,
    Tolerances,
};
use serde_json::{json, Value};

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "QUANDLEKIT_SEED";

pub const VERBS: [&str; 7] = [
    "check",
    "info",
    "h2",
    "irreps",
    "classify",
    "cocycle-class",
    "table",
];

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Verb {
    /// Validate a quandle table and report the first failing axiom.
    Check { source: String },
    /// Size, orbits and the order of the inner automorphism group.
    Info { source: String },
    /// Second cohomology of a group with coefficients in C^x (and mu_m).
    H2 {
        source: String,
        /// Modulus m for the mu_m coefficients; defaults to the group order.
        #[arg(long)]
        modulus: Option<i64>,
    },
    /// Dimensions of the complex irreducible representations of a group.
    Irreps { source: String },
    /// Classify irreducible quandle representations.
    Classify {
        source: String,
        /// Treat the source as a group G and classify Conj(G).
        #[arg(long)]
        conj: bool,
        /// Survey Conj(G) without a completeness theorem; M_Q is a lower bound.
        #[arg(long)]
        lower_bound: bool,
    },
    /// Induced cohomology class of a quandle representation file.
    CocycleClass { source: String },
    /// Inner groups, multipliers and M_Q for the dihedral and quaternion rows.
    Table {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        n: Vec<usize>,
    },
}

#[derive(Debug, Parser)]
#[command(
    name = "quandlekit",
    version,
    about = "Finite quandles and their irreducible representations"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Seed for the randomized decompositions (default: $QUANDLEKIT_SEED or 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    tol_rep: Option<f64>,
    #[arg(long, global = true)]
    tol_rank: Option<f64>,
    #[arg(long, global = true)]
    tol_char: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// A parsed invocation with the seed and tolerances already resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub verb: Verb,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub format: Format,
}

/// What `run` produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(status: i32, stderr: String) -> Self {
        Self {
            status,
            stdout: String::new(),
            stderr,
        }
    }
}

/// A parse failure that still knows how it should be shown (help and
/// version requests land here with status 0).
#[derive(Debug)]
pub struct UsageError {
    pub status: i32,
    pub message: String,
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for UsageError {}

fn usage(message: impl Into<String>) -> UsageError {
    UsageError {
        status: EXIT_USAGE,
        message: message.into(),
    }
}

/// Parses `argv` (without the program name) using `env_seed` as the value
/// of `QUANDLEKIT_SEED`.
pub fn parse_with_env<I, S>(argv: I, env_seed: Option<&str>) -> Result<Command, UsageError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("quandlekit"))
        .chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args).map_err(|e| {
        let mut message = e.render().to_string();
        if e.exit_code() == EXIT_USAGE {
            message += &format!("valid verbs: {}\n", VERBS.join(", "));
        }
        UsageError {
            status: e.exit_code(),
            message,
        }
    })?;
    let seed = match (cli.seed, env_seed) {
        (Some(s), _) => s,
        (None, Some(text)) => text.trim().parse().map_err(|_| {
            usage(format!(
                "error: {SEED_ENV}=`{text}` is not an unsigned integer\n"
            ))
        })?,
        (None, None) => 0,
    };
    let mut tolerances = Tolerances::default();
    for (name, value, slot) in [
        ("--tol-rep", cli.tol_rep, &mut tolerances.rep),
        ("--tol-rank", cli.tol_rank, &mut tolerances.rank),
        ("--tol-char", cli.tol_char, &mut tolerances.character),
    ] {
        if let Some(v) = value {
            if !(v.is_finite() && v > 0.0) {
                return Err(usage(format!("error: {name} must be a positive number\n")));
            }
            *slot = v;
        }
    }
    Ok(Command {
        verb: cli.verb,
        seed,
        tolerances,
        format: cli.format,
    })
}

/// Parses `argv` reading the seed override from the environment.
pub fn parse<I, S>(argv: I) -> Result<Command, UsageError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let env = std::env::var(SEED_ENV).ok();
    parse_with_env(argv, env.as_deref())
}

/// Input problems are usage errors; everything the mathematics rejects is
/// a validation failure.
fn status_of(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Shape(_) | Error::UnknownFamily(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

struct Failure {
    status: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            status: status_of(&e),
            message: e.to_string(),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

enum Source {
    Family(FamilySpec),
    File {
        path: String,
        text: String,
        value: Value,
    },
}

fn load_source(source: &str) -> Run<Source> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure {
            status: EXIT_USAGE,
            message: format!("cannot read `{source}`: {e}"),
        })?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Failure {
            status: EXIT_USAGE,
            message: format!(
                "malformed JSON in `{source}` at line {}, column {}: {e}",
                e.line(),
                e.column()
            ),
        })?;
        return Ok(Source::File {
            path: source.to_string(),
            text,
            value,
        });
    }
    source
        .parse::<FamilySpec>()
        .map(Source::Family)
        .map_err(|e| Failure {
            status: EXIT_USAGE,
            message: format!("`{source}` is neither a readable file nor a family spec ({e})"),
        })
}

fn in_file(path: &str, e: Error) -> Failure {
    let status = status_of(&e);
    Failure {
        status,
        message: format!("{path}: {e}"),
    }
}

fn is_group_json(value: &Value) -> bool {
    value.get("mul").is_some()
}

fn load_group(source: &str) -> Run<(FiniteGroup, Option<FamilySpec>)> {
    match load_source(source)? {
        Source::Family(spec) => Ok((spec.build()?, Some(spec))),
        Source::File { path, text, value } => {
            if !is_group_json(&value) {
                return Err(Failure {
                    status: EXIT_USAGE,
                    message: format!("{path}: expected a group file with a `mul` table"),
                });
            }
            let g = json::group_from_json(&text).map_err(|e| in_file(&path, e))?;
            Ok((g, None))
        }
    }
}

/// Quandle verbs read a quandle file, a group file or a family spec; the
/// last two stand for `Conj(G)`.
fn load_quandle(source: &str) -> Run<FiniteQuandle> {
    match load_source(source)? {
        Source::Family(spec) => Ok(conj_quandle(&spec.build()?)),
        Source::File { path, text, value } => {
            if is_group_json(&value) {
                let g = json::group_from_json(&text).map_err(|e| in_file(&path, e))?;
                Ok(conj_quandle(&g))
            } else {
                json::quandle_from_json(&text).map_err(|e| in_file(&path, e))
            }
        }
    }
}

fn header(seed: u64) -> String {
    format!("# quandlekit seed {seed}\n")
}

fn with_seed(seed: u64, mut value: Value) -> Value {
    if let Value::Object(map) = &mut value {
        map.insert("seed".into(), json!(seed));
    }
    value
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn factors(f: &[i64]) -> String {
    if f.is_empty() {
        "trivial".into()
    } else {
        f.iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn check(cmd: &Command, source: &str) -> Run<Outcome> {
    let table = match load_source(source)? {
        Source::Family(spec) => QuandleJson::from_quandle(&conj_quandle(&spec.build()?)),
        Source::File { path, text, value } => {
            if is_group_json(&value) {
                QuandleJson::from_quandle(&conj_quandle(
                    &json::group_from_json(&text).map_err(|e| in_file(&path, e))?,
                ))
            } else {
                json::parse_quandle_json(&text).map_err(|e| in_file(&path, e))?
            }
        }
    };
    let (status, value, text) = match table.build() {
        Ok(q) => (
            EXIT_OK,
            json!({ "valid": true, "size": q.size() }),
            format!("valid quandle of size {}\n", q.size()),
        ),
        Err(Error::QuandleAxiom { axiom, witness }) => {
            let (x, y, z) = witness;
            let name = serde_json::to_value(axiom).expect("axiom names serialize");
            let detail = match axiom {
                quandlekit::error::QuandleAxiom::Idempotence => {
                    format!("x={x}: x > x = {}", table.table[x][x])
                }
                quandlekit::error::QuandleAxiom::Distributivity => {
                    format!("x={x}, y={y}, z={z}: x > (y > z) != (x > y) > (x > z)")
                }
                quandlekit::error::QuandleAxiom::NonBijectiveRow => {
                    format!("x={x}, y={y}, z={z}: x > y = x > z = {}", table.table[x][y])
                }
            };
            (
                EXIT_FAILURE,
                json!({ "valid": false, "axiom": name, "witness": [x, y, z] }),
                format!(
                    "invalid quandle: {} fails at {detail}\n",
                    name.as_str().unwrap_or_default()
                ),
            )
        }
        Err(e) => return Err(e.into()),
    };
    let stdout = match cmd.format {
        Format::Json => pretty(&with_seed(cmd.seed, value)),
        Format::Text => header(cmd.seed) + &text,
    };
    Ok(Outcome {
        status,
        stdout,
        stderr: String::new(),
    })
}

fn info(cmd: &Command, source: &str) -> Run<Outcome> {
    let q = load_quandle(source)?;
    let orbits = q.orbits();
    let inner = q.inner_group()?;
    Ok(Outcome::ok(match cmd.format {
        Format::Json => pretty(&with_seed(
            cmd.seed,
            json!({ "size": q.size(), "orbits": orbits.blocks, "inn_order": inner.group.order() }),
        )),
        Format::Text => {
            let mut out = header(cmd.seed);
            out += &format!("size: {}\n", q.size());
            out += &format!("orbits: {}\n", orbits.len());
            for block in &orbits.blocks {
                out += &format!(
                    "  {{{}}}\n",
                    block
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            out += &format!("|Inn(Q)|: {}\n", inner.group.order());
            out
        }
    }))
}

fn h2(cmd: &Command, source: &str, modulus: Option<i64>) -> Run<Outcome> {
    let (g, _) = load_group(source)?;
    let h = second_cohomology(&g, modulus)?;
    let report = h.report();
    Ok(Outcome::ok(match cmd.format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("reports serialize");
            v["order"] = json!(g.order());
            pretty(&with_seed(cmd.seed, v))
        }
        Format::Text => {
            let mut out = header(cmd.seed);
            out += &format!("group order: {}\n", g.order());
            out += &format!("H2(G, C^x): {}\n", factors(h.invariant_factors_cx()));
            out += &format!(
                "H2(G, mu_{}): {}\n",
                h.modulus(),
                factors(h.invariant_factors_mu_m())
            );
            out
        }
    }))
}

fn irreps(cmd: &Command, source: &str) -> Run<Outcome> {
    let (g, _) = load_group(source)?;
    let reps = decompose_irreps(&g, cmd.seed, &cmd.tolerances)?;
    let dims: Vec<usize> = reps.iter().map(|r| r.dim()).collect();
    Ok(Outcome::ok(match cmd.format {
        Format::Json => pretty(&with_seed(
            cmd.seed,
            json!({ "order": g.order(), "dimensions": dims }),
        )),
        Format::Text => {
            let mut out = header(cmd.seed);
            out += &format!("group order: {}\n", g.order());
            out += &format!("irreducibles: {}\n", dims.len());
            out += &format!("dimensions: {}\n", joined(&dims));
            out
        }
    }))
}

fn report_text(seed: u64, r: &ClassificationReport) -> String {
    let j = ClassificationReportJson::from_report(r);
    let mut out = header(seed);
    out += &format!("quandle size: {}\n", r.quandle.size());
    out += &format!("mode: {}\n", j.mode);
    if let Some(t) = &r.completeness_theorem {
        out += &format!("theorem: {t}\n");
    }
    for a in &r.assumptions {
        out += &format!("assumption: {a}\n");
    }
    out += &format!("|Inn(Q)|: {}\n", r.inn_order);
    out += &format!("H2(Inn(Q), C^x): {}\n", factors(&r.h2_inn));
    let dims: Vec<usize> = r.base_reps.iter().map(|b| b.dim()).collect();
    out += &format!(
        "base representations: {} (dimensions {})\n",
        dims.len(),
        joined(&dims)
    );
    out += &format!("character rank: {}\n", r.character_rank);
    let classes: Vec<String> = r
        .realized_classes
        .iter()
        .map(|c| format!("{c:?}"))
        .collect();
    out += &format!("realized classes: {}\n", classes.join(" "));
    let bound = if r.m_q_is_lower_bound {
        " (lower bound)"
    } else {
        ""
    };
    out += &format!(
        "M_Q: {} of order {}{bound}\n",
        factors(&r.m_q_invariant_factors),
        r.m_q_order
    );
    out
}

fn classify(cmd: &Command, source: &str, conj: bool, lower_bound: bool) -> Run<Outcome> {
    let report = if conj || lower_bound {
        let (g, spec) = load_group(source)?;
        if lower_bound {
            let assumptions = match spec {
                Some(s) if s.family == Family::Symmetric => {
                    vec![SYMMETRIC_CENTER_ASSUMPTION.to_string()]
                }
                _ => vec![],
            };
            survey_conj_group(&g, assumptions, cmd.seed, &cmd.tolerances)?
        } else {
            classify_conj_group(&g, cmd.seed, &cmd.tolerances)?
        }
    } else {
        classify_via_inn(&load_quandle(source)?, cmd.seed, &cmd.tolerances)?
    };
    Ok(Outcome::ok(match cmd.format {
        Format::Json => json::report_to_json(&report) + "\n",
        Format::Text => report_text(cmd.seed, &report),
    }))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cocycle_class(cmd: &Command, source: &str) -> Run<Outcome> {
    let Source::File { path, text, .. } = load_source(source)? else {
        return Err(Failure {
            status: EXIT_USAGE,
            message: "cocycle-class needs a quandle representation file".into(),
        });
    };
    let parsed: QuandleRepJson = serde_json::from_str(&text).map_err(|e| Failure {
        status: EXIT_USAGE,
        message: format!("{path}: line {}, column {}: {e}", e.line(), e.column()),
    })?;
    let rho = parsed
        .build(&cmd.tolerances)
        .map_err(|e| in_file(&path, e))?;
    let inner = rho.quandle().inner_group()?;
    let p = induced_projective(&rho, &inner, cmd.seed, &cmd.tolerances)?;
    let a = cocycle_of_projective(&p, &cmd.tolerances)?;
    let n = inner.group.order() as i64;
    let d = rho.dim() as i64;
    let modulus = n / gcd(n, d) * d;
    let h = second_cohomology(&inner.group, Some(modulus))?;
    let coords = h.class_coordinates_cx(&a.embed(modulus)?)?;
    let trivial = is_coboundary_over_cx(&a)?.is_coboundary;
    Ok(Outcome::ok(match cmd.format {
        Format::Json => pretty(&with_seed(
            cmd.seed,
            json!({
                "dim": rho.dim(),
                "inn_order": inner.group.order(),
                "h2_inn_Cx": h.invariant_factors_cx(),
                "class_coordinates": coords,
                "trivial_over_Cx": trivial,
            }),
        )),
        Format::Text => {
            let mut out = header(cmd.seed);
            out += &format!("dimension: {}\n", rho.dim());
            out += &format!("|Inn(Q)|: {}\n", inner.group.order());
            out += &format!("H2(Inn(Q), C^x): {}\n", factors(h.invariant_factors_cx()));
            out += &format!("class coordinates: {coords:?}\n");
            out += &format!("trivial over C^x: {}\n", if trivial { "yes" } else { "no" });
            out
        }
    }))
}

fn table(cmd: &Command, ns: &[usize]) -> Run<Outcome> {
    let rows = reproduce_table(ns, cmd.seed, &cmd.tolerances)?;
    Ok(Outcome::ok(match cmd.format {
        Format::Json => {
            let rows: Vec<TableRowJson> = rows.iter().map(TableRowJson::from_row).collect();
            pretty(&json!({ "seed": cmd.seed, "rows": rows }))
        }
        Format::Text => {
            let cells: Vec<[String; 6]> = std::iter::once([
                "Q".to_string(),
                "Inn(Q)".into(),
                "H2(Inn(Q),C^x)".into(),
                "M_Q".into(),
                "Tor(Z(G_Q))".into(),
                "mode".into(),
            ])
            .chain(rows.iter().map(|r| {
                [
                    r.quandle.clone(),
                    r.inn.clone(),
                    r.h2_string(),
                    r.m_q_string(),
                    r.tor_string(),
                    json::mode_name(r.mode),
                ]
            }))
            .collect();
            let widths: Vec<usize> = (0..6)
                .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
                .collect();
            let mut out = header(cmd.seed);
            for row in &cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}"))
                    .collect();
                out += line.join("  ").trim_end();
                out.push('\n');
            }
            out
        }
    }))
}

/// Executes a parsed command.
pub fn run(cmd: &Command) -> Outcome {
    let result = match &cmd.verb {
        Verb::Check { source } => check(cmd, source),
        Verb::Info { source } => info(cmd, source),
        Verb::H2 { source, modulus } => h2(cmd, source, *modulus),
        Verb::Irreps { source } => irreps(cmd, source),
        Verb::Classify {
            source,
            conj,
            lower_bound,
        } => classify(cmd, source, *conj, *lower_bound),
        Verb::CocycleClass { source } => cocycle_class(cmd, source),
        Verb::Table { n } => table(cmd, n),
    };
    result.unwrap_or_else(|f| Outcome::fail(f.status, format!("error: {}\n", f.message)))
}

/// Parses and runs `argv`, as the binary does.
pub fn main_with_args<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match parse(argv) {
        Ok(cmd) => run(&cmd),
        Err(e) if e.status == EXIT_OK => Outcome::ok(e.message),
        Err(e) => Outcome::fail(e.status, e.message),
    }
}
