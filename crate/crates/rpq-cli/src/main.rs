//! `rpq`: exact deformed-combinatorics calculator and identity auditor.
//!
//! Computes single quantities (numbers, factorials, binomials, Stirling and
//! graph Bell numbers), emits triangles and moment summaries, and runs the
//! full identity audit. All arithmetic is exact; output for identical
//! arguments is byte-identical (the optional metadata timestamp is off by
//! default).
//!
//! Exit status: 0 on success, 1 on any validation or usage error, 2 when an
//! audit ran and at least one check failed.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rpq::{
    binomial_moment_vector, deformed_mean_variance, distribution_from_binomial_moments,
    dual_path_graph, factorial_moment_vector, graph_bell, graph_stirling_second, run_audit,
    AuditOptions, AuditSummary, CheckReport, Deformation, DiscreteDistribution, Graph,
    MomentVector, Scalar, StirlingConfig, StirlingKind, StirlingTable,
};

#[derive(Parser)]
#[command(
    name = "rpq",
    version,
    about = "Exact calculator and identity auditor for deformed combinatorics",
    long_about = "Computes deformed numbers, factorials, binomials, Stirling and graph Bell \
                  numbers, triangles, and distribution moments in exact rational arithmetic, \
                  and runs the built-in identity audit. The default deformation is the \
                  one-parameter kind at q = 1/2."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The deformed number [n]
    Number {
        #[command(flatten)]
        deformation: DeformationArgs,
        /// Argument of the number; may be negative
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The deformed factorial [n]!
    Factorial {
        #[command(flatten)]
        deformation: DeformationArgs,
        /// Factorial order; must be nonnegative
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The deformed binomial [n over k]
    Binomial {
        #[command(flatten)]
        deformation: DeformationArgs,
        /// Upper argument; may be negative
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Order; must be nonnegative
        #[arg(long)]
        k: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rows 0..=n of a binomial or Stirling triangle
    Triangle {
        #[command(flatten)]
        deformation: DeformationArgs,
        /// Which triangle to emit
        #[arg(long, value_enum)]
        kind: TriangleKind,
        /// Largest row index
        #[arg(long)]
        n: i64,
        /// Stirling noncentrality (ignored by the binomial triangle)
        #[arg(long, default_value_t = 0)]
        j: i64,
        /// Stirling grading (ignored by the binomial triangle)
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        tau: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// A single Stirling number of either kind
    Stirling {
        #[command(flatten)]
        deformation: DeformationArgs,
        /// Which kind of Stirling number
        #[arg(long, value_enum, default_value_t = StirlingKindArg::Second)]
        kind: StirlingKindArg,
        /// Row index; must be nonnegative
        #[arg(long)]
        n: i64,
        /// Column index
        #[arg(long)]
        k: i64,
        /// Noncentrality
        #[arg(long, default_value_t = 0)]
        j: i64,
        /// Grading
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        tau: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Graph Bell number, or one graph Stirling number when --k is given
    Bell {
        #[command(flatten)]
        deformation: DeformationArgs,
        /// Use the complement of the path on N vertices
        #[arg(long, value_name = "N")]
        dual_path: Option<usize>,
        /// Read the graph from a JSON file {"n": ..., "edges": [[i,k], ...]}
        #[arg(long, value_name = "FILE")]
        graph: Option<PathBuf>,
        /// Block count: emit S(G, k) instead of the Bell number
        #[arg(long)]
        k: Option<i64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Mean, variance, and deformed moment vectors of a finite distribution
    Moments {
        #[command(flatten)]
        deformation: DeformationArgs,
        /// Distribution JSON file {"probs": {"0": "1/2", ...}}
        #[arg(long, value_name = "FILE")]
        dist: PathBuf,
        /// Also recover the mass at this point from the moment vector
        #[arg(long)]
        x: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every identity and table check under one deformation
    Audit {
        #[command(flatten)]
        deformation: DeformationArgs,
        /// Relative tolerance for the series checks (exact rational or decimal)
        #[arg(long, value_name = "DEC", default_value = "1/1000000000")]
        tolerance: String,
        /// Highest summation index for the series checks
        #[arg(long, default_value_t = 64)]
        horizon: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// One parameter: bases (1, q)
    Q,
    /// Two parameters: bases (p, q)
    Pq,
    /// Bases (p, 1/q) with unit p/q
    Quesne,
    /// Explicit bases and unit
    Custom,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TriangleKind {
    Binomial,
    Stirling1,
    Stirling2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StirlingKindArg {
    First,
    Second,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct DeformationArgs {
    /// Deformation family
    #[arg(long, value_enum, default_value_t = KindArg::Q)]
    deformation: KindArg,
    /// Parameter p (kinds pq and quesne)
    #[arg(long, value_name = "RATIONAL")]
    p: Option<String>,
    /// Parameter q
    #[arg(long, value_name = "RATIONAL", default_value = "1/2")]
    q: String,
    /// First base (kind custom); nonzero
    #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
    eps1: Option<String>,
    /// Second base (kind custom); nonzero, |eps2| != |eps1|
    #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
    eps2: Option<String>,
    /// Unit prefactor (kind custom); defaults to 1
    #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
    unit: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output rendering
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Stamp report metadata with the generation time in UNIX seconds
    /// (off by default, keeping identical invocations byte-identical)
    #[arg(long)]
    timestamp: bool,
}

/// Validation failure: message on standard error, exit status 1.
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

/// Parses an exact scalar: `a`, `a/b`, decimals like `0.25`, or scientific
/// notation like `1e-9`, all converted without rounding.
fn parse_scalar(text: &str) -> Result<Scalar, CliError> {
    if let Ok(v) = text.parse::<Scalar>() {
        return Ok(v);
    }
    parse_decimal(text)
        .ok_or_else(|| invalid(format!("'{text}' is not a rational or decimal number")))
}

fn parse_decimal(text: &str) -> Option<Scalar> {
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (text, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let joined: Scalar = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i64;
    Some(Scalar::from_integer(sign) * joined * Scalar::from_integer(10).powi(scale))
}

impl DeformationArgs {
    fn build(&self) -> Result<Deformation, CliError> {
        let q = parse_scalar(&self.q)?;
        let result = match self.deformation {
            KindArg::Q => Deformation::q(q),
            KindArg::Pq => Deformation::pq_js(required(&self.p, "--p", "pq")?, q),
            KindArg::Quesne => Deformation::quesne(required(&self.p, "--p", "quesne")?, q),
            KindArg::Custom => {
                let eps1 = required(&self.eps1, "--eps1", "custom")?;
                let eps2 = required(&self.eps2, "--eps2", "custom")?;
                let unit = match &self.unit {
                    Some(u) => parse_scalar(u)?,
                    None => Scalar::one(),
                };
                Deformation::custom(eps1, eps2, unit)
            }
        };
        result.map_err(|e| invalid(e.to_string()))
    }
}

fn required(field: &Option<String>, flag: &str, kind: &str) -> Result<Scalar, CliError> {
    match field {
        Some(text) => parse_scalar(text),
        None => Err(invalid(format!("{flag} is required for the {kind} kind"))),
    }
}

fn nonnegative(value: i64, what: &str) -> Result<i64, CliError> {
    if value < 0 {
        return Err(invalid(format!("{what} must be nonnegative, got {value}")));
    }
    Ok(value)
}

impl OutputArgs {
    fn write(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| invalid(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn stamp(&self) -> Option<u64> {
        self.timestamp.then(|| {
            SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are successes; everything else is a
            // usage error, reported with status 1 (2 is reserved for audit
            // failures)
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Cmd::Number { deformation, n, output } => {
            emit_value(&deformation.build()?.number(n), &output)?;
        }
        Cmd::Factorial { deformation, n, output } => {
            let d = deformation.build()?;
            let value = d.factorial(n).map_err(|e| invalid(e.to_string()))?;
            emit_value(&value, &output)?;
        }
        Cmd::Binomial { deformation, n, k, output } => {
            let d = deformation.build()?;
            nonnegative(k, "--k")?;
            emit_value(&d.binomial(n, k), &output)?;
        }
        Cmd::Triangle { deformation, kind, n, j, tau, output } => {
            let d = deformation.build()?;
            let n_max = nonnegative(n, "--n")?;
            emit_triangle(&d, kind, n_max, j, tau, &output)?;
        }
        Cmd::Stirling { deformation, kind, n, k, j, tau, output } => {
            let d = deformation.build()?;
            let n = nonnegative(n, "--n")?;
            let table_kind = match kind {
                StirlingKindArg::First => StirlingKind::First,
                StirlingKindArg::Second => StirlingKind::Second,
            };
            let cfg = StirlingConfig::new(d, j, tau);
            let table = StirlingTable::build(table_kind, cfg, n as usize);
            emit_value(&table.entry(n, k), &output)?;
        }
        Cmd::Bell { deformation, dual_path, graph, k, output } => {
            let d = deformation.build()?;
            let g = match (dual_path, graph) {
                (Some(n), None) => {
                    if n == 0 {
                        return Err(invalid("--dual-path needs at least one vertex"));
                    }
                    dual_path_graph(n)
                }
                (None, Some(path)) => read_graph(&path)?,
                _ => return Err(invalid("give exactly one of --dual-path and --graph")),
            };
            let value = match k {
                Some(k) => graph_stirling_second(&d, &g, nonnegative(k, "--k")? as usize),
                None => graph_bell(&d, &g),
            };
            emit_value(&value, &output)?;
        }
        Cmd::Moments { deformation, dist, x, output } => {
            let d = deformation.build()?;
            let distribution = read_distribution(&dist)?;
            emit_moments(&d, &distribution, x, &output)?;
        }
        Cmd::Audit { deformation, tolerance, horizon, output } => {
            let d = deformation.build()?;
            let opts = AuditOptions { tolerance: parse_scalar(&tolerance)?, horizon };
            let reports = run_audit(&d, &opts);
            let summary = AuditSummary::of(&reports);
            emit_audit(&reports, &summary, &output)?;
            if summary.has_failures() {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| invalid(format!("{} is not a valid graph: {e}", path.display())))
}

fn read_distribution(path: &Path) -> Result<DiscreteDistribution, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| invalid(format!("{} is not a valid distribution: {e}", path.display())))
}

fn emit_value(value: &Scalar, output: &OutputArgs) -> Result<(), CliError> {
    let text = match output.format {
        Format::Table => format!("{value}\n"),
        Format::Json => format!("{}\n", serde_json::json!({ "value": value.to_string() })),
        Format::Csv => format!("value\n{value}\n"),
    };
    output.write(&text)
}

fn triangle_rows(
    d: &Deformation,
    kind: TriangleKind,
    n_max: i64,
    j: i64,
    tau: i64,
) -> Vec<Vec<Scalar>> {
    match kind {
        TriangleKind::Binomial => (0..=n_max)
            .map(|n| (0..=n).map(|k| d.binomial(n, k)).collect())
            .collect(),
        TriangleKind::Stirling1 | TriangleKind::Stirling2 => {
            let table_kind = if kind == TriangleKind::Stirling1 {
                StirlingKind::First
            } else {
                StirlingKind::Second
            };
            let cfg = StirlingConfig::new(d.clone(), j, tau);
            let table = StirlingTable::build(table_kind, cfg, n_max as usize);
            (0..=n_max as usize).map(|n| table.row(n).to_vec()).collect()
        }
    }
}

fn triangle_token(kind: TriangleKind) -> &'static str {
    match kind {
        TriangleKind::Binomial => "binomial",
        TriangleKind::Stirling1 => "stirling1",
        TriangleKind::Stirling2 => "stirling2",
    }
}

fn emit_triangle(
    d: &Deformation,
    kind: TriangleKind,
    n_max: i64,
    j: i64,
    tau: i64,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let rows = triangle_rows(d, kind, n_max, j, tau);
    let token = triangle_token(kind);
    let text = match output.format {
        Format::Table | Format::Csv => {
            let sep = if output.format == Format::Table { " " } else { "," };
            let mut lines = vec![metadata_line(token, d, j, tau, output.stamp())];
            for row in &rows {
                let cells: Vec<String> = row.iter().map(Scalar::to_string).collect();
                lines.push(cells.join(sep));
            }
            lines.join("\n") + "\n"
        }
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("triangle".into(), token.into());
            doc.insert("deformation".into(), d.to_string().into());
            doc.insert("j".into(), j.into());
            doc.insert("tau".into(), tau.into());
            if let Some(stamp) = output.stamp() {
                doc.insert("generated_at".into(), stamp.into());
            }
            let rows_json: Vec<Vec<String>> = rows
                .iter()
                .map(|row| row.iter().map(Scalar::to_string).collect())
                .collect();
            doc.insert("rows".into(), serde_json::json!(rows_json));
            format!("{}\n", serde_json::Value::Object(doc))
        }
    };
    output.write(&text)
}

fn metadata_line(token: &str, d: &Deformation, j: i64, tau: i64, stamp: Option<u64>) -> String {
    let mut line = format!("# triangle={token} deformation={d} j={j} tau={tau}");
    if let Some(s) = stamp {
        line.push_str(&format!(" generated_at={s}"));
    }
    line
}

fn emit_moments(
    d: &Deformation,
    dist: &DiscreteDistribution,
    x: Option<u32>,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let (mean, variance) = deformed_mean_variance(d, dist);
    let binomial = binomial_moment_vector(d, dist);
    let factorial = factorial_moment_vector(d, dist);
    let recovered = match x {
        Some(x) => {
            let pmf = distribution_from_binomial_moments(d, &binomial)
                .map_err(|e| invalid(e.to_string()))?;
            Some((x, pmf.prob(x)))
        }
        None => None,
    };
    let text = match output.format {
        Format::Table | Format::Csv => {
            let csv = output.format == Format::Csv;
            let mut lines = Vec::new();
            if csv {
                lines.push("quantity,order,value".to_string());
            }
            let row = |lines: &mut Vec<String>, what: &str, order: String, value: &Scalar| {
                if csv {
                    lines.push(format!("{what},{order},{value}"));
                } else if order.is_empty() {
                    lines.push(format!("{what} {value}"));
                } else {
                    lines.push(format!("{what}[{order}] {value}"));
                }
            };
            row(&mut lines, "mean", String::new(), &mean);
            row(&mut lines, "variance", String::new(), &variance);
            for (r, v) in binomial.values().iter().enumerate() {
                row(&mut lines, "binomial", r.to_string(), v);
            }
            for (r, v) in factorial.values().iter().enumerate() {
                row(&mut lines, "factorial", r.to_string(), v);
            }
            if let Some((x, mass)) = &recovered {
                row(&mut lines, "recovered", x.to_string(), mass);
            }
            lines.join("\n") + "\n"
        }
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("deformation".into(), d.to_string().into());
            if let Some(stamp) = output.stamp() {
                doc.insert("generated_at".into(), stamp.into());
            }
            doc.insert("mean".into(), mean.to_string().into());
            doc.insert("variance".into(), variance.to_string().into());
            doc.insert("binomial".into(), moment_json(&binomial)?);
            doc.insert("factorial".into(), moment_json(&factorial)?);
            if let Some((x, mass)) = &recovered {
                doc.insert(
                    "recovered".into(),
                    serde_json::json!({ "x": x, "mass": mass.to_string() }),
                );
            }
            format!("{}\n", serde_json::Value::Object(doc))
        }
    };
    output.write(&text)
}

fn moment_json(mv: &MomentVector) -> Result<serde_json::Value, CliError> {
    serde_json::to_value(mv).map_err(|e| invalid(format!("cannot serialize moments: {e}")))
}

fn emit_audit(
    reports: &[CheckReport],
    summary: &AuditSummary,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let summary_json = |stamp: Option<u64>| {
        let mut line = format!(
            "{{\"pass\":{},\"fail\":{},\"unit_corrected\":{},\"skipped\":{}",
            summary.pass, summary.fail, summary.unit_corrected, summary.skipped
        );
        if let Some(s) = stamp {
            line.push_str(&format!(",\"generated_at\":{s}"));
        }
        line.push('}');
        line
    };
    let text = match output.format {
        Format::Json => {
            let array = serde_json::to_string_pretty(reports)
                .map_err(|e| invalid(format!("cannot serialize reports: {e}")))?;
            format!("{array}\n{}\n", summary_json(output.stamp()))
        }
        Format::Table => {
            let mut lines = Vec::new();
            for r in reports {
                let mut line = format!(
                    "{:<26} {:<26} ({}) cells={} skipped={}",
                    r.status.to_string(),
                    r.identity,
                    r.paper_eq,
                    r.cells,
                    r.skipped
                );
                if let Some(notes) = &r.notes {
                    line.push_str(&format!("\n  note: {notes}"));
                }
                for o in &r.observations {
                    line.push_str(&format!("\n  observed: {o}"));
                }
                for ce in &r.counterexamples {
                    let params: Vec<String> =
                        ce.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    line.push_str(&format!(
                        "\n  counterexample at {}: {} vs {}",
                        params.join(", "),
                        ce.lhs,
                        ce.rhs
                    ));
                }
                lines.push(line);
            }
            let mut tail = format!(
                "summary pass={} fail={} unit_corrected={} skipped={}",
                summary.pass, summary.fail, summary.unit_corrected, summary.skipped
            );
            if let Some(s) = output.stamp() {
                tail.push_str(&format!(" generated_at={s}"));
            }
            lines.push(tail);
            lines.join("\n") + "\n"
        }
        Format::Csv => {
            let mut lines = vec!["identity,paper_eq,status,cells,skipped".to_string()];
            for r in reports {
                lines.push(format!(
                    "{},{},{},{},{}",
                    r.identity, r.paper_eq, r.status, r.cells, r.skipped
                ));
            }
            lines.push(format!("# {}", summary_json(output.stamp())));
            lines.join("\n") + "\n"
        }
    };
    output.write(&text)
}
