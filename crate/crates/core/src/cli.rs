//! Command-line front end. Exit codes: 0 success, 1 an identity failed,
//! 2 usage, parse or guard errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::characters::{character_table_with, degree};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::identities::{
    verify, IdentityId, IdentityReport, SuitePlan, TensorGrid, VerifyOptions, DEFAULT_SEED,
    MAX_COSET_DEGREE,
};
use crate::partitions::{hook_content_product, Partition};
use crate::tensorop::{
    dim_symmetry_class, format_scalar, rank_exact, symmetrizer, symmetrizer_prime, to_json,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "symtrace", version, about = "Exact symmetrizers, partial traces and S_m characters")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub format: OutputFormat,
    /// Seed for randomly sampled operators.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest operator dimension allowed (overrides SYMTRACE_SIZE_GUARD).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub size_guard: Option<u64>,
    /// Run the extended tensor tier (m <= 5).
    #[arg(long, global = true)]
    pub extended: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Character table of S_m.
    Chartable { m: usize },
    /// Dimension of the symmetry class of alpha over an n-dimensional space.
    Dim {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: usize,
    },
    /// Build T_alpha (or T'_alpha with --prime) and report dim, trace, rank.
    Symmetrizer {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prime: bool,
        /// Write the matrix as JSON to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Check one identity, or `all`.
    Verify {
        identity: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Perturb the first grid point (negative control).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// The resolved settings a command runs with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliConfig {
    pub size_guard: usize,
    pub output_format: OutputFormat,
    pub seed: Option<u64>,
    pub extended_tier: bool,
}

impl CliConfig {
    fn from_cli(cli: &Cli) -> Self {
        let size_guard = cli
            .size_guard
            .map(|g| usize::try_from(g).unwrap_or(usize::MAX))
            .unwrap_or_else(|| Config::from_env().max_dim);
        CliConfig {
            size_guard,
            output_format: cli.format,
            seed: cli.seed,
            extended_tier: cli.extended,
        }
    }

    fn config(&self) -> Config {
        Config::default().with_max_dim(self.size_guard)
    }
}

/// Runs the CLI with stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let settings = CliConfig::from_cli(cli);
    match &cli.command {
        Command::Chartable { m } => cmd_chartable(*m, &settings, out).map(|_| EXIT_OK),
        Command::Dim { alpha, n } => cmd_dim(alpha, *n, &settings, out).map(|_| EXIT_OK),
        Command::Symmetrizer { alpha, n, prime, emit } => {
            cmd_symmetrizer(alpha, *n, *prime, emit.as_ref(), &settings, out).map(|_| EXIT_OK)
        }
        Command::Verify {
            identity,
            m,
            n,
            inject_fault,
        } => cmd_verify(identity, *m, *n, *inject_fault, &settings, out),
    }
}

fn parse_alpha(s: &str) -> Result<Partition> {
    let a: Partition = s.parse()?;
    if a.is_empty() {
        return Err(Error::NotAPartition(format!("{s:?} is empty; m must be at least 1")));
    }
    Ok(a)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_csv(out: &mut dyn Write, rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_text(out: &mut dyn Write, rows: &[Vec<String>]) -> Result<()> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:>w$}", w = widths[c]))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    Ok(())
}

fn write_table(out: &mut dyn Write, format: OutputFormat, rows: &[Vec<String>]) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(out, rows),
        _ => write_text(out, rows),
    }
}

#[derive(Serialize)]
struct ClassJson {
    cycle_type: Partition,
    size: u64,
}

#[derive(Serialize)]
struct RowJson {
    alpha: Partition,
    values: Vec<i64>,
}

#[derive(Serialize)]
struct TableJson {
    m: usize,
    classes: Vec<ClassJson>,
    rows: Vec<RowJson>,
}

pub fn cmd_chartable(m: usize, settings: &CliConfig, out: &mut dyn Write) -> Result<()> {
    let table = character_table_with(m, &settings.config())?;
    if settings.output_format == OutputFormat::Json {
        return write_json(
            out,
            &TableJson {
                m,
                classes: table
                    .classes
                    .iter()
                    .map(|c| ClassJson {
                        cycle_type: c.cycle_type.clone(),
                        size: c.size,
                    })
                    .collect(),
                rows: table
                    .shapes
                    .iter()
                    .zip(&table.values)
                    .map(|(a, v)| RowJson {
                        alpha: a.clone(),
                        values: v.clone(),
                    })
                    .collect(),
            },
        );
    }
    let mut rows = Vec::with_capacity(table.shapes.len() + 2);
    rows.push(
        std::iter::once("alpha \\ class".to_string())
            .chain(table.classes.iter().map(|c| c.cycle_type.to_string()))
            .collect(),
    );
    rows.push(
        std::iter::once("class_size".to_string())
            .chain(table.classes.iter().map(|c| c.size.to_string()))
            .collect(),
    );
    for (a, values) in table.shapes.iter().zip(&table.values) {
        rows.push(
            std::iter::once(a.to_string())
                .chain(values.iter().map(i64::to_string))
                .collect(),
        );
    }
    write_table(out, settings.output_format, &rows)
}

#[derive(Debug)]
struct DimRecord {
    alpha: Partition,
    n: usize,
    dim: num::BigInt,
    degree: i64,
    hook_content: num::BigInt,
}

fn record_rows(fields: &[(&str, String)]) -> Vec<Vec<String>> {
    vec![
        fields.iter().map(|(k, _)| k.to_string()).collect(),
        fields.iter().map(|(_, v)| v.clone()).collect(),
    ]
}

fn write_record(out: &mut dyn Write, format: OutputFormat, fields: &[(&str, String)]) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(out, &record_rows(fields)),
        OutputFormat::Text => {
            let line: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "{}", line.join(" "))?;
            Ok(())
        }
        OutputFormat::Json => unreachable!("json records are serialized directly"),
    }
}

pub fn cmd_dim(alpha: &str, n: usize, settings: &CliConfig, out: &mut dyn Write) -> Result<()> {
    let a = parse_alpha(alpha)?;
    if n == 0 {
        return Err(Error::Parse("--n must be positive".into()));
    }
    if a.weight() > settings.config().max_char_degree {
        return Err(Error::LimitExceeded {
            what: "character degree",
            value: a.weight(),
            limit: settings.config().max_char_degree,
        });
    }
    let record = DimRecord {
        dim: dim_symmetry_class(&a, n)?,
        degree: degree(&a),
        hook_content: hook_content_product(&a, n),
        alpha: a,
        n,
    };
    if settings.output_format == OutputFormat::Json {
        // Integers are emitted as JSON numbers; they are small at this scale.
        let value = serde_json::json!({
            "alpha": record.alpha,
            "n": record.n,
            "dim": record.dim.to_string().parse::<serde_json::Number>().map_err(|e| Error::Parse(e.to_string()))?,
            "degree": record.degree,
            "hook_content": record.hook_content.to_string().parse::<serde_json::Number>().map_err(|e| Error::Parse(e.to_string()))?,
        });
        return write_json(out, &value);
    }
    write_record(
        out,
        settings.output_format,
        &[
            ("alpha", record.alpha.to_string()),
            ("n", n.to_string()),
            ("dim", record.dim.to_string()),
            ("degree", record.degree.to_string()),
            ("hook_content", record.hook_content.to_string()),
        ],
    )
}

pub fn cmd_symmetrizer(
    alpha: &str,
    n: usize,
    prime: bool,
    emit: Option<&PathBuf>,
    settings: &CliConfig,
    out: &mut dyn Write,
) -> Result<()> {
    let a = parse_alpha(alpha)?;
    if n == 0 {
        return Err(Error::Parse("--n must be positive".into()));
    }
    let config = settings.config();
    let op = if prime {
        symmetrizer_prime(&a, n, &config)?
    } else {
        symmetrizer(&a, n, &config)?
    };
    if let Some(path) = emit {
        std::fs::write(path, to_json(&op)?)?;
    }
    let fields = [
        ("alpha", a.to_string()),
        ("n", n.to_string()),
        ("operator", if prime { "T'" } else { "T" }.to_string()),
        ("dim", op.dim().to_string()),
        ("trace", format_scalar(&op.trace())),
        ("rank", rank_exact(&op).to_string()),
        ("emitted", emit.map(|p| p.display().to_string()).unwrap_or_default()),
    ];
    if settings.output_format == OutputFormat::Json {
        let value = serde_json::json!({
            "alpha": a,
            "n": n,
            "prime": prime,
            "dim": op.dim(),
            "trace": fields[4].1,
            "rank": rank_exact(&op),
            "emitted": emit.map(|p| p.display().to_string()),
        });
        return write_json(out, &value);
    }
    write_record(out, settings.output_format, &fields)
}

fn plan_for(m: Option<usize>, n: Option<usize>, extended: bool) -> SuitePlan {
    match m {
        Some(m) => SuitePlan::at_point(m, n.unwrap_or(2)),
        None => {
            let mut plan = SuitePlan::default_tier(extended);
            if let Some(n) = n {
                let m_max = if extended { 5 } else { 4 };
                plan.tensor = TensorGrid {
                    points: (1..=m_max).map(|m| (m, n)).collect(),
                };
            }
            plan
        }
    }
}

pub fn cmd_verify(
    identity: &str,
    m: Option<usize>,
    n: Option<usize>,
    inject_fault: bool,
    settings: &CliConfig,
    out: &mut dyn Write,
) -> Result<i32> {
    let ids: Vec<IdentityId> = if identity == "all" {
        IdentityId::ALL.to_vec()
    } else {
        vec![identity.parse()?]
    };
    if m == Some(0) || n == Some(0) {
        return Err(Error::Parse("--m and --n must be positive".into()));
    }
    if let Some(m) = m {
        if m > MAX_COSET_DEGREE && ids.contains(&IdentityId::CosetDecomposition) {
            return Err(Error::LimitExceeded {
                what: "coset decomposition degree",
                value: m,
                limit: MAX_COSET_DEGREE,
            });
        }
    }
    let plan = plan_for(m, n, settings.extended_tier);
    let opts = VerifyOptions {
        config: settings.config(),
        seed: settings.seed.unwrap_or(DEFAULT_SEED),
        inject_fault,
        ..VerifyOptions::default()
    };
    let reports = ids
        .iter()
        .map(|&id| verify(id, &plan, &opts))
        .collect::<Result<Vec<IdentityReport>>>()?;
    write_reports(out, settings.output_format, &reports)?;
    Ok(if reports.iter().all(IdentityReport::passed) {
        EXIT_OK
    } else {
        EXIT_IDENTITY_FAILED
    })
}

fn counterexample_text(r: &IdentityReport) -> String {
    r.counterexample
        .as_ref()
        .map(|c| serde_json::to_string(c).unwrap_or_default())
        .unwrap_or_default()
}

fn write_reports(out: &mut dyn Write, format: OutputFormat, reports: &[IdentityReport]) -> Result<()> {
    match format {
        OutputFormat::Json => write_json(out, &reports),
        OutputFormat::Csv => {
            let mut rows = vec![["identity_id", "status", "elapsed_ms", "seed", "domain", "counterexample"]
                .map(String::from)
                .to_vec()];
            for r in reports {
                rows.push(vec![
                    r.identity_id.to_string(),
                    if r.passed() { "pass" } else { "fail" }.into(),
                    r.elapsed_ms.to_string(),
                    r.seed.map(|s| s.to_string()).unwrap_or_default(),
                    r.domain.clone(),
                    counterexample_text(r),
                ]);
            }
            write_csv(out, &rows)
        }
        OutputFormat::Text => {
            for r in reports {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {} ({} ms) {}", r.identity_id, r.elapsed_ms, r.domain)?;
                if !r.passed() {
                    writeln!(out, "     counterexample: {}", counterexample_text(r))?;
                }
            }
            Ok(())
        }
    }
}
