mod cache;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sigmaeq::constructions::{
    canonical_k2, k1_solution, lcm_family, lower_bound_family, pk_solution, sylvester_solution,
    v_solution,
};
use sigmaeq::limits::{limit_constant, required_bits};
use sigmaeq::sequences::{sylvester_u, v_sequence, SeqKind, VMethod};
use sigmaeq::symfunc::residual;
use sigmaeq::verify::{check_bounds, check_set};
use sigmaeq::{Execution, Natural, SearchConfig, SolutionSet, SolutionTuple};

use cache::Cache;
use render::{EnumerateDoc, Format, ReportDoc, WitnessDoc};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sigmaeq::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    ChecksFailed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use sigmaeq::Error as E;
        match self {
            CliError::Core(E::InvalidInput(_) | E::Config(_)) | CliError::Invalid(_) => 2,
            CliError::Core(E::Verification(_)) | CliError::ChecksFailed(_) => 3,
            CliError::Core(E::BudgetExhausted { .. }) => 4,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 1,
        }
    }
}

/// Enumerate, construct and verify positive integer solutions of
/// sigma_k(x_1..x_n) = sigma_n(x_1..x_n).
#[derive(Debug, Parser)]
#[command(name = "sigmaeq", version)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (1 runs sequentially; default uses all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cache directory [default: $SIGMAEQ_CACHE_DIR or ./.sigmaeq-cache]
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, default_value_t = 200_000_000)]
    max_nodes: u64,
    #[arg(long, global = true)]
    max_seconds: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    U,
    V,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Definition,
    Rec1,
    Rec2,
    Rec3,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Pk,
    K1,
    K2,
    Sylvester,
    V,
    #[value(name = "lcm-family")]
    Lcm,
    LowerBound,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Terms of the u (Sylvester) or v sequence.
    Seq {
        kind: Kind,
        #[arg(long)]
        count: usize,
        /// Recurrence for v.
        #[arg(long, value_enum, default_value_t = Method::Rec2)]
        method: Method,
    },
    /// All solutions for (n, k).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Number of solutions for (n, k).
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Solutions from closed-form families.
    Construct {
        family: Family,
        #[arg(long)]
        n: usize,
        /// Required for the pk family.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check known bounds on solutions. Exits with 3 if any check fails.
    Verify {
        #[arg(long, conflicts_with_all = ["tuple", "input"])]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated tuple; may be repeated.
        #[arg(long)]
        tuple: Vec<String>,
        /// JSON file written by `enumerate --format json`.
        #[arg(long, conflicts_with = "tuple")]
        input: Option<PathBuf>,
    },
    /// Growth constant lim a_n^(1/2^n) with a rigorous error bound.
    Limits {
        kind: Kind,
        #[arg(long, default_value_t = 12)]
        terms: usize,
        #[arg(long, default_value_t = 20)]
        digits: usize,
        #[arg(long)]
        precision_bits: Option<u32>,
    },
    /// Number of unordered factorizations of m into factors >= 2.
    FactorCount { m: String },
}

impl RunConfig {
    fn search(&self) -> Result<SearchConfig, CliError> {
        if self.max_nodes == 0 {
            return Err(CliError::Invalid("--max-nodes must be positive".into()));
        }
        if self.max_seconds == Some(0) {
            return Err(CliError::Invalid("--max-seconds must be positive".into()));
        }
        let execution = match self.threads {
            None => Execution::Parallel,
            Some(0) => return Err(CliError::Invalid("--threads must be positive".into())),
            Some(1) => Execution::Sequential,
            Some(threads) => Execution::ParallelWith { threads },
        };
        Ok(SearchConfig {
            max_nodes: self.max_nodes,
            max_duration: self.max_seconds.map(Duration::from_secs),
            execution,
            ..SearchConfig::default()
        })
    }

    fn cache(&self) -> Option<Cache> {
        if self.no_cache {
            return None;
        }
        Some(Cache::new(
            &self.cache_dir.clone().unwrap_or_else(cache::default_dir),
        ))
    }

    fn enumerate(&self, n: usize, k: usize) -> Result<SolutionSet, CliError> {
        let cache = self.cache();
        if let Some(set) = cache.as_ref().and_then(|c| c.load(n, k)) {
            return Ok(set);
        }
        let set = sigmaeq::enumerate_with(n, k, &self.search()?)?;
        if let Some(c) = cache {
            c.store(&set)?;
        }
        Ok(set)
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn tuple_list(
    name: &str,
    n: usize,
    k: Option<usize>,
    rows: &[SolutionTuple],
    fmt: Format,
) -> Result<String, CliError> {
    match fmt {
        Format::Json => pretty(&json!({
            "family": name,
            "n": n,
            "k": k,
            "solutions": rows.iter().map(render::strings).collect::<Vec<_>>(),
        })),
        Format::Csv => render::tuples_csv(rows, &[]),
        Format::Text => Ok(rows.iter().map(|r| format!("{r}\n")).collect()),
    }
}

fn cmd_seq(kind: Kind, count: usize, method: Method, fmt: Format) -> Result<String, CliError> {
    let (name, table, method_name) = match kind {
        Kind::U => ("u", sylvester_u(count)?, None),
        Kind::V => {
            let m = match method {
                Method::Definition => VMethod::Definition,
                Method::Rec1 => VMethod::Rec1,
                Method::Rec2 => VMethod::Rec2,
                Method::Rec3 => VMethod::Rec3,
            };
            (
                "v",
                v_sequence(count, m)?,
                Some(format!("{method:?}").to_lowercase()),
            )
        }
    };
    let values: Vec<String> = table.values().iter().map(Natural::to_string).collect();
    match fmt {
        Format::Json => pretty(&json!({
            "kind": name,
            "count": count,
            "method": method_name,
            "values": values,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["i", name])?;
            for (i, v) in values.iter().enumerate() {
                w.write_record([(i + 1).to_string(), v.clone()])?;
            }
            render::csv_string(w)
        }
        Format::Text => Ok(values.join(",") + "\n"),
    }
}

fn cmd_enumerate(run: &RunConfig, n: usize, k: usize) -> Result<String, CliError> {
    let set = run.enumerate(n, k)?;
    match run.format {
        Format::Json => pretty(&EnumerateDoc::from_set(&set)),
        Format::Csv => render::tuples_csv(&set.solutions, &[]),
        Format::Text => Ok(render::enumerate_text(&set)),
    }
}

fn cmd_count(run: &RunConfig, n: usize, k: usize) -> Result<String, CliError> {
    let set = run.enumerate(n, k)?;
    match run.format {
        Format::Json => pretty(&json!({ "n": n, "k": k, "count": set.count() })),
        Format::Csv => Ok(format!("n,k,count\n{n},{k},{}\n", set.count())),
        Format::Text => Ok(format!("{}\n", set.count())),
    }
}

fn cmd_construct(
    family: Family,
    n: usize,
    k: Option<usize>,
    fmt: Format,
) -> Result<String, CliError> {
    let single = |t: sigmaeq::Result<SolutionTuple>| t.map(|t| vec![t]);
    let (name, rows) = match family {
        Family::Pk => {
            let k = k.ok_or_else(|| CliError::Invalid("the pk family needs --k".into()))?;
            return tuple_list("pk", n, Some(k), &single(pk_solution(n, k))?, fmt);
        }
        Family::K1 => ("k1", single(k1_solution(n))?),
        Family::K2 => ("k2", single(canonical_k2(n))?),
        Family::Sylvester => ("sylvester", single(sylvester_solution(n))?),
        Family::V => ("v", single(v_solution(n))?),
        Family::LowerBound => ("lower-bound", lower_bound_family(n)?),
        Family::Lcm => {
            let fam = lcm_family(n)?;
            return match fmt {
                Format::Json => pretty(&json!({
                    "family": "lcm-family",
                    "n": n,
                    "witnesses": fam.iter().map(WitnessDoc::from).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    let bases: Vec<SolutionTuple> = fam.iter().map(|w| w.base.clone()).collect();
                    let lcms = fam.iter().map(|w| w.lcm.to_string()).collect();
                    let tags = fam
                        .iter()
                        .map(|w| render::tag_name(w.parity_tag).to_string())
                        .collect();
                    render::tuples_csv(&bases, &[("lcm", lcms), ("tag", tags)])
                }
                Format::Text => Ok(fam
                    .iter()
                    .map(|w| format!("{} lcm={} -> {}\n", w.base, w.lcm, w.extension))
                    .collect()),
            };
        }
    };
    let k = match family {
        Family::K1 => Some(1),
        Family::K2 => Some(2),
        Family::Sylvester => Some(n.saturating_sub(1)),
        _ => Some(n.saturating_sub(2)),
    };
    tuple_list(name, n, k, &rows, fmt)
}

fn cmd_verify(
    run: &RunConfig,
    n: Option<usize>,
    k: Option<usize>,
    tuples: &[String],
    input: Option<&PathBuf>,
) -> Result<String, CliError> {
    let (k, subjects, set) = if let Some(path) = input {
        let doc: EnumerateDoc = serde_json::from_str(&fs::read_to_string(path)?)?;
        let set = doc.into_set()?;
        (set.k, set.solutions.clone(), Some(set))
    } else if let Some(n) = n {
        let k = k.ok_or_else(|| CliError::Invalid("--n needs --k".into()))?;
        let set = run.enumerate(n, k)?;
        (k, set.solutions.clone(), Some(set))
    } else if !tuples.is_empty() {
        let k = k.ok_or_else(|| CliError::Invalid("--tuple needs --k".into()))?;
        let parsed = tuples
            .iter()
            .map(|s| s.parse::<SolutionTuple>())
            .collect::<Result<Vec<_>, _>>()?;
        (k, parsed, None)
    } else {
        return Err(CliError::Invalid(
            "give --n and --k, --tuple, or --input".into(),
        ));
    };

    let mut docs = Vec::new();
    for t in &subjects {
        if residual(t, k)? != 0.into() {
            docs.push(ReportDoc::not_a_solution(t, k));
        } else {
            docs.push(ReportDoc::from_report(&check_bounds(t, k)?));
        }
    }
    let set_report = set
        .as_ref()
        .filter(|s| s.complete)
        .map(check_set)
        .transpose()?;
    let failures = docs.iter().filter(|d| !d.all_hold).count();

    let out = match run.format {
        Format::Json => pretty(&json!({
            "k": k,
            "ok": failures == 0,
            "reports": docs,
            "set": set_report.as_ref().map(|r| json!({
                "count_bound": render::CheckDoc::from(&r.count_bound),
                "product_conjecture": r.product_conjecture.as_ref().map(render::CheckDoc::from),
            })),
        }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "tuple", "k", "check", "kind", "lhs", "rhs", "holds", "slack",
            ])?;
            for d in &docs {
                let tuple = d.tuple.join(" ");
                if !d.solution {
                    w.write_record([
                        tuple.as_str(),
                        &k.to_string(),
                        "residual = 0",
                        "",
                        "",
                        "",
                        "false",
                        "",
                    ])?;
                }
                for c in &d.checks {
                    w.write_record([
                        tuple.as_str(),
                        &k.to_string(),
                        &c.name,
                        c.kind,
                        &c.lhs,
                        &c.rhs,
                        &c.holds.to_string(),
                        &c.slack,
                    ])?;
                }
            }
            render::csv_string(w)?
        }
        Format::Text => {
            let mut out = String::new();
            for (t, d) in subjects.iter().zip(&docs) {
                if !d.solution {
                    out.push_str(&format!("{t} k={k}: not a solution\n"));
                    continue;
                }
                let verdict = if d.all_hold {
                    "all checks hold"
                } else {
                    "CHECK FAILED"
                };
                out.push_str(&format!("{t} k={k}: {verdict}\n"));
                for c in &check_bounds(t, k)?.checks {
                    out.push_str(&format!("  {c}\n"));
                }
            }
            if let Some(r) = &set_report {
                out.push_str(&format!("set: {}\n", r.count_bound));
                if let Some(c) = &r.product_conjecture {
                    out.push_str(&format!("set (informational): {c}\n"));
                }
            }
            out
        }
    };
    if failures > 0 {
        emit(run, &out)?;
        return Err(CliError::ChecksFailed(format!(
            "{failures} of {} tuples failed verification",
            docs.len()
        )));
    }
    Ok(out)
}

fn cmd_limits(
    kind: Kind,
    terms: usize,
    digits: usize,
    bits: Option<u32>,
    fmt: Format,
) -> Result<String, CliError> {
    let (seq, name) = match kind {
        Kind::U => (SeqKind::U, "c1"),
        Kind::V => (SeqKind::V, "c2"),
    };
    let est = limit_constant(
        seq,
        terms,
        digits,
        bits.unwrap_or_else(|| required_bits(digits)),
    )?;
    match fmt {
        Format::Json => pretty(&json!({
            "constant": name,
            "terms": terms,
            "digits": digits,
            "value": est.decimal(),
            "error_bound": est.error_display(),
        })),
        Format::Csv => Ok(format!(
            "constant,terms,digits,value,error_bound\n{name},{terms},{digits},{},{}\n",
            est.decimal(),
            est.error_display()
        )),
        Format::Text => Ok(format!(
            "{name} = {} +- {}\n",
            est.decimal(),
            est.error_display()
        )),
    }
}

fn cmd_factor_count(m: &str, fmt: Format) -> Result<String, CliError> {
    let m: Natural = m
        .trim()
        .parse()
        .map_err(|_| CliError::Invalid(format!("not a natural number: {m:?}")))?;
    let f = sigmaeq::arith::multiplicative_partitions(&m)?;
    match fmt {
        Format::Json => pretty(&json!({ "m": m.to_string(), "f": f.to_string() })),
        Format::Csv => Ok(format!("m,f\n{m},{f}\n")),
        Format::Text => Ok(format!("{f}\n")),
    }
}

fn emit(run: &RunConfig, out: &str) -> Result<(), CliError> {
    match &run.output {
        Some(path) => fs::write(path, out)?,
        None => print!("{out}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let run = &cli.run;
    let fmt = run.format;
    let out = match &cli.command {
        Command::Seq {
            kind,
            count,
            method,
        } => cmd_seq(*kind, *count, *method, fmt)?,
        Command::Enumerate { n, k } => cmd_enumerate(run, *n, *k)?,
        Command::Count { n, k } => cmd_count(run, *n, *k)?,
        Command::Construct { family, n, k } => cmd_construct(*family, *n, *k, fmt)?,
        Command::Verify { n, k, tuple, input } => cmd_verify(run, *n, *k, tuple, input.as_ref())?,
        Command::Limits {
            kind,
            terms,
            digits,
            precision_bits,
        } => cmd_limits(*kind, *terms, *digits, *precision_bits, fmt)?,
        Command::FactorCount { m } => cmd_factor_count(m, fmt)?,
    };
    emit(run, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
