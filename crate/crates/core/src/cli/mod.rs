//! The `cubic3` command line: prime-range scans, report conversion and the
//! class group cache.

pub mod cache;
pub mod report;
pub mod scan;

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::localfield::DEFAULT_PRECISION;
use crate::orders::Effort;
use crate::pipelines::{self, CaseLabel, Certificate, PipelineConfig, Verdict};
use cache::Cache;
use report::Report;
use scan::{ReportRow, ScanConfig};

#[derive(Debug, Parser)]
#[command(name = "cubic3", version, about = "3-class groups of Q(cbrt p) and Q(cbrt p, w) over prime ranges")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the pipelines for every prime in a range.
    Scan(ScanArgs),
    /// Re-render a JSON report, optionally recomputing every certificate.
    Report(ReportArgs),
    /// Inspect or maintain the class group cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
        #[arg(long, global = true, default_value = ".cubic3-cache")]
        cache_dir: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 5)]
    pub min: u64,
    #[arg(long, default_value_t = 200)]
    pub max: u64,
    /// Restrict to cases (Case1, Case3, Case4, CaseMain); repeatable.
    #[arg(long = "case", value_parser = CaseLabel::from_str)]
    pub cases: Vec<CaseLabel>,
    #[arg(long)]
    pub with_class_groups: bool,
    /// Also compute the class group of the sextic field (slow).
    #[arg(long = "with-AK")]
    pub with_ak: bool,
    /// 3-adic precision, in powers of 3.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// `quick`, `desk`, or a number of relation rounds.
    #[arg(long, default_value = "desk")]
    pub effort: String,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// A JSON report written by `scan`.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Recompute each certificate from its recorded inputs and compare verdicts.
    #[arg(long)]
    pub recheck: bool,
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    Show,
    Clear,
    /// Drop entries that fail to parse or whose discriminant is wrong.
    Verify,
}

pub fn parse_effort(s: &str, seed: u64) -> Result<Effort> {
    let e = match s {
        "desk" => Effort::default(),
        "quick" => Effort::quick(),
        n => {
            let rounds = n.parse().map_err(|_| Error::Precondition(format!("bad effort {n}")))?;
            Effort { max_rounds: rounds, ..Effort::default() }
        }
    };
    Ok(e.with_seed(seed))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Error::io(p, e))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_report(rep: &Report, format: Format, out: Option<&Path>) -> Result<()> {
    let mut w = output(out)?;
    match format {
        Format::Json => report::write_json(rep, &mut w)?,
        Format::Csv => report::write_csv(&rep.rows, &mut w)?,
    }
    w.flush().map_err(|e| Error::io(out.unwrap_or(Path::new("<stdout>")), e))
}

pub fn run_scan(a: &ScanArgs) -> Result<Report> {
    let effort = parse_effort(&a.effort, a.seed)?;
    let cfg = ScanConfig {
        min: a.min,
        max: a.max,
        cases: a.cases.clone(),
        pipeline: PipelineConfig {
            precision: a.precision,
            effort,
            with_class_groups: a.with_class_groups || a.with_ak,
            with_ak: a.with_ak,
        },
        jobs: a.jobs,
    };
    let cache = Cache::new(a.cache_dir.clone());
    // rows are appended here as they finish, so an interrupted scan keeps its work
    let partial = a.out.as_ref().map(|o| o.with_extension("partial.jsonl"));
    let sink = match &partial {
        Some(p) => Some(Mutex::new(File::create(p).map_err(|e| Error::io(p, e))?)),
        None => None,
    };
    let progress = |row: &ReportRow| {
        if let Some(s) = &sink {
            let line = serde_json::to_string(row).expect("serializable");
            let _ = writeln!(s.lock().unwrap(), "{line}");
        }
    };
    let rows = scan::scan(&cfg, &cache, Some(&progress))?;
    let config = json!({
        "min": a.min,
        "max": a.max,
        "cases": a.cases,
        "with_class_groups": cfg.pipeline.with_class_groups,
        "with_AK": a.with_ak,
        "precision": a.precision,
        "effort": a.effort,
        "seed": a.seed,
    });
    let rep = Report::new(config, rows);
    write_report(&rep, a.format, a.out.as_deref())?;
    if let Some(p) = partial {
        fs::remove_file(&p).map_err(|e| Error::io(&p, e))?;
    }
    Ok(rep)
}

/// Recompute a certificate from its recorded inputs.
pub fn recheck(c: &Certificate) -> Result<Verdict> {
    let p = c.p;
    let get_bool = |k: &str| c.inputs.get(k).and_then(|v| v.as_bool()).unwrap_or(false);
    let get_u64 = |k: &str, d: u64| c.inputs.get(k).and_then(|v| v.as_u64()).unwrap_or(d);
    let v = match c.pipeline.as_str() {
        "A_M" => pipelines::verify_a_m(p)?.certificate.verdict,
        "theorem2" => pipelines::verify_theorem2(p, get_u64("precision", DEFAULT_PRECISION as u64) as u32)?.certificate.verdict,
        "main" => {
            let cfg = PipelineConfig {
                with_class_groups: get_bool("with_class_groups"),
                with_ak: get_bool("with_AK"),
                ..PipelineConfig::default()
            };
            pipelines::verify_main(p, &cfg)?.certificate.verdict
        }
        "schoof_symbols" => pipelines::verify_schoof_symbols(p)?.certificate.verdict,
        "norm_equation" => {
            let effort = Effort::default().with_seed(get_u64("seed", Effort::default().seed));
            pipelines::verify_norm_equation_criterion(p, &effort)?.certificate.verdict
        }
        other => return Err(Error::Precondition(format!("unknown pipeline {other}"))),
    };
    Ok(v)
}

pub fn run_report(a: &ReportArgs) -> Result<Report> {
    let f = File::open(&a.input).map_err(|e| Error::io(&a.input, e))?;
    let mut rep = report::read_json(BufReader::new(f))?;
    if a.recheck {
        for row in &mut rep.rows {
            for c in &row.certificates {
                let v = recheck(c).unwrap_or(Verdict::Inconclusive);
                if v != c.verdict {
                    row.errors.push(format!("{} recomputed as {v:?}, recorded {:?}", c.pipeline, c.verdict));
                    row.verdict = row.verdict.and(Verdict::Fail);
                }
            }
        }
    }
    write_report(&rep, a.format, a.out.as_deref())?;
    Ok(rep)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Scan(a) => run_scan(a).map(|r| {
            let (pass, fail, inc) = r.counts();
            eprintln!("{} rows: {pass} pass, {fail} fail, {inc} inconclusive", r.rows.len());
            r.exit_code()
        }),
        Command::Report(a) => run_report(a).map(|r| r.exit_code()),
        Command::Cache { action, cache_dir } => run_cache(action, cache_dir).map(|_| 0),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run_cache(action: &CacheAction, dir: &Path) -> Result<()> {
    let cache = Cache::new(Some(dir.to_path_buf()));
    match action {
        CacheAction::Show => {
            for (path, entry) in cache.show()? {
                match entry {
                    Some(e) => println!(
                        "{}\t{}\tdisc={}\tinvariants={:?}\tcertified={}\tseed={}",
                        path.display(),
                        e.descriptor,
                        e.discriminant,
                        e.invariants,
                        e.certified,
                        e.seed
                    ),
                    None => println!("{}\tunreadable", path.display()),
                }
            }
        }
        CacheAction::Clear => println!("removed {} entries", cache.clear()?),
        CacheAction::Verify => {
            let (kept, evicted) = cache.verify()?;
            for p in &evicted {
                println!("evicted {}", p.display());
            }
            println!("{kept} entries valid, {} evicted", evicted.len());
        }
    }
    Ok(())
}
