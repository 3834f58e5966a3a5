//! Command-line front end. Exit codes: 0 success, 1 verification
//! violation, 2 usage or input error, 3 numerical failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::enumerate::{
    enumerate_supertrees_with_budget, filter_classes, Caterpillar, ClassFilter, ClassStats, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilySpec};
use crate::harness::{run_suite, HarnessOptions, Suite, SuiteParams, VerificationReport};
use crate::hypergraph::{Hypergraph, FORMAT_VERSION};
use crate::spectral::{spectral_radius, Interval, SolverOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "supertree-spectra", version, about = "Alpha-spectral radii of uniform supertrees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral radius of a hypergraph read from JSON.
    Rho {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1_000_000)]
        max_iter: usize,
        /// Print the full result as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build a named family member and emit it as JSON.
    Family {
        #[arg(long, value_enum)]
        kind: FamilyArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List supertree classes with `m` edges.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        diameter: Option<usize>,
        #[arg(long, value_enum, default_value_t = CaterpillarArg::Any)]
        caterpillar: CaterpillarArg,
        /// Keep classes with exactly this many non-pendant vertices.
        #[arg(long)]
        n2: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Write one JSON file per class plus index.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        alphas: Vec<f64>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        margin: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Rank all classes with `m` edges by spectral radius.
    Rank {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Path,
    Star,
    Dstar,
    Ttree,
    H1,
    H2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaterpillarArg {
    Yes,
    No,
    Any,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Moving,
    Switch,
    Grafting,
    Op1,
    Extremal,
    Nc,
    Lemma1,
    All,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        match self {
            SuiteArg::Moving => Suite::Moving,
            SuiteArg::Switch => Suite::Switch,
            SuiteArg::Grafting => Suite::Grafting,
            SuiteArg::Op1 => Suite::OperationI,
            SuiteArg::Extremal => Suite::Extremal,
            SuiteArg::Nc => Suite::Nc,
            SuiteArg::Lemma1 => Suite::Lemma1,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Parses `argv` (program name first) and runs the command against the
/// process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::MaxIterationsExceeded { .. } => EXIT_NUMERICAL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn need(value: Option<usize>, flag: &str, kind: &str) -> Result<usize> {
    value.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required for --kind {kind}")))
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn fmt_interval(i: &Interval) -> String {
    format!("[{:.10}, {:.10}]", i.low, i.high)
}

#[derive(Serialize)]
struct IndexFile<'a> {
    format: u32,
    k: usize,
    m: usize,
    classes: Vec<IndexEntry<'a>>,
}

#[derive(Serialize)]
struct IndexEntry<'a> {
    file: String,
    #[serde(flatten)]
    stats: &'a ClassStats,
}

#[derive(Serialize)]
struct RankRow {
    rank: usize,
    #[serde(flatten)]
    interval: Interval,
    caterpillar: bool,
    non_pendant: usize,
    diameter: usize,
    key: String,
}

#[derive(Serialize)]
struct ReportBundle<'a> {
    format: u32,
    reports: &'a [VerificationReport],
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Rho { input, alpha, tol, max_iter, json } => {
            let h = Hypergraph::from_json(&fs::read_to_string(&input)?)?;
            let opts = SolverOptions { alpha, tolerance: tol, max_iterations: max_iter, ..SolverOptions::default() };
            let r = spectral_radius(&h, &opts)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
            } else {
                writeln!(out, "{:.10}", r.rho)?;
                writeln!(out, "interval {}", fmt_interval(&r.interval()))?;
                writeln!(out, "iterations {}", r.iterations)?;
                writeln!(out, "residual {:.3e}", r.residual)?;
            }
            Ok(EXIT_OK)
        }
        Command::Family { kind, k, m, d, a, b, s, t, out: path } => {
            let fam = match kind {
                FamilyArg::Path => FamilyKind::LoosePath { d: need(d, "d", "path")? },
                FamilyArg::Star => FamilyKind::Star { m: need(m, "m", "star")? },
                FamilyArg::Dstar => FamilyKind::DoubleStar { a: need(a, "a", "dstar")?, b: need(b, "b", "dstar")? },
                FamilyArg::Ttree => FamilyKind::TTree {
                    s: need(s, "s", "ttree")?,
                    t: need(t, "t", "ttree")?,
                    a: need(a, "a", "ttree")?,
                    b: need(b, "b", "ttree")?,
                },
                FamilyArg::H1 => FamilyKind::H1 { m: need(m, "m", "h1")?, d: need(d, "d", "h1")? },
                FamilyArg::H2 => FamilyKind::H2 { m: need(m, "m", "h2")?, d: need(d, "d", "h2")? },
            };
            let h = FamilySpec::new(k, fam).build()?;
            write_output(path.as_deref(), &format!("{}\n", h.to_json()), out)?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { k, m, diameter, caterpillar, n2, budget, out: dir } => {
            let caterpillar = match caterpillar {
                CaterpillarArg::Yes => Caterpillar::Yes,
                CaterpillarArg::No => Caterpillar::No,
                CaterpillarArg::Any => Caterpillar::Any,
            };
            let filter = ClassFilter { diameter, caterpillar, non_pendant: n2 };
            let classes = filter_classes(&enumerate_supertrees_with_budget(k, m, budget)?, &filter);
            let stats: Vec<ClassStats> = classes.iter().map(ClassStats::of).collect();
            match dir {
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    let mut entries = Vec::with_capacity(classes.len());
                    for (i, (c, s)) in classes.iter().zip(&stats).enumerate() {
                        let file = format!("class-{i:05}.json");
                        fs::write(dir.join(&file), format!("{}\n", c.graph.to_json()))?;
                        entries.push(IndexEntry { file, stats: s });
                    }
                    let index = IndexFile { format: FORMAT_VERSION, k, m, classes: entries };
                    fs::write(dir.join("index.json"), format!("{}\n", serde_json::to_string_pretty(&index)?))?;
                    writeln!(out, "{} classes written to {}", classes.len(), dir.display())?;
                }
                None => {
                    writeln!(out, "{:>5}  {:>3}  {:>3}  {:>5}  {:>3}  key", "#", "n", "d", "cat", "N2")?;
                    for (i, s) in stats.iter().enumerate() {
                        let cat = if s.caterpillar { "yes" } else { "no" };
                        writeln!(
                            out,
                            "{i:>5}  {:>3}  {:>3}  {cat:>5}  {:>3}  {}",
                            s.n, s.diameter, s.non_pendant, s.key
                        )?;
                    }
                    writeln!(out, "{} classes", stats.len())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite, k, m, d, alphas, json, tol, margin, seed, samples, budget } => {
            let defaults = HarnessOptions::default();
            let options = HarnessOptions {
                solver: SolverOptions { tolerance: tol, ..defaults.solver },
                margin,
                seed: seed.unwrap_or(defaults.seed),
                switch_samples: samples.unwrap_or(defaults.switch_samples),
                budget,
                ..defaults
            };
            let params = SuiteParams { k, m, d, alphas, options };
            let reports = run_suite(suite.suite(), &params)?;
            writeln!(
                out,
                "{:<9} {:>9} {:>9} {:>9} {:>12} {:>16} {:>10}",
                "suite", "instances", "confirmed", "violated", "inconclusive", "premise-not-met", "candidate"
            )?;
            for r in &reports {
                let c = &r.counts;
                writeln!(
                    out,
                    "{:<9} {:>9} {:>9} {:>9} {:>12} {:>16} {:>10}",
                    r.suite,
                    c.instances,
                    c.confirmed,
                    c.violated,
                    c.inconclusive,
                    c.premise_not_met,
                    c.counterexample_candidate
                )?;
                for c in &r.conjecture {
                    let status = serde_json::to_value(c.status)?;
                    writeln!(
                        out,
                        "  conjecture NC({},{}) alpha={}: {} (H1 {}, H2 {})",
                        c.m,
                        c.d,
                        c.alpha,
                        status.as_str().unwrap_or_default(),
                        fmt_interval(&c.h1),
                        fmt_interval(&c.h2)
                    )?;
                }
            }
            if let Some(path) = json {
                let bundle = ReportBundle { format: crate::harness::REPORT_FORMAT, reports: &reports };
                fs::write(path, format!("{}\n", serde_json::to_string_pretty(&bundle)?))?;
            }
            Ok(if reports.iter().any(|r| r.has_violations()) { EXIT_VIOLATION } else { EXIT_OK })
        }
        Command::Rank { k, m, alpha, top, budget, json } => {
            let classes = enumerate_supertrees_with_budget(k, m, budget)?;
            let opts = SolverOptions::with_alpha(alpha);
            let mut rows = Vec::with_capacity(classes.len());
            for c in &classes {
                let s = ClassStats::of(c);
                rows.push(RankRow {
                    rank: 0,
                    interval: spectral_radius(&c.graph, &opts)?.interval(),
                    caterpillar: s.caterpillar,
                    non_pendant: s.non_pendant,
                    diameter: s.diameter,
                    key: s.key.to_string(),
                });
            }
            rows.sort_by(|a, b| b.interval.rho.total_cmp(&a.interval.rho).then_with(|| a.key.cmp(&b.key)));
            rows.truncate(top);
            for (i, r) in rows.iter_mut().enumerate() {
                r.rank = i + 1;
            }
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
            } else {
                writeln!(
                    out,
                    "{:>4}  {:>14}  {:<30}  {:>5}  {:>3}  {:>3}  key",
                    "rank", "rho", "interval", "cat", "N2", "d"
                )?;
                for r in &rows {
                    let cat = if r.caterpillar { "yes" } else { "no" };
                    writeln!(
                        out,
                        "{:>4}  {:>14.10}  {:<30}  {cat:>5}  {:>3}  {:>3}  {}",
                        r.rank,
                        r.interval.rho,
                        fmt_interval(&r.interval),
                        r.non_pendant,
                        r.diameter,
                        r.key
                    )?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("supertree-spectra").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_and_usage_codes() {
        assert_eq!(capture(&["--help"]).0, EXIT_OK);
        assert_eq!(capture(&["rho"]).0, EXIT_USAGE);
        assert_eq!(capture(&["rank", "--k", "3", "--m", "3", "--bogus"]).0, EXIT_USAGE);
        let (code, _, err) = capture(&["family", "--kind", "h1", "--k", "3", "--m", "6"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--d"));
    }

    #[test]
    fn family_h1_matches_builder() {
        let (code, out, _) = capture(&["family", "--kind", "h1", "--k", "3", "--m", "6", "--d", "4"]);
        assert_eq!(code, 0);
        let h = Hypergraph::from_json(&out).unwrap();
        assert_eq!(h, crate::families::h1(3, 6, 4).unwrap());
    }

    #[test]
    fn rank_top_rows() {
        let (code, out, _) = capture(&["rank", "--k", "3", "--m", "5", "--alpha", "0", "--top", "3", "--json"]);
        assert_eq!(code, 0);
        let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
        assert_eq!(rows.len(), 3);
        let star = crate::families::star(3, 5).unwrap().canonical_key().unwrap();
        let second = crate::families::double_star(3, 1, 3).unwrap().canonical_key().unwrap();
        assert_eq!(rows[0]["key"], star.as_str());
        assert_eq!(rows[1]["key"], second.as_str());
    }
}
