//! Command line runner for the inequality suite.
//!
//! Summary lines stream to stderr as rows finish; the rendered report goes
//! to stdout or to `--out`. The exit status is nonzero when any row is
//! violated, so the binary can gate CI directly.

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use geotomo::bodies::canonical_catalog;
use geotomo::harness::{list_checkers, paper_suite, run_one, SuiteConfig};
use geotomo::report::{render_csv, render_json, InequalityReport, Verdict};
use std::fs;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "geotomo", version, about = "Section and projection inequality checks on convex bodies")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a suite from a JSON config file, or the built-in `paper-suite`.
    Run {
        /// Path to a suite config, or the literal `paper-suite`.
        config: String,
        /// Override the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the full-body sample budget in the config.
        #[arg(long)]
        samples: Option<u64>,
        /// Override the batch count in the config.
        #[arg(long)]
        workers: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List checker ids with one-line descriptions.
    ListCheckers,
    /// List body descriptor families with examples.
    ListBodies,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().cmd {
        Cmd::Run {
            config,
            seed,
            samples,
            workers,
            format,
            out,
        } => run(config, seed, samples, workers, format, out),
        Cmd::ListCheckers => {
            for (id, desc) in list_checkers() {
                println!("{id:24} {desc}");
            }
            Ok(())
        }
        Cmd::ListBodies => {
            for (pattern, example) in canonical_catalog() {
                println!("{pattern:24} e.g. {example}");
            }
            Ok(())
        }
    }
}

fn run(
    config: String,
    seed: Option<u64>,
    samples: Option<u64>,
    workers: Option<u32>,
    format: Format,
    out: Option<PathBuf>,
) -> anyhow::Result<()> {
    let mut suite: SuiteConfig = if config == "paper-suite" {
        paper_suite()
    } else {
        let text =
            fs::read_to_string(&config).with_context(|| format!("reading config `{config}`"))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config `{config}`"))?
    };
    if let Some(s) = seed {
        suite.run.seed = s;
    }
    if let Some(s) = samples {
        suite.run.samples = s;
    }
    if let Some(w) = workers {
        suite.run.workers = w;
    }

    let mut reports: Vec<InequalityReport> = Vec::with_capacity(suite.checks.len());
    for (i, spec) in suite.checks.iter().enumerate() {
        let report = run_one(spec, &suite.run, i as u32)
            .with_context(|| format!("row {i} ({})", spec.id()))?;
        eprintln!("{}", report.summary_line());
        reports.push(report);
    }

    let rendered = match format {
        Format::Csv => render_csv(&reports),
        Format::Json => render_json(&reports)?,
    };
    match &out {
        Some(path) => fs::write(path, rendered)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{rendered}"),
    }

    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let violated = count(Verdict::Violated);
    eprintln!(
        "{} checks: {} holds, {} holds-with-bound, {} inconclusive, {} violated",
        reports.len(),
        count(Verdict::Holds),
        count(Verdict::HoldsWithBound),
        count(Verdict::Inconclusive),
        violated
    );
    if violated > 0 {
        bail!("{violated} checks violated");
    }
    Ok(())
}
