use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anascore::io::{parse_corpus, render_report, CorpusFile, ReportFormat};
use anascore::metrics::{evaluate, LeaConfig, Metric};
use anascore::model::validate;
use anascore::oracle::{brute_force_assignment, generate_instance, standard_metric, RandomInstanceSpec};
use anascore::{km_assign, score_corpus, ScoreMatrix, ScorerConfig};
use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

/// Scores coreference and anaphora output against a gold key, including
/// split-antecedent anaphors.
#[derive(Debug, Parser)]
#[command(name = "anascore", version, subcommand_negates_reqs = true)]
struct Cli {
    /// Gold corpus (JSON).
    #[arg(long, required = true)]
    key: Option<PathBuf>,

    /// System corpus (JSON).
    #[arg(long, required = true)]
    response: Option<PathBuf>,

    /// Comma-separated metrics (muc, b3, ceafm, ceafe, lea, blanc) or `all`.
    #[arg(long, default_value = "all", value_delimiter = ',')]
    metrics: Vec<String>,

    /// Importance weight of entities with split antecedents in LEA.
    #[arg(long, default_value_t = 1.0)]
    lea_beta: f64,

    /// Also report scores restricted to split-antecedent anaphors.
    #[arg(long)]
    split_only: bool,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Treat validation violations as fatal.
    #[arg(long)]
    strict: bool,

    /// Score only documents whose key annotates a split-antecedent anaphor.
    #[arg(long)]
    only_docs_with_splits: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare the scorer against its reference implementations on random
    /// instances.
    Selfcheck {
        #[arg(long, default_value_t = 200)]
        instances: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Failures mapped to exit codes.
enum Failure {
    Input(anyhow::Error),
    Invalid(anyhow::Error),
}

fn parse_metrics(names: &[String]) -> anyhow::Result<Vec<Metric>> {
    let mut out = Vec::new();
    for name in names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let batch = if name.eq_ignore_ascii_case("all") {
            Metric::ALL.to_vec()
        } else {
            vec![name.parse::<Metric>().map_err(|e| anyhow::anyhow!("{e}"))?]
        };
        for m in batch {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    if out.is_empty() {
        bail!("no metrics selected");
    }
    Ok(out)
}

fn load(path: &Path) -> anyhow::Result<CorpusFile> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_corpus(&bytes).with_context(|| format!("cannot parse {}", path.display()))
}

fn check(corpus: &CorpusFile, side: &str, strict: bool) -> Result<(), Failure> {
    let mut count = 0;
    for doc in &corpus.documents {
        for v in validate(doc) {
            eprintln!("{}: {side}: {v}", if strict { "error" } else { "warning" });
            count += 1;
        }
    }
    if strict && count > 0 {
        return Err(Failure::Invalid(anyhow::anyhow!(
            "{count} validation violation(s) in {side}"
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let metrics = parse_metrics(&cli.metrics).map_err(Failure::Input)?;
    if !cli.lea_beta.is_finite() || cli.lea_beta < 0.0 {
        return Err(Failure::Input(anyhow::anyhow!(
            "--lea-beta must be a non-negative number"
        )));
    }
    let key_path = cli.key.as_deref().expect("required by clap");
    let response_path = cli.response.as_deref().expect("required by clap");
    let key = load(key_path).map_err(Failure::Input)?;
    let response = load(response_path).map_err(Failure::Input)?;
    check(&key, "key", cli.strict)?;
    check(&response, "response", cli.strict)?;

    let cfg = ScorerConfig {
        metrics,
        lea: LeaConfig::with_beta(cli.lea_beta),
        split_only: cli.split_only,
        only_docs_with_splits: cli.only_docs_with_splits,
    };
    let report = score_corpus(&key.documents, &response.documents, &cfg)
        .map_err(|e| Failure::Invalid(anyhow::anyhow!("cannot score: {e}")))?;
    let format = match cli.format {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
    };
    Ok(render_report(&report, format))
}

fn selfcheck(instances: u64) -> anyhow::Result<()> {
    let mut failures = 0;
    for seed in 0..instances {
        let spec = RandomInstanceSpec {
            seed,
            set_probability: 0.0,
            ..RandomInstanceSpec::default()
        };
        let (key, resp) = generate_instance(&spec);
        for m in Metric::ALL {
            let want = standard_metric(m, &key, &resp)?;
            let got = evaluate(m, &key, &resp, LeaConfig::default()).score;
            if (got.f1() - want.f1).abs() > 1e-9 || (got.recall() - want.recall).abs() > 1e-9 {
                eprintln!(
                    "seed {seed}: {m} differs from the reference ({} vs {})",
                    got.f1(),
                    want.f1
                );
                failures += 1;
            }
        }
        let n = (seed % 6 + 1) as usize;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (((seed as usize + 3 * i + 5 * j * j) % 17) as f64) / 16.0)
                    .collect()
            })
            .collect();
        let m = ScoreMatrix::from_rows(&rows)?;
        let total: f64 = km_assign(&m).iter().map(|&(i, j)| m.get(i, j)).sum();
        if total != brute_force_assignment(&m)? {
            eprintln!("seed {seed}: assignment is not optimal");
            failures += 1;
        }
    }
    println!("selfcheck: {instances} instances, {failures} failure(s)");
    if failures > 0 {
        bail!("selfcheck failed");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(Command::Selfcheck { instances }) = cli.command {
        return match selfcheck(instances) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        };
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
