//! Command-line front end: run a named preset or a custom experiment
//! and write the records to disk.
//!
//! Precedence for the custom mode, lowest to highest: built-in
//! defaults, a TOML config file, command-line flags, and the
//! DIAGTEACH_SEED environment variable for the master seed.
//!
//! Exit codes: 0 on success, 1 on configuration errors, 2 when any
//! individual run failed (its record carries the message and a NaN
//! value).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde::Deserialize;

use diagteach::gridworld::{KnowledgeLevel, LayoutKind};
use diagteach::harness::{
    emit_results, preset_configs, run_experiment, Domain, ExperimentConfig, Method, OutputFormat,
    PRESET_NAMES,
};

#[derive(Parser, Debug)]
#[command(
    name = "diagteach",
    about = "Diagnose hidden learner parameters, then teach with optimal datasets",
    after_help = "Presets: fig3, fig4, fig5, table-7x7, table-9x9, table-11x11, \
                  table-4rooms9, table-4rooms11. Use `custom` with flags or --config."
)]
struct Cli {
    /// Preset name or `custom`.
    spec: String,

    /// TOML file with experiment settings (custom mode only).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Learner family: ridge, svm, or gridworld.
    #[arg(long)]
    domain: Option<String>,

    /// Teaching method: dei_t, dr_t, rt, or pl.
    #[arg(long)]
    method: Option<String>,

    /// Runs per configuration.
    #[arg(long)]
    runs: Option<usize>,

    /// Probe budget per diagnosis session.
    #[arg(long)]
    probes: Option<usize>,

    /// Upper end of the regularizer hypothesis range.
    #[arg(long)]
    lambda_max: Option<f64>,

    /// Input dimension for the supervised domains (1 to 3).
    #[arg(long)]
    dims: Option<usize>,

    /// Training-set size for passive supervised learners.
    #[arg(long)]
    train_n: Option<usize>,

    /// Gridworld layout: empty_room or four_rooms.
    #[arg(long)]
    env: Option<String>,

    /// Gridworld side length.
    #[arg(long)]
    size: Option<usize>,

    /// Student prior knowledge: none, one_path, some_paths, or all_paths.
    #[arg(long)]
    knowledge: Option<String>,

    /// Demonstrations per teaching batch (K).
    #[arg(long)]
    num_trajectories: Option<usize>,

    /// Master seed; every run seed derives from it.
    #[arg(long)]
    seed: Option<u64>,

    /// Output path; defaults to results/<spec>.<format>.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format: csv or jsonl.
    #[arg(long)]
    format: Option<String>,
}

/// TOML mirror of the command-line flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    domain: Option<String>,
    method: Option<String>,
    runs: Option<usize>,
    probes: Option<usize>,
    lambda_max: Option<f64>,
    lambda_star: Option<f64>,
    dims: Option<usize>,
    train_n: Option<usize>,
    env: Option<String>,
    size: Option<usize>,
    knowledge: Option<String>,
    num_trajectories: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<String>,
}

fn parse_domain(s: &str) -> Result<Domain, String> {
    match s {
        "ridge" => Ok(Domain::Ridge),
        "svm" => Ok(Domain::Svm),
        "gridworld" => Ok(Domain::Gridworld),
        other => Err(format!("unknown domain `{other}` (expected ridge, svm, or gridworld)")),
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    match s {
        "dei_t" => Ok(Method::DeiT),
        "dr_t" => Ok(Method::DrT),
        "rt" => Ok(Method::Rt),
        "pl" => Ok(Method::Pl),
        other => Err(format!("unknown method `{other}` (expected dei_t, dr_t, rt, or pl)")),
    }
}

fn parse_env(s: &str) -> Result<LayoutKind, String> {
    match s {
        "empty_room" => Ok(LayoutKind::EmptyRoom),
        "four_rooms" => Ok(LayoutKind::FourRooms),
        other => Err(format!("unknown env `{other}` (expected empty_room or four_rooms)")),
    }
}

fn parse_knowledge(s: &str) -> Result<KnowledgeLevel, String> {
    match s {
        "none" => Ok(KnowledgeLevel::None),
        "one_path" => Ok(KnowledgeLevel::OnePath),
        "some_paths" => Ok(KnowledgeLevel::SomePaths),
        "all_paths" => Ok(KnowledgeLevel::AllPaths),
        other => Err(format!(
            "unknown knowledge level `{other}` (expected none, one_path, some_paths, or all_paths)"
        )),
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "jsonl" => Ok(OutputFormat::Jsonl),
        other => Err(format!("unknown format `{other}` (expected csv or jsonl)")),
    }
}

fn build_custom(cli: &Cli, file: &FileConfig) -> Result<ExperimentConfig, String> {
    let domain_str = cli
        .domain
        .as_deref()
        .or(file.domain.as_deref())
        .ok_or("custom mode requires --domain (or `domain` in the config file)")?;
    let method_str = cli
        .method
        .as_deref()
        .or(file.method.as_deref())
        .ok_or("custom mode requires --method (or `method` in the config file)")?;
    let mut config = ExperimentConfig::new(parse_domain(domain_str)?, parse_method(method_str)?);

    if let Some(v) = file.runs {
        config.runs = v;
    }
    if let Some(v) = file.probes {
        config.probes_t = v;
    }
    if let Some(v) = file.lambda_max {
        config.lambda_max = v;
    }
    if file.lambda_star.is_some() {
        config.lambda_star = file.lambda_star;
    }
    if let Some(v) = file.dims {
        config.dims = v;
    }
    if let Some(v) = file.train_n {
        config.train_n = v;
    }
    if let Some(s) = &file.env {
        config.env_kind = parse_env(s)?;
    }
    if let Some(v) = file.size {
        config.env_size = v;
    }
    if let Some(s) = &file.knowledge {
        config.knowledge = parse_knowledge(s)?;
    }
    if let Some(v) = file.num_trajectories {
        config.num_trajectories = v;
    }
    if let Some(v) = file.seed {
        config.seed = v;
    }

    if let Some(v) = cli.runs {
        config.runs = v;
    }
    if let Some(v) = cli.probes {
        config.probes_t = v;
    }
    if let Some(v) = cli.lambda_max {
        config.lambda_max = v;
    }
    if let Some(v) = cli.dims {
        config.dims = v;
    }
    if let Some(v) = cli.train_n {
        config.train_n = v;
    }
    if let Some(s) = &cli.env {
        config.env_kind = parse_env(s)?;
    }
    if let Some(v) = cli.size {
        config.env_size = v;
    }
    if let Some(s) = &cli.knowledge {
        config.knowledge = parse_knowledge(s)?;
    }
    if let Some(v) = cli.num_trajectories {
        config.num_trajectories = v;
    }
    if let Some(v) = cli.seed {
        config.seed = v;
    }
    Ok(config)
}

fn run(cli: &Cli) -> Result<u8, String> {
    let file: FileConfig = match &cli.config {
        Some(path) => {
            if cli.spec != "custom" {
                return Err("--config applies to `custom` experiments only".into());
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            toml::from_str(&text).map_err(|e| format!("bad config file: {e}"))?
        }
        None => FileConfig::default(),
    };

    let mut configs = if cli.spec == "custom" {
        vec![build_custom(cli, &file)?]
    } else {
        let configs = preset_configs(&cli.spec).ok_or_else(|| {
            format!(
                "unknown preset `{}` (expected custom or one of: {})",
                cli.spec,
                PRESET_NAMES.join(", ")
            )
        })?;
        for flag in [
            ("--domain", cli.domain.is_some()),
            ("--method", cli.method.is_some()),
            ("--lambda-max", cli.lambda_max.is_some()),
            ("--dims", cli.dims.is_some()),
            ("--train-n", cli.train_n.is_some()),
            ("--env", cli.env.is_some()),
            ("--size", cli.size.is_some()),
            ("--knowledge", cli.knowledge.is_some()),
            ("--num-trajectories", cli.num_trajectories.is_some()),
        ] {
            if flag.1 {
                return Err(format!("{} conflicts with preset `{}`", flag.0, cli.spec));
            }
        }
        let mut configs = configs;
        for c in &mut configs {
            if let Some(v) = cli.runs {
                c.runs = v;
            }
            if let Some(v) = cli.probes {
                c.probes_t = v;
            }
            if let Some(v) = cli.seed {
                c.seed = v;
            }
        }
        configs
    };

    if let Ok(text) = std::env::var("DIAGTEACH_SEED") {
        let seed: u64 = text
            .parse()
            .map_err(|_| format!("DIAGTEACH_SEED must be an unsigned integer, got `{text}`"))?;
        for c in &mut configs {
            c.seed = seed;
        }
    }

    let format_str = cli.format.as_deref().or(file.format.as_deref()).unwrap_or("csv");
    let format = parse_format(format_str)?;
    let out = cli
        .out
        .clone()
        .or(file.out.clone())
        .unwrap_or_else(|| {
            let ext = match format {
                OutputFormat::Csv => "csv",
                OutputFormat::Jsonl => "jsonl",
            };
            PathBuf::from(format!("results/{}.{ext}", cli.spec))
        });

    let mut records = Vec::new();
    for config in &configs {
        config.validate().map_err(|e| e.to_string())?;
        records.extend(run_experiment(config).map_err(|e| e.to_string())?);
    }
    emit_results(&records, &out, format).map_err(|e| e.to_string())?;

    let failures: Vec<&_> = records.iter().filter(|r| r.error.is_some()).collect();
    println!(
        "wrote {} records from {} configuration(s) to {}",
        records.len(),
        configs.len(),
        out.display()
    );
    if !failures.is_empty() {
        for r in &failures {
            eprintln!(
                "run failed: {:?}/{} run {}: {}",
                r.domain,
                r.method.name(),
                r.seed,
                r.error.as_deref().unwrap_or("unknown")
            );
        }
        return Ok(2);
    }
    Ok(0)
}

fn main() -> ExitCode {
    // Flag parse failures are configuration errors (exit 1); help and
    // version requests are not errors at all.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
