use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tricorr::output::{emit_csv, emit_plot_script, write_csv};
use tricorr::presets::{self, PRESETS};
use tricorr::scenario::{self, parse_config, ConfigError, ScenarioConfig, ScenarioError};

/// Correlations of the two-photon state emitted by a driven three-level atom.
#[derive(Parser)]
#[command(name = "tricorr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a built-in preset.
    Run(RunArgs),
    /// Built-in scenarios.
    Presets {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand)]
enum PresetAction {
    /// Print preset names and descriptions.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// JSON scenario file.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    config: Option<PathBuf>,
    /// Name of a built-in scenario (see `tricorr presets list`).
    #[arg(long)]
    preset: Option<String>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script for the CSV (needs --out).
    #[arg(long, requires = "out")]
    plot: Option<PathBuf>,
    /// Override the integration step.
    #[arg(long)]
    dt: Option<f64>,
    /// Worker threads for sampling and sweeps.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn config_error(message: String) -> ScenarioError {
    ConfigError { line: None, message }.into()
}

fn io_error(path: &Path, source: std::io::Error) -> ScenarioError {
    ScenarioError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn load(args: &RunArgs) -> Result<ScenarioConfig, ScenarioError> {
    let (origin, text) = match (&args.config, &args.preset) {
        (Some(path), _) => (
            path.display().to_string(),
            std::fs::read_to_string(path).map_err(|e| io_error(path, e))?,
        ),
        (None, Some(name)) => {
            let preset = presets::find(name).ok_or_else(|| config_error(format!("unknown preset '{name}'")))?;
            (name.clone(), preset.source.to_string())
        }
        (None, None) => unreachable!("clap requires --config or --preset"),
    };
    let parsed = parse_config(&text).map_err(|e| config_error(format!("{origin}: {e}")))?;
    for warning in &parsed.warnings {
        log::warn!("{warning}");
    }
    let mut config = parsed.config;
    if let Some(dt) = args.dt {
        config.dt = dt;
        config
            .validate()
            .map_err(|(_, message)| config_error(format!("--dt {dt}: {message}")))?;
    }
    Ok(config)
}

fn run(args: RunArgs) -> Result<(), ScenarioError> {
    if args.threads == 0 {
        return Err(config_error("--threads must be at least 1".into()));
    }
    let config = load(&args)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| ScenarioError::Output(e.to_string()))?;
    let records = pool.install(|| scenario::run(&config))?;

    let failed = records.iter().filter(|r| r.is_failed()).count();
    if failed > 0 {
        log::warn!(
            "{failed} of {} points failed and are marked in optimizer_flag",
            records.len()
        );
    }

    match &args.out {
        Some(path) => emit_csv(&records, path).map_err(|e| ScenarioError::Output(e.to_string()))?,
        None => write_csv(&records, std::io::stdout().lock()).map_err(|e| io_error(Path::new("<stdout>"), e))?,
    }
    if let (Some(script), Some(csv)) = (&args.plot, &args.out) {
        emit_plot_script(&records, config.key_label(), csv, script)
            .map_err(|e| ScenarioError::Output(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // Usage errors are configuration errors (exit 1); clap's default is 2.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Presets {
            action: PresetAction::List,
        } => {
            for p in PRESETS {
                println!("{:<14} {}", p.name, p.description);
            }
            ExitCode::SUCCESS
        }
        Command::Run(args) => match run(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        },
    }
}
