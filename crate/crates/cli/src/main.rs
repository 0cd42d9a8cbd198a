use std::path::PathBuf;
use std::process::ExitCode;

use cayley_core::config::ExperimentConfig;
use cayley_core::experiments::{self, Command as Run, ExperimentOutput};
use cayley_core::report::{any_failure, emit_report, render, Format};
use cayley_core::{Error, GroupDescriptor};
use clap::{Args, Parser, Subcommand};

/// Spectral-gap checks for Cayley graphs on finite groups.
///
/// Exit status: 0 when every report passes, 1 when any report fails,
/// 2 on a hypothesis or configuration error.
#[derive(Parser, Debug)]
#[command(name = "cayley", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format (default: csv).
    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Report file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Scan every progression regardless of the modulus.
    #[arg(long, global = true)]
    exhaustive: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dense and block spectra of the configured Cayley graph.
    Spectrum,
    /// Every spectral-gap bound whose hypothesis the configured set meets.
    Bounds,
    /// Bohr-set calculus over the representation catalog.
    Bohr,
    /// Progression and Bohr-set scans in Z/N.
    Scan,
    /// One of: cube-free, bk-sets, additive-basis, sparse-plus-interval.
    Experiment { name: String },
}

/// Group used by an experiment when no configuration is given.
fn default_group(name: &str) -> GroupDescriptor {
    let n = match name {
        "cube-free" => 13,
        "bk-sets" => 101,
        "additive-basis" => 211,
        _ => 1009,
    };
    GroupDescriptor::Cyclic { n }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let mut config = match (&cli.common.config, &cli.command) {
        (Some(path), _) => ExperimentConfig::load(path)?,
        (None, Command::Experiment { name }) => ExperimentConfig {
            experiment: Some(name.clone()),
            seed: 0,
            group: default_group(name),
            set: None,
            params: Default::default(),
            output: Default::default(),
        },
        (None, _) => return Err(Error::Config("--config is required for this subcommand".into())),
    };
    if let Some(seed) = cli.common.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn execute(cli: &Cli) -> Result<ExperimentOutput, Error> {
    let config = load_config(cli)?;
    let command = match &cli.command {
        Command::Spectrum => Run::Spectrum,
        Command::Bounds => Run::Bounds,
        Command::Bohr => Run::Bohr,
        Command::Scan => Run::Scan,
        Command::Experiment { name } => Run::Experiment(name.clone()),
    };
    let output = experiments::run(&command, &config, cli.common.exhaustive)?;
    let format = match &cli.common.format {
        Some(f) => f.parse()?,
        None => config.output.format.unwrap_or(Format::Csv),
    };
    match cli.common.out.as_ref().or(config.output.path.as_ref()) {
        Some(path) => emit_report(&output.reports, format, path)?,
        None => print!("{}", render(&output.reports, format)),
    }
    Ok(output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(output) => {
            for (key, value) in &output.notes {
                eprintln!("{key} = {value:.12}");
            }
            for reason in &output.skipped {
                eprintln!("skipped {reason}");
            }
            if any_failure(&output.reports) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_are_accepted_after_the_subcommand() {
        let cli = Cli::try_parse_from(["cayley", "experiment", "bk-sets", "--seed", "9", "--format", "json", "--exhaustive"]).unwrap();
        assert_eq!(cli.common.seed, Some(9));
        assert!(cli.common.exhaustive);
        let config = load_config(&cli).unwrap();
        assert_eq!(config.seed, 9);
        assert_eq!(config.group, GroupDescriptor::Cyclic { n: 101 });
    }

    #[test]
    fn unknown_format_is_rejected() {
        assert!(Cli::try_parse_from(["cayley", "bounds", "--format", "xml"]).is_err());
    }

    #[test]
    fn config_is_required_outside_experiments() {
        let cli = Cli::try_parse_from(["cayley", "scan"]).unwrap();
        assert!(matches!(load_config(&cli), Err(Error::Config(_))));
    }
}
