use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rust_decimal::Decimal;

use claimgate_core::pipeline::{analyze, inspect_applicant, run_pipeline, SEED_ENV};
use claimgate_core::roi::{sensitivity_csv, sensitivity_table, sensitivity_text};
use claimgate_core::{PipelineConfig, PipelineError, RoiParams};

#[derive(Parser)]
#[command(name = "claimgate", version, about = "Claim verification and screening analytics for hiring campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline for a campaign and write reports.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the ROI sensitivity table for a list of applicant volumes.
    Roi {
        /// Comma-separated applicant volumes.
        #[arg(long, value_delimiter = ',', required = true)]
        volumes: Vec<u64>,
        /// Recruiter rate in dollars per hour.
        #[arg(long, default_value = "50")]
        rate: String,
        #[arg(long, default_value = "10")]
        traditional_minutes: String,
        #[arg(long, default_value = "2")]
        assisted_minutes: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Show claims, questions, scores and flags for one applicant.
    Inspect {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        applicant: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

fn load_config(path: &PathBuf) -> Result<PipelineConfig, PipelineError> {
    let mut config = PipelineConfig::from_file(path)?;
    config.apply_seed_override(std::env::var(SEED_ENV).ok().as_deref())?;
    Ok(config)
}

fn run(config: &PathBuf) -> Result<(), PipelineError> {
    let config = load_config(config)?;
    let (run, files) = run_pipeline(&config)?;
    let r = &run.report;
    println!(
        "applicants {}  completed {}  completion {}  diamonds {}",
        r.ledger.n_total(),
        r.ledger.n_completed(),
        r.completion_rate.as_deref().unwrap_or("n/a"),
        r.ledger.n_diamonds()
    );
    if let Some(roi) = &r.roi {
        println!(
            "time saved {:.1} hr  cost saved ${:.0}  speed-up {}",
            roi.time_saved, roi.cost_saved, roi.speed_improvement
        );
    }
    if let Some(rate) = &r.flag_rate {
        println!("integrity flag rate {rate}");
    }
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn parse_decimal(name: &str, v: &str) -> Result<Decimal, String> {
    Decimal::from_str(v.trim()).map_err(|e| format!("--{name}: {e}"))
}

fn roi(volumes: &[u64], rate: &str, trad: &str, assisted: &str, format: Format) -> Result<(), String> {
    let p = RoiParams {
        rate: parse_decimal("rate", rate)?,
        traditional_minutes: parse_decimal("traditional-minutes", trad)?,
        assisted_minutes: parse_decimal("assisted-minutes", assisted)?,
    };
    p.validate().map_err(|e| e.to_string())?;
    let rows = sensitivity_table(volumes, &p);
    match format {
        Format::Text => print!("{}", sensitivity_text(&rows, &p)),
        Format::Csv => print!("{}", sensitivity_csv(&rows)),
    }
    Ok(())
}

fn inspect(config: &PathBuf, applicant: &str) -> Result<Option<String>, PipelineError> {
    let config = load_config(config)?;
    let run = analyze(&config)?;
    Ok(inspect_applicant(&run, applicant))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config } => match run(&config) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Command::Roi {
            volumes,
            rate,
            traditional_minutes,
            assisted_minutes,
            format,
        } => match roi(&volumes, &rate, &traditional_minutes, &assisted_minutes, format) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Inspect { config, applicant } => match inspect(&config, &applicant) {
            Ok(Some(text)) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Ok(None) => {
                eprintln!("error: no applicant `{applicant}` in campaign");
                ExitCode::from(2)
            }
            Err(e) => fail(&e),
        },
    }
}

fn fail(e: &PipelineError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
