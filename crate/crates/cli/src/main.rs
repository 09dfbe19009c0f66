use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use posygp::{dual_model, parse_problem, solve_model, CliError, Model, Options, ReportDocument};

/// Posynomial geometric programs with discrete candidate sets.
///
/// Exit codes: 0 optimal, 2 malformed input, 3 invalid problem,
/// 4 infeasible or unbounded, 5 solver did not converge.
#[derive(Parser)]
#[command(name = "posygp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem, enumerating every admitted candidate assignment.
    Solve {
        path: PathBuf,
        /// Dual stationarity tolerance.
        #[arg(long, value_parser = positive)]
        tolerance: Option<f64>,
        /// Include one row per enumerated assignment.
        #[arg(long)]
        all_assignments: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Cross-check the optimum with a brute-force grid search (up to 4 variables).
        #[arg(long)]
        oracle: bool,
        /// Accepted for script compatibility; the solver is deterministic.
        #[arg(long)]
        seed: Option<u64>,
        /// Report wall-clock time.
        #[arg(long)]
        timing: bool,
    },
    /// Print the dual program of one expansion and its solution.
    Dual {
        path: PathBuf,
        /// Fix a candidate set, e.g. `--assign p=01`.
        #[arg(long, value_parser = assignment)]
        assign: Vec<(String, String)>,
        #[arg(long, value_parser = positive)]
        tolerance: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        timing: bool,
    },
    /// Check a problem file without solving it.
    Validate { path: PathBuf },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

fn assignment(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(name, bits)| (name.trim().to_owned(), bits.trim().to_owned()))
        .ok_or_else(|| format!("expected name=bits, got `{s}`"))
}

fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Text => doc.to_text(),
        Format::Machine => doc.to_machine(),
    }
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    match cli.command {
        Command::Solve { path, tolerance, all_assignments, format, oracle, seed: _, timing } => {
            let model = parse_problem(&path)?;
            let doc = solve_model(&model, &Options { tolerance, all_assignments, oracle, timing })?;
            Ok((render(&doc, format), doc.status.exit_code()))
        }
        Command::Dual { path, assign, tolerance, format, timing } => {
            let model = parse_problem(&path)?;
            let opts = Options { tolerance, timing, ..Options::default() };
            let doc = dual_model(&model, &assign, &opts)?;
            Ok((render(&doc, format), doc.status.exit_code()))
        }
        Command::Validate { path } => {
            let model = parse_problem(&path)?;
            let cg = model.to_choice();
            let kind = match model {
                Model::Fixed(_) => "fixed",
                Model::Choice(_) => "choice",
            };
            let out = format!(
                "valid {kind} problem: {} variables, {} constraints, {} candidate sets, {} combinations\n",
                cg.variables.len(),
                cg.constraints.len(),
                cg.sets.len(),
                cg.combination_count()
            );
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            match code {
                4 => eprintln!("posygp: no optimal solution (infeasible or unbounded)"),
                5 => eprintln!("posygp: solver did not converge"),
                _ => {}
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("posygp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
