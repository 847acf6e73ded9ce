//! `stgame`: inspect, convert and solve spacetime games.
//!
//! Exit codes: 0 on success, 1 when an input fails to load or validate
//! (a JSON error line goes to stderr), 2 on usage errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "stgame", version, about = "Spacetime games with perfect information")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a game or extensive-form file and report its consistency.
    Validate { file: PathBuf },
    /// Print the precedence DAG (transitive reduction) as DOT.
    Dag {
        file: PathBuf,
        /// Use actual precedence instead of timelike precedence.
        #[arg(long)]
        actual: bool,
    },
    /// List the complete histories.
    Histories {
        file: PathBuf,
        /// Append each history's payoff vector.
        #[arg(long)]
        payoffs: bool,
    },
    /// Print the strategic form as a TSV table.
    Strategic { file: PathBuf },
    /// Print the reduced strategic form as a TSV table.
    Reduced { file: PathBuf },
    /// Build the equivalent extensive-form game.
    Extensive {
        file: PathBuf,
        /// Index of the linearization to use, in enumeration order.
        #[arg(long, default_value_t = 0)]
        linearization: usize,
        #[arg(long, value_enum, default_value_t = TreeFormat::Dot)]
        format: TreeFormat,
    },
    /// Solve a game or extensive-form file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        concept: Concept,
        /// Work on the reduced strategic form.
        #[arg(long)]
        reduced: bool,
        /// Restrict maximin to one agent.
        #[arg(long)]
        agent: Option<String>,
    },
    /// Decide whether an extensive-form game is a spacetime game.
    Interpret {
        file: PathBuf,
        /// Maximum number of linearizations to try.
        #[arg(long, default_value_t = spacetime_games::extensive::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Write the bundled example files into a directory.
    Examples {
        #[arg(default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Dot,
    Counts,
    Efg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Concept {
    Nash,
    Spe,
    Dominance,
    Maximin,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Dag { file, actual } => commands::dag(&file, actual),
        Command::Histories { file, payoffs } => commands::histories(&file, payoffs),
        Command::Strategic { file } => commands::strategic(&file, false),
        Command::Reduced { file } => commands::strategic(&file, true),
        Command::Extensive {
            file,
            linearization,
            format,
        } => commands::extensive(&file, linearization, format),
        Command::Solve {
            file,
            concept,
            reduced,
            agent,
        } => commands::solve(&file, concept, reduced, agent.as_deref()),
        Command::Interpret { file, budget } => commands::interpret(&file, budget),
        Command::Examples { dir } => commands::examples(&dir),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            ExitCode::from(e.exit_code())
        }
    }
}
