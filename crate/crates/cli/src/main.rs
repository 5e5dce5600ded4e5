use clap::{Parser, Subcommand};
use legendre_cli::Overrides;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "legendre", version, about = "Legendre curves in normed planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline described by a JSON config.
    Run {
        config: PathBuf,
        /// Override the curve sample count.
        #[arg(long)]
        samples: Option<usize>,
        /// Directory for relative output paths.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run {
            config,
            samples,
            out,
        } => {
            let code = legendre_cli::run_file(&config, &Overrides { samples, out });
            ExitCode::from(code as u8)
        }
    }
}
