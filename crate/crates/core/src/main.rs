use std::process::ExitCode;

use clap::Parser;
use ncdef::commands::{run, Command, Flags};

/// Universal extension towers and deformation algebras for collections of quiver representations.
#[derive(Parser)]
#[command(name = "ncdef", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(cli.command, &cli.flags);
    let mut text = report.text();
    if let Some(path) = &cli.flags.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            text.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
            print!("{text}");
            return ExitCode::from(2);
        }
    }
    if report.exit_code == 0 || report.error.is_none() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    ExitCode::from(report.exit_code as u8)
}
