use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sepgrad_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(report) => {
            let payload = if report.ends_with('\n') {
                report
            } else {
                format!("{report}\n")
            };
            match cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, payload) {
                        eprintln!(
                            "{}",
                            serde_json::json!({ "error": "io", "message": e.to_string() })
                        );
                        return ExitCode::from(2);
                    }
                }
                None => {
                    print!("{payload}");
                    let _ = std::io::stdout().flush();
                }
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": err.kind(), "message": err.to_string() })
            );
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
