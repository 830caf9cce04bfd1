use std::process::ExitCode;

use clap::Parser;
use multiplank_cli::{execute, exit_code, Cli, CliError, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();

    // MULTIPLANK_THREADS caps internal parallelism; unset keeps the default.
    if let Ok(value) = std::env::var("MULTIPLANK_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        } else {
            eprintln!("ignoring MULTIPLANK_THREADS={value:?}: not a number");
        }
    }

    let scene_path = match &cli.scene {
        Some(p) => p.clone(),
        None => {
            eprintln!("error: --scene is required");
            return ExitCode::from(2);
        }
    };
    if cli.command == Command::Render && cli.out.is_none() {
        eprintln!("error: render requires --out");
        return ExitCode::from(2);
    }
    let scene_bytes = match std::fs::read(&scene_path) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", scene_path.display());
            return ExitCode::from(2);
        }
    };

    match execute(&cli, &scene_bytes) {
        Ok(output) => {
            print!("{}", output.report.canonical_json());
            eprintln!("wall time: {:.1} ms", output.report.wall_time_ms);
            ExitCode::from(exit_code(&output.report) as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                CliError::Input(_) | CliError::Io(_) => 2,
            })
        }
    }
}
