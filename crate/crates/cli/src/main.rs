mod commands;
mod config;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use config::{Cli, CliError, CliResult, Command, Format, OutputArgs, RunConfig};

fn emit<T: Serialize>(cfg: &RunConfig, value: &T, text: impl FnOnce(&T) -> String) -> CliResult<()> {
    let body = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Check(format!("serialization: {e}")))?;
            s.push('\n');
            s
        }
        Format::Text => text(value),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(|e| CliError::Usage(format!("stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let base = |output: &OutputArgs| RunConfig::new(output);
    match cli.command {
        Command::Faces { arrangement, covectors, output } => {
            let mut cfg = base(&output)?;
            cfg.arrangement = Some(arrangement.spec()?);
            cfg.covectors = covectors;
            let r = commands::cmd_faces(&cfg)?;
            emit(&cfg, &r, render::faces)
        }
        Command::Salvetti { arrangement, p, twist, output } => {
            let mut cfg = base(&output)?;
            cfg.arrangement = Some(arrangement.spec()?);
            cfg.p = p;
            cfg.twist = twist.into();
            let r = commands::cmd_salvetti(&cfg)?;
            emit(&cfg, &r, |r| render::salvetti(r, cfg.boxes))
        }
        Command::Homology { arrangement, p, twist, unquotiented, output } => {
            let mut cfg = base(&output)?;
            cfg.arrangement = Some(arrangement.spec()?);
            cfg.p = Some(p);
            cfg.twist = twist.into();
            cfg.unquotiented = unquotiented;
            let r = commands::cmd_homology(&cfg)?;
            emit(&cfg, &r, render::homology)
        }
        Command::Compare { arrangement, sub, p, twist, output } => {
            let mut cfg = base(&output)?;
            cfg.arrangement = Some(arrangement.spec()?);
            cfg.sub = Some(sub.spec(arrangement.n)?);
            cfg.p = Some(p);
            cfg.twist = twist.into();
            let r = commands::cmd_compare(&cfg)?;
            emit(&cfg, &r, render::compare)
        }
        Command::Report { p, output } => {
            let mut cfg = base(&output)?;
            cfg.extra_primes = p;
            let bundle = commands::cmd_report(&cfg)?;
            emit(&cfg, &bundle, |b| render::report(b, cfg.boxes))?;
            let failed: Vec<&str> = bundle.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Check(format!("{} check(s) failed:\n  {}", failed.len(), failed.join("\n  "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("salkit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
