mod args;
mod commands;
mod config;
mod output;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};
use mobius_fq::{Budget, Error, FieldCtx};
use serde_json::json;

use args::{Cli, Command};
use commands::{run, Env};
use output::{render, Header};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn command_params(command: &Command) -> (String, serde_json::Value) {
    let value = match command {
        Command::Pnt(a) => json!(a),
        Command::MobiusSums(a) | Command::DivisorMoments(a) => json!(a),
        Command::HayesLfunc(a)
        | Command::RhCheck(a)
        | Command::EulerCheck(a)
        | Command::PrincipalCheck(a)
        | Command::LogderivCheck(a) => json!(a),
        Command::LinearCorr(a) => json!(a),
        Command::QuadCorr(a) => json!(a),
        Command::HankelCorr(a) => json!(a),
        Command::VaughanAudit(a) => json!(a),
        Command::GaussSums(a) => json!(a),
        Command::Isotropic(a) => json!(a),
        Command::RankStats(a) => json!(a),
        Command::ExponentSweep(a) => json!(a),
    };
    (command.name().to_string(), value)
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("{msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let raw: Vec<_> = std::env::args_os().collect();
    let argv = match config::expand(raw) {
        Ok(a) => a,
        Err(msg) => return fail(EXIT_USAGE, &format!("error: {msg}")),
    };
    let cli = match Cli::command().try_get_matches_from(argv).and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(w) = cli.workers {
        if w == 0 {
            return fail(EXIT_USAGE, "error: --workers must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            return fail(EXIT_USAGE, &format!("error: {e}"));
        }
    }
    let ctx = match cli.field.parse().and_then(FieldCtx::from_spec) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_USAGE, &format!("error: {e}")),
    };
    let env = Env {
        ctx,
        budget: Budget(cli.budget),
        seed: cli.seed,
    };
    let (name, params) = command_params(&cli.command);
    let header = Header {
        version: env!("CARGO_PKG_VERSION"),
        command: name,
        field: env.ctx.spec().to_string(),
        seed: cli.seed,
        budget: cli.budget,
        config: json!({ "format": cli.format, "params": params }),
    };
    let outcome = match run(&cli.command, &env) {
        Ok(o) => o,
        Err(e @ Error::Identity(_)) => return fail(EXIT_VIOLATION, &e.to_string()),
        Err(e) => return fail(EXIT_USAGE, &format!("error: {e}")),
    };
    let text = render(&header, &outcome.report, cli.format);
    let written = match &cli.out {
        Some(path) => fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return fail(EXIT_USAGE, &format!("error: cannot write output: {e}"));
    }
    match outcome.violation {
        Some(msg) => fail(EXIT_VIOLATION, &format!("identity violated: {msg}")),
        None => ExitCode::SUCCESS,
    }
}
