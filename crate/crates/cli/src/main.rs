mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use xxring_core::report::{encode_csv, encode_json, Document, Meta};
use xxring_core::Error;

use args::{Cli, Command, Format};
use commands::Outcome;

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, String> {
    match std::env::var("XXRING_THREADS") {
        Ok(v) if !v.trim().is_empty() => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(format!(
                "XXRING_THREADS must be a positive integer, got `{v}`"
            )),
            Ok(n) => Ok(Some(n)),
        },
        _ => match flag {
            Some(0) => Err("--threads must be positive".into()),
            other => Ok(other),
        },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Spectrum(_) => "spectrum",
        Command::Ground(_) => "ground",
        Command::Concurrence(_) => "concurrence",
        Command::Lp(_) => "lp",
        Command::Sweep(_) => "sweep",
        Command::Extrapolate(_) => "extrapolate",
        Command::Verify(_) => "verify",
    }
}

fn execute(cli: &Cli) -> xxring_core::Result<Outcome> {
    match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Ground(a) => commands::ground(a),
        Command::Concurrence(a) => commands::concurrence(a),
        Command::Lp(a) => commands::lp(a),
        Command::Sweep(a) => commands::run_sweep(a, cli.timing),
        Command::Extrapolate(a) => commands::run_extrapolate(a),
        Command::Verify(a) => commands::verify(a),
    }
}

fn render(doc: &Document, format: Format) -> xxring_core::Result<String> {
    match format {
        Format::Json => encode_json(doc),
        Format::Csv => encode_csv(&doc.table),
        Format::Table => Ok(doc.table.render_text()),
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("xxring: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match thread_count(cli.threads) {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
            {
                return fail(FAILURE, e);
            }
        }
        Ok(None) => {}
        Err(msg) => return fail(USAGE, msg),
    }

    let start = Instant::now();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e @ Error::InvalidArgument(_)) => return fail(USAGE, e),
        Err(e) => return fail(FAILURE, e),
    };
    let doc = Document {
        command: command_name(&cli.command).to_string(),
        config: outcome.config,
        table: outcome.table,
        meta: Meta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            runtime_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        },
    }
    .rounded();
    let text = match render(&doc, cli.format) {
        Ok(t) => t,
        Err(e) => return fail(FAILURE, e),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return fail(FAILURE, e);
    }
    if outcome.mismatch {
        return fail(FAILURE, "verification found mismatches");
    }
    ExitCode::SUCCESS
}
