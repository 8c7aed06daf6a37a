//! `nadyn` command-line interface.
//!
//! Exit codes: 0 on a completed analysis (INCONCLUSIVE verdicts included),
//! 2 on malformed input, 3 when the part budget is exceeded, 4 on an
//! unknown command or example.

mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use nadyn::Error;

use crate::args::Cli;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::UnknownExample(_) => 4,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::UnknownExample(_) => "unknown_example",
        Error::SystemFile { .. } => "system_file",
        Error::PieceGap { .. } => "piece_gap",
        Error::PieceOverlap { .. } => "piece_overlap",
        Error::NotSelfMap { .. } => "not_self_map",
        Error::OutOfDomain { .. } => "out_of_domain",
        Error::ParseRational { .. } | Error::ParseInterval { .. } | Error::MalformedInterval(_) => {
            "parse"
        }
        Error::NotInvariant { .. } => "not_invariant",
        _ => "invalid_input",
    }
}

fn diagnostic(e: &Error) -> serde_json::Value {
    let mut d = serde_json::json!({
        "error": error_kind(e),
        "message": e.to_string(),
    });
    if let Error::SystemFile {
        path,
        location,
        source,
        ..
    } = e
    {
        d["path"] = path.clone().into();
        d["location"] = location.clone().into();
        if let Some(inner) = source {
            d["cause"] = error_kind(inner).into();
        }
    }
    if let Error::BudgetExceeded {
        step,
        parts,
        max_parts,
    } = e
    {
        d["step"] = (*step).into();
        d["parts"] = (*parts).into();
        d["max_parts"] = (*max_parts).into();
    }
    d
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand => 4,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 2,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let mut err = std::io::stderr().lock();
            let _ = writeln!(err, "{}", diagnostic(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}
