mod args;
mod commands;
mod output;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use fibzeta::Error;

use args::Cli;
use commands::Failure;
use output::{PoleAtReport, PoleProximityReport};

const EXIT_USAGE: u8 = 1;
const EXIT_POLE: u8 = 2;
const EXIT_FAULT: u8 = 3;

fn report<T: serde::Serialize>(value: &T) {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let _ = serde_json::to_writer_pretty(&mut lock, value);
    let _ = writeln!(lock);
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = commands::run(&cli, &mut out);
    let flushed = out.flush();
    drop(out);

    match result.and(flushed.map_err(Failure::Io)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidOrder(_) | Error::Domain(_) => ExitCode::from(EXIT_USAGE),
                Error::PoleProximity(t) => {
                    report(&PoleProximityReport::from(&t));
                    ExitCode::from(EXIT_POLE)
                }
                Error::Pole { m } => {
                    report(&PoleAtReport { error: "pole", m });
                    ExitCode::from(EXIT_POLE)
                }
                Error::Truncation { .. } | Error::PrecisionFault(_) => ExitCode::from(EXIT_FAULT),
            }
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAULT)
        }
    }
}
