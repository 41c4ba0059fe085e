// SPDX-License-Identifier: Apache-2.0
//! Command-line front end: run a programmed simulation, differential-check
//! the model against the oracle, or write the Verilog sources.
//!
//! Exit codes: 0 success, 1 mismatch, 2 usage or parse error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use snn_chip::check::run_check;
use snn_chip::hdl::{emit_verilog, lint::lint_bundle};
use snn_chip::io::{parse_program, parse_stimulus, write_trace_csv, write_trace_vcd, SclkDivisor};
use snn_chip::{run_simulation, ProgramMode};

#[derive(Parser)]
#[command(
    name = "snnchip",
    version,
    about = "Spiking-neuron array chip simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Program the chip and simulate a stimulus file.
    Run(RunArgs),
    /// Compare the network model with the reference oracle on random episodes.
    Check {
        #[arg(long, default_value_t = 1000)]
        episodes: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cycles per episode.
        #[arg(long, default_value_t = 200)]
        cycles: usize,
    },
    /// Write the Verilog sources of the chip.
    EmitVerilog {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Register program (`write <addr> <data>` lines).
    #[arg(long)]
    program: PathBuf,
    /// Stimulus CSV.
    #[arg(long)]
    stimulus: PathBuf,
    /// Stimulus cycles to simulate after programming.
    #[arg(long)]
    cycles: u64,
    /// Trace CSV output.
    #[arg(long)]
    trace: PathBuf,
    /// Optional VCD output.
    #[arg(long)]
    vcd: Option<PathBuf>,
    /// System clock cycles per SCLK period when programming over SPI.
    #[arg(long, default_value_t = 4, conflicts_with = "direct")]
    spi_divisor: u32,
    /// Write the registers directly instead of shifting the program in.
    #[arg(long)]
    direct: bool,
}

enum Failure {
    Mismatch(String),
    Usage(String),
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let program = parse_program(&read(&args.program)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.program.display())))?;
    let stimulus = parse_stimulus(&read(&args.stimulus)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.stimulus.display())))?;
    let mode = if args.direct {
        ProgramMode::Direct
    } else {
        ProgramMode::Spi(
            SclkDivisor::new(args.spi_divisor).map_err(|e| Failure::Usage(e.to_string()))?,
        )
    };
    let cycles =
        usize::try_from(args.cycles).map_err(|_| Failure::Usage("--cycles is too large".into()))?;

    let trace = run_simulation(&program, &stimulus.held(cycles), args.cycles, mode);
    for (cycle, ev) in &trace.ignored_writes {
        eprintln!(
            "warning: cycle {cycle}: write to unmapped address 0x{:02X} ignored",
            ev.addr
        );
    }
    write(&args.trace, &write_trace_csv(&trace.records))?;
    if let Some(vcd) = &args.vcd {
        write(vcd, &write_trace_vcd(&trace.records))?;
    }
    println!(
        "simulated {} cycles ({} programming), {} register writes ignored",
        trace.records.len(),
        trace.programming_cycles,
        trace.ignored_writes.len()
    );
    Ok(())
}

fn check(episodes: u64, seed: u64, cycles: usize) -> Result<(), Failure> {
    let report = run_check(episodes, seed, cycles);
    match report.first_divergence {
        Some(d) => Err(Failure::Mismatch(d.to_string())),
        None => {
            println!("{episodes} episodes x {cycles} cycles (seed {seed}): model matches oracle");
            Ok(())
        }
    }
}

fn emit(out: &Path) -> Result<(), Failure> {
    let bundle = emit_verilog();
    let violations = lint_bundle(&bundle);
    if !violations.is_empty() {
        let lines: Vec<_> = violations.iter().map(ToString::to_string).collect();
        return Err(Failure::Mismatch(lines.join("\n")));
    }
    bundle
        .write_to(out)
        .map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
    for (name, _) in &bundle.files {
        println!("{}", out.join(name).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Check {
            episodes,
            seed,
            cycles,
        } => check(episodes, seed, cycles),
        Command::EmitVerilog { out } => emit(&out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
