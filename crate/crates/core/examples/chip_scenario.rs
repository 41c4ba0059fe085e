// SPDX-License-Identifier: Apache-2.0
//! Program the chip over SPI, run a stimulus and write CSV and VCD traces.
//!
//! cargo run --example chip_scenario -- [OUT_DIR]

use std::path::PathBuf;

use snn_chip::io::{parse_program, parse_stimulus, write_trace_csv, write_trace_vcd, SclkDivisor};
use snn_chip::{run_simulation, ProgramMode};

fn main() -> std::io::Result<()> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "target/chip_scenario".into()),
    );
    let program = parse_program(include_str!("data/identity.prog")).expect("valid program");
    let stimulus = parse_stimulus(include_str!("data/pulse.csv")).expect("valid stimulus");

    let cycles = 20;
    let mode = ProgramMode::Spi(SclkDivisor::new(4).expect("divisor >= 2"));
    let trace = run_simulation(&program, &stimulus.held(cycles), cycles as u64, mode);

    println!("programming took {} cycles", trace.programming_cycles);
    println!("cycle  L1  L2  membranes");
    for r in trace.after_programming() {
        let bits = |s: [bool; 3]| {
            s.iter()
                .map(|b| if *b { '1' } else { '.' })
                .collect::<String>()
        };
        println!(
            "{:>5}  {} {}  {:?}",
            r.cycle,
            bits(r.layer1_spikes()),
            bits(r.layer2_spikes()),
            r.membranes
        );
    }

    std::fs::create_dir_all(&out)?;
    std::fs::write(out.join("trace.csv"), write_trace_csv(&trace.records))?;
    std::fs::write(out.join("trace.vcd"), write_trace_vcd(&trace.records))?;
    println!("wrote {}/trace.csv and trace.vcd", out.display());
    Ok(())
}
