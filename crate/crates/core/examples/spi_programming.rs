// SPDX-License-Identifier: Apache-2.0
//! Encode a register program as an SPI waveform, shift it into the chip and
//! confirm the register file matches a direct write.
//!
//! cargo run --example spi_programming

use snn_chip::chip::{ChipInputs, ChipState};
use snn_chip::io::{encode_spi_waveform, parse_program, SclkDivisor};
use snn_chip::RegisterFile;

const PROGRAM: &str = "\
write 0x09 10   # threshold
write 0x0A 1    # leak
write 0x0B 2    # refractory period
write 0x00 0xFF
write 0x20 0x55 # unmapped, ignored
";

fn main() {
    let program = parse_program(PROGRAM).expect("valid program");
    let divisor = SclkDivisor::new(4).expect("divisor >= 2");
    let wave = encode_spi_waveform(&program, divisor);
    println!("{} writes -> {} line samples", program.len(), wave.len());

    let mut chip = ChipState::reset();
    for lines in wave {
        let (_, committed) = chip.step_observed(ChipInputs::spi(lines));
        if let Some(c) = committed {
            println!(
                "cycle {:>4}: write 0x{:02X} <- 0x{:02X} ({:?})",
                chip.cycle, c.event.addr, c.event.data, c.outcome
            );
        }
    }

    let mut direct = RegisterFile::reset();
    direct.apply(&program);
    assert_eq!(chip.rf, direct);
    println!("register file: {:02X?}", chip.rf.as_bytes());
}
