// SPDX-License-Identifier: Apache-2.0
//! Text file formats and the SPI stimulus encoder.

mod error;
pub mod program;
pub mod stimulus;
pub mod trace_csv;
pub mod vcd;
pub mod waveform;

pub use error::ParseError;
pub use program::{parse_program, render_program};
pub use stimulus::{parse_stimulus, render_stimulus, Stimulus};
pub use trace_csv::{read_trace_csv, write_trace_csv};
pub use vcd::write_trace_vcd;
pub use waveform::{encode_spi_waveform, SclkDivisor};
