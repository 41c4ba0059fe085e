// SPDX-License-Identifier: Apache-2.0
//! Renders register programs as SPI mode-0 line waveforms.

use std::fmt;

use thiserror::Error;

use crate::regfile::WriteEvent;
use crate::spi::{SpiLineSample, FRAME_BITS};

/// System clock cycles per SCLK period. Must be at least 2 so the
/// peripheral sees every SCLK level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SclkDivisor(u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("SCLK divisor must be at least 2, got {0}")]
pub struct InvalidDivisor(pub u32);

impl SclkDivisor {
    pub const MIN: u32 = 2;

    pub fn new(cycles: u32) -> Result<Self, InvalidDivisor> {
        if cycles < Self::MIN {
            Err(InvalidDivisor(cycles))
        } else {
            Ok(Self(cycles))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Cycles with SCLK low; odd divisors give the extra cycle to this phase.
    pub fn low_cycles(self) -> u32 {
        self.0.div_ceil(2)
    }

    pub fn high_cycles(self) -> u32 {
        self.0 / 2
    }
}

impl fmt::Display for SclkDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Encodes `program` as one chip-select window of back-to-back 16-bit frames.
///
/// Layout: one idle sample, then CS low for every bit (MOSI set with SCLK
/// low, held through the high phase), then CS released with SCLK low, then
/// one more idle sample. An empty program produces no samples.
pub fn encode_spi_waveform(program: &[WriteEvent], divisor: SclkDivisor) -> Vec<SpiLineSample> {
    if program.is_empty() {
        return Vec::new();
    }
    let per_bit = divisor.get() as usize;
    let mut wave = Vec::with_capacity(3 + program.len() * usize::from(FRAME_BITS) * per_bit);
    wave.push(SpiLineSample::IDLE);
    for ev in program {
        let word = u16::from_be_bytes([ev.addr, ev.data]);
        for k in (0..FRAME_BITS).rev() {
            let mosi = (word >> k) & 1 == 1;
            let sample = |sclk| SpiLineSample {
                sclk,
                mosi,
                cs_n: false,
            };
            wave.extend((0..divisor.low_cycles()).map(|_| sample(false)));
            wave.extend((0..divisor.high_cycles()).map(|_| sample(true)));
        }
    }
    wave.push(SpiLineSample::IDLE);
    wave.push(SpiLineSample::IDLE);
    wave
}
