// SPDX-License-Identifier: Apache-2.0
//! SPI mode-0 peripheral receiver.
//!
//! Line levels are sampled once per system clock and edges are detected in
//! the system-clock domain, so SCLK must stay at each level for at least one
//! system cycle. A frame is 16 bits, MSB first: address byte, then data byte.
//! Frames may be sent back to back inside one chip-select window; a partial
//! frame is dropped when chip select is released. MISO is not modelled (the
//! peripheral is write-only).

use crate::regfile::WriteEvent;

pub const FRAME_BITS: u8 = 16;

/// Sampled levels of the SPI input pins for one system clock cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpiLineSample {
    pub sclk: bool,
    pub mosi: bool,
    /// Active-low chip select.
    pub cs_n: bool,
}

impl SpiLineSample {
    /// Bus idle: clock low, chip select released.
    pub const IDLE: Self = Self {
        sclk: false,
        mosi: false,
        cs_n: true,
    };
}

impl Default for SpiLineSample {
    fn default() -> Self {
        Self::IDLE
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpiSlaveState {
    pub shift_reg: u16,
    pub bit_count: u8,
    pub prev_sclk: bool,
    pub prev_cs_n: bool,
    pub active: bool,
}

impl Default for SpiSlaveState {
    fn default() -> Self {
        Self::reset()
    }
}

impl SpiSlaveState {
    pub const fn reset() -> Self {
        Self {
            shift_reg: 0,
            bit_count: 0,
            prev_sclk: false,
            prev_cs_n: true,
            active: false,
        }
    }

    pub fn is_idle(&self) -> bool {
        !self.active && self.bit_count == 0
    }

    /// Consumes one sample of the lines, returning a write when a frame
    /// completes on this sample.
    pub fn sample(&mut self, lines: SpiLineSample) -> Option<WriteEvent> {
        let cs_fell = self.prev_cs_n && !lines.cs_n;
        let cs_rose = !self.prev_cs_n && lines.cs_n;
        let sclk_rose = !self.prev_sclk && lines.sclk;
        self.prev_sclk = lines.sclk;
        self.prev_cs_n = lines.cs_n;

        if cs_rose {
            self.active = false;
            self.bit_count = 0;
            self.shift_reg = 0;
            return None;
        }
        if cs_fell {
            self.active = true;
            self.bit_count = 0;
            self.shift_reg = 0;
        }
        if !(self.active && sclk_rose) {
            return None;
        }

        self.shift_reg = (self.shift_reg << 1) | u16::from(lines.mosi);
        self.bit_count += 1;
        if self.bit_count < FRAME_BITS {
            return None;
        }
        let [addr, data] = self.shift_reg.to_be_bytes();
        self.bit_count = 0;
        self.shift_reg = 0;
        Some(WriteEvent { addr, data })
    }
}

/// Replays a waveform through a fresh peripheral and collects the writes.
pub fn decode_waveform<'a>(
    samples: impl IntoIterator<Item = &'a SpiLineSample>,
) -> Vec<WriteEvent> {
    let mut spi = SpiSlaveState::reset();
    samples.into_iter().filter_map(|s| spi.sample(*s)).collect()
}
