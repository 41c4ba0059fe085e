// SPDX-License-Identifier: Apache-2.0
//! Byte-wide programmable register file.
//!
//! | address     | contents                                  |
//! |-------------|-------------------------------------------|
//! | 0x00..=0x08 | weight `w[i][j]` at address `i * 3 + j`    |
//! | 0x09        | threshold                                 |
//! | 0x0A        | leak                                      |
//! | 0x0B        | refractory period                         |
//!
//! Writes to 0x0C and above are ignored.

use crate::lif::NeuronParams;
use crate::network::WeightMatrix;

pub const NUM_REGISTERS: usize = 12;

pub const ADDR_THRESHOLD: u8 = 0x09;
pub const ADDR_LEAK: u8 = 0x0A;
pub const ADDR_REFRACTORY: u8 = 0x0B;

/// The normative register map as `(address, name)` pairs, in address order.
pub const REGISTER_MAP: [(u8, &str); NUM_REGISTERS] = [
    (0x00, "w[0][0]"),
    (0x01, "w[0][1]"),
    (0x02, "w[0][2]"),
    (0x03, "w[1][0]"),
    (0x04, "w[1][1]"),
    (0x05, "w[1][2]"),
    (0x06, "w[2][0]"),
    (0x07, "w[2][1]"),
    (0x08, "w[2][2]"),
    (ADDR_THRESHOLD, "threshold"),
    (ADDR_LEAK, "leak"),
    (ADDR_REFRACTORY, "refractory_period"),
];

/// A single register write, as decoded from one SPI frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WriteEvent {
    pub addr: u8,
    pub data: u8,
}

impl WriteEvent {
    pub const fn new(addr: u8, data: u8) -> Self {
        Self { addr, data }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WriteOutcome {
    Applied,
    /// The address is outside the map; the file is unchanged.
    Ignored,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RegisterFile {
    regs: [u8; NUM_REGISTERS],
}

impl RegisterFile {
    pub const fn reset() -> Self {
        Self {
            regs: [0; NUM_REGISTERS],
        }
    }

    pub fn from_bytes(regs: [u8; NUM_REGISTERS]) -> Self {
        Self { regs }
    }

    pub fn as_bytes(&self) -> &[u8; NUM_REGISTERS] {
        &self.regs
    }

    pub fn read(&self, addr: u8) -> Option<u8> {
        self.regs.get(usize::from(addr)).copied()
    }

    pub fn write(&mut self, ev: WriteEvent) -> WriteOutcome {
        match self.regs.get_mut(usize::from(ev.addr)) {
            Some(slot) => {
                *slot = ev.data;
                WriteOutcome::Applied
            }
            None => WriteOutcome::Ignored,
        }
    }

    /// Applies writes in order, returning the ignored ones.
    pub fn apply<'a>(
        &mut self,
        events: impl IntoIterator<Item = &'a WriteEvent>,
    ) -> Vec<WriteEvent> {
        events
            .into_iter()
            .filter(|ev| self.write(**ev) == WriteOutcome::Ignored)
            .copied()
            .collect()
    }

    pub fn weights(&self) -> WeightMatrix {
        let mut flat = [0; 9];
        flat.copy_from_slice(&self.regs[..9]);
        WeightMatrix::from_flat(flat)
    }

    pub fn params(&self) -> NeuronParams {
        NeuronParams {
            threshold: self.regs[usize::from(ADDR_THRESHOLD)],
            leak: self.regs[usize::from(ADDR_LEAK)],
            refractory_period: self.regs[usize::from(ADDR_REFRACTORY)],
        }
    }

    /// The combinational view the network reads.
    pub fn view(&self) -> (WeightMatrix, NeuronParams) {
        (self.weights(), self.params())
    }
}
