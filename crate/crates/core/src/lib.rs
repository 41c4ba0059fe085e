// SPDX-License-Identifier: Apache-2.0
//! Cycle-accurate model of a programmable spiking-neuron array chip.
//!
//! The chip holds two fully connected layers of three digital leaky
//! integrate-and-fire neurons. Weights and the shared neuron parameters live
//! in a twelve-byte register file programmed over a write-only SPI mode-0
//! peripheral.
//!
//! * [`lif`]: the neuron update with saturating byte arithmetic
//! * [`network`]: the 2x3 array with registered inter-layer spikes
//! * [`regfile`]: the register map
//! * [`spi`]: the bit-level SPI receiver
//! * [`chip`]: the composed device, cycle loop and traces
//! * [`oracle`]: an independent evaluator used for differential testing
//! * [`check`]: randomized model-versus-oracle episodes
//! * [`io`]: program, stimulus and trace file formats
//! * [`hdl`]: Verilog emission and its structural lint

pub mod check;
pub mod chip;
pub mod hdl;
pub mod io;
pub mod lif;
pub mod network;
pub mod oracle;
pub mod regfile;
pub mod spi;

pub use chip::{
    run_simulation, ChipInputs, ChipOutputs, ChipState, ProgramMode, Trace, TraceRecord,
};
pub use lif::{saturating_integrate, NeuronParams, NeuronState};
pub use network::{compute_layer2_currents, LayerSpikes, NetworkState, WeightMatrix};
pub use regfile::{RegisterFile, WriteEvent, WriteOutcome};
pub use spi::{SpiLineSample, SpiSlaveState};
