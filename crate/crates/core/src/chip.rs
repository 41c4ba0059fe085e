// SPDX-License-Identifier: Apache-2.0
//! Whole-chip composition: SPI peripheral, register file and network under
//! one system clock.
//!
//! Within a cycle the SPI lines are sampled first and a completed frame is
//! committed to the register file, but the network reads the register values
//! from the start of the cycle. A write therefore takes effect on the cycle
//! after it commits.

use crate::io::waveform::{encode_spi_waveform, SclkDivisor};
use crate::network::{LayerSpikes, NetworkState, LAYER_SIZE};
use crate::regfile::{RegisterFile, WriteEvent, WriteOutcome};
use crate::spi::{SpiLineSample, SpiSlaveState};

/// Pin levels for one system clock cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ChipInputs {
    pub lines: SpiLineSample,
    pub external_currents: [u8; LAYER_SIZE],
    /// Synchronous, active-high.
    pub reset: bool,
}

impl ChipInputs {
    pub const IDLE: Self = Self {
        lines: SpiLineSample::IDLE,
        external_currents: [0; LAYER_SIZE],
        reset: false,
    };

    pub fn currents(external_currents: [u8; LAYER_SIZE]) -> Self {
        Self {
            external_currents,
            ..Self::IDLE
        }
    }

    pub fn spi(lines: SpiLineSample) -> Self {
        Self {
            lines,
            ..Self::IDLE
        }
    }
}

pub type ChipOutputs = LayerSpikes;

/// What happened to the register file during a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommittedWrite {
    pub event: WriteEvent,
    pub outcome: WriteOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ChipState {
    pub spi: SpiSlaveState,
    pub rf: RegisterFile,
    pub net: NetworkState,
    pub cycle: u64,
}

impl ChipState {
    pub const fn reset() -> Self {
        Self {
            spi: SpiSlaveState::reset(),
            rf: RegisterFile::reset(),
            net: NetworkState::reset(),
            cycle: 0,
        }
    }

    pub fn step(&mut self, inputs: ChipInputs) -> ChipOutputs {
        self.step_observed(inputs).0
    }

    /// Like [`ChipState::step`], also reporting any register write that
    /// committed this cycle.
    pub fn step_observed(&mut self, inputs: ChipInputs) -> (ChipOutputs, Option<CommittedWrite>) {
        let next_cycle = self.cycle + 1;
        if inputs.reset {
            // The cycle counter is a simulation timestamp, not device state.
            *self = Self {
                cycle: next_cycle,
                ..Self::reset()
            };
            return (ChipOutputs::default(), None);
        }

        let (weights, params) = self.rf.view();
        let committed = self.spi.sample(inputs.lines).map(|event| CommittedWrite {
            event,
            outcome: self.rf.write(event),
        });
        let (net, outputs) = self.net.step(&weights, params, inputs.external_currents);
        self.net = net;
        self.cycle = next_cycle;
        (outputs, committed)
    }
}

/// How a program reaches the register file before the stimulus starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgramMode {
    /// Shift the program in over SPI; the stimulus starts after the waveform.
    Spi(SclkDivisor),
    /// Write the registers before cycle 0.
    Direct,
}

/// Per-cycle snapshot of the observable network state.
///
/// Neuron arrays are ordered layer 1 (0..3) then layer 2 (3..6). Values are
/// taken after the cycle's clock edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceRecord {
    pub cycle: u64,
    pub membranes: [u8; 6],
    pub refractory: [u8; 6],
    pub spikes: [bool; 6],
}

impl TraceRecord {
    pub fn capture(cycle: u64, net: &NetworkState) -> Self {
        let neurons = net.neurons();
        Self {
            cycle,
            membranes: neurons.map(|n| n.membrane),
            refractory: neurons.map(|n| n.refractory_count),
            spikes: neurons.map(|n| n.spiked),
        }
    }

    pub fn layer1_spikes(&self) -> [bool; 3] {
        [self.spikes[0], self.spikes[1], self.spikes[2]]
    }

    pub fn layer2_spikes(&self) -> [bool; 3] {
        [self.spikes[3], self.spikes[4], self.spikes[5]]
    }
}

/// Register contents, labelled with the first cycle that computes with them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterSnapshot {
    pub from_cycle: u64,
    pub regs: RegisterFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    /// Leading cycles spent shifting the program in (0 in direct mode).
    pub programming_cycles: u64,
    pub records: Vec<TraceRecord>,
    pub register_snapshots: Vec<RegisterSnapshot>,
    /// Writes to unmapped addresses, with the cycle they arrived on.
    pub ignored_writes: Vec<(u64, WriteEvent)>,
}

impl Trace {
    /// Records after the programming prefix.
    pub fn after_programming(&self) -> &[TraceRecord] {
        let skip = usize::try_from(self.programming_cycles).unwrap_or(usize::MAX);
        self.records.get(skip..).unwrap_or(&[])
    }

    pub fn final_registers(&self) -> Option<RegisterFile> {
        self.register_snapshots.last().map(|s| s.regs)
    }
}

/// Programs the chip, then runs `cycles` cycles of stimulus.
///
/// In SPI mode the program waveform is prepended, so the trace holds
/// `programming_cycles + cycles` records. Stimulus shorter than `cycles` is
/// padded with idle inputs; extra stimulus is ignored.
pub fn run_simulation(
    program: &[WriteEvent],
    stimulus: &[ChipInputs],
    cycles: u64,
    mode: ProgramMode,
) -> Trace {
    let mut chip = ChipState::reset();
    let mut trace = Trace::default();

    let prefix: Vec<ChipInputs> = match mode {
        ProgramMode::Direct => {
            trace.ignored_writes = chip
                .rf
                .apply(program)
                .into_iter()
                .map(|ev| (0, ev))
                .collect();
            Vec::new()
        }
        ProgramMode::Spi(divisor) => encode_spi_waveform(program, divisor)
            .into_iter()
            .map(ChipInputs::spi)
            .collect(),
    };
    trace.programming_cycles = prefix.len() as u64;
    trace.register_snapshots.push(RegisterSnapshot {
        from_cycle: 0,
        regs: chip.rf,
    });

    let body = (0..cycles).map(|t| {
        usize::try_from(t)
            .ok()
            .and_then(|t| stimulus.get(t))
            .copied()
            .unwrap_or(ChipInputs::IDLE)
    });
    for inputs in prefix.into_iter().chain(body) {
        let cycle = chip.cycle;
        let before = chip.rf;
        let (_, committed) = chip.step_observed(inputs);
        if let Some(CommittedWrite {
            event,
            outcome: WriteOutcome::Ignored,
        }) = committed
        {
            trace.ignored_writes.push((cycle, event));
        }
        if chip.rf != before {
            trace.register_snapshots.push(RegisterSnapshot {
                from_cycle: chip.cycle,
                regs: chip.rf,
            });
        }
        trace.records.push(TraceRecord::capture(cycle, &chip.net));
    }
    trace
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lif::NeuronParams;
    use crate::regfile::ADDR_THRESHOLD;

    #[test]
    fn reset_chip_is_zero_and_idempotent() {
        let c = ChipState::reset();
        assert_eq!(c.cycle, 0);
        assert_eq!(c.rf, RegisterFile::reset());
        assert_eq!(c.net, NetworkState::reset());
        assert!(c.spi.is_idle());
        assert_eq!(c, ChipState::reset());
    }

    #[test]
    fn idle_chip_stays_silent() {
        let mut c = ChipState::reset();
        for k in 1..=50 {
            let (out, write) = c.step_observed(ChipInputs::IDLE);
            assert_eq!(out, ChipOutputs::default());
            assert_eq!(write, None);
            assert_eq!(c.cycle, k);
        }
        assert_eq!(c.rf, RegisterFile::reset());
    }

    #[test]
    fn reset_input_dominates() {
        let mut c = ChipState::reset();
        c.rf.write(WriteEvent::new(ADDR_THRESHOLD, 3));
        c.step(ChipInputs::currents([200, 200, 200]));
        let out = c.step(ChipInputs {
            reset: true,
            ..ChipInputs::currents([255; 3])
        });
        assert_eq!(out, ChipOutputs::default());
        assert_eq!(c.cycle, 2);
        assert_eq!(ChipState { cycle: 0, ..c }, ChipState::reset());
    }

    #[test]
    fn write_takes_effect_next_cycle() {
        // threshold 0 at reset: any positive membrane fires. Program 200 and
        // present 100 in the very cycle the write commits.
        let program = [WriteEvent::new(ADDR_THRESHOLD, 200)];
        let wave = encode_spi_waveform(&program, SclkDivisor::new(2).unwrap());
        let mut c = ChipState::reset();
        let mut commit_at = None;
        for (k, lines) in wave.iter().enumerate() {
            let (_, w) = c.step_observed(ChipInputs::spi(*lines));
            if w.is_some() {
                commit_at = Some(k);
                break;
            }
        }
        assert!(commit_at.is_some());
        assert_eq!(c.rf.params().threshold, 200);
        // the committing cycle already ran with threshold 0
        assert_eq!(c.net, NetworkState::reset());

        let out = c.step(ChipInputs::currents([100, 0, 0]));
        assert!(!out.layer1[0]);
    }

    #[test]
    fn empty_run_is_all_zero() {
        let tr = run_simulation(&[], &[], 10, ProgramMode::Spi(SclkDivisor::new(2).unwrap()));
        assert_eq!(tr.programming_cycles, 0);
        assert_eq!(tr.records.len(), 10);
        for (k, r) in tr.records.iter().enumerate() {
            assert_eq!(r.cycle, k as u64);
            assert_eq!(*r, TraceRecord::capture(k as u64, &NetworkState::reset()));
        }
    }

    #[test]
    fn direct_mode_programs_before_cycle_zero() {
        let program = [
            WriteEvent::new(ADDR_THRESHOLD, 10),
            WriteEvent::new(0x0A, 1),
            WriteEvent::new(0x0B, 2),
            WriteEvent::new(0x20, 9),
        ];
        let tr = run_simulation(&program, &[], 3, ProgramMode::Direct);
        let rf = tr.final_registers().unwrap();
        assert_eq!(rf.params(), NeuronParams::new(10, 1, 2));
        assert_eq!(tr.ignored_writes, vec![(0, WriteEvent::new(0x20, 9))]);
        assert_eq!(tr.register_snapshots.len(), 1);
    }

    #[test]
    fn spi_snapshots_follow_commits() {
        let program = [
            WriteEvent::new(0x00, 1),
            WriteEvent::new(0x00, 1),
            WriteEvent::new(0x01, 2),
        ];
        let tr = run_simulation(
            &program,
            &[],
            0,
            ProgramMode::Spi(SclkDivisor::new(3).unwrap()),
        );
        // the repeated write does not change contents
        assert_eq!(tr.register_snapshots.len(), 3);
        assert_eq!(tr.records.len() as u64, tr.programming_cycles);
        assert!(tr.after_programming().is_empty());
        let windows: Vec<_> = tr
            .register_snapshots
            .windows(2)
            .map(|w| w[0].from_cycle < w[1].from_cycle)
            .collect();
        assert!(windows.into_iter().all(|b| b));
    }
}
