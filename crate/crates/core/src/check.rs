// SPDX-License-Identifier: Apache-2.0
//! Differential checking of the cycle-accurate network against the oracle.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::lif::NeuronParams;
use crate::network::{NetworkState, WeightMatrix};
use crate::oracle::{oracle_network_trace, OracleTrace};

/// A randomly drawn network configuration and external stimulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Episode {
    pub weights: WeightMatrix,
    pub params: NeuronParams,
    pub externals: Vec<[u8; 3]>,
}

impl Episode {
    /// Draws episode `index` of the stream selected by `seed`. Episodes are
    /// independent, so any subset can be regenerated on its own.
    pub fn generate(seed: u64, index: u64, cycles: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let weights = WeightMatrix::from_flat(rng.gen());
        // Leak and currents are drawn from a narrower range half the time so
        // that slow accumulation and threshold crossings both get exercised.
        let narrow = rng.gen_bool(0.5);
        let params = NeuronParams {
            threshold: rng.gen(),
            leak: if narrow {
                rng.gen_range(0..16)
            } else {
                rng.gen()
            },
            refractory_period: if rng.gen_bool(0.5) {
                rng.gen_range(0..=8)
            } else {
                rng.gen()
            },
        };
        let externals = (0..cycles)
            .map(|_| {
                [0; 3].map(|_| {
                    if narrow {
                        rng.gen_range(0..48)
                    } else {
                        rng.gen()
                    }
                })
            })
            .collect();
        Self {
            weights,
            params,
            externals,
        }
    }
}

/// Network state after each cycle of an episode, stepped with the model.
pub fn model_trace(ep: &Episode) -> Vec<NetworkState> {
    let mut state = NetworkState::reset();
    ep.externals
        .iter()
        .map(|ext| {
            state = state.step(&ep.weights, ep.params, *ext).0;
            state
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Membrane,
    Refractory,
    Spike,
}

/// First point at which the model and the oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub episode: u64,
    pub cycle: usize,
    /// 0..3 layer 1, 3..6 layer 2.
    pub neuron: usize,
    pub field: Field,
    pub model: i64,
    pub oracle: i64,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "episode {} diverges at cycle {}: neuron {}.{} {:?} model={} oracle={}",
            self.episode,
            self.cycle,
            self.neuron / 3 + 1,
            self.neuron % 3,
            self.field,
            self.model,
            self.oracle
        )
    }
}

pub fn compare(episode: u64, model: &[NetworkState], oracle: &OracleTrace) -> Option<Divergence> {
    if model.len() != oracle.len() {
        return Some(Divergence {
            episode,
            cycle: model.len().min(oracle.len()),
            neuron: 0,
            field: Field::Membrane,
            model: model.len() as i64,
            oracle: oracle.len() as i64,
        });
    }
    for (cycle, (state, rec)) in model.iter().zip(&oracle.records).enumerate() {
        for (neuron, n) in state.neurons().iter().enumerate() {
            let pairs = [
                (
                    Field::Membrane,
                    i64::from(n.membrane),
                    rec.membranes[neuron],
                ),
                (
                    Field::Refractory,
                    i64::from(n.refractory_count),
                    rec.refractory[neuron],
                ),
                (
                    Field::Spike,
                    i64::from(n.spiked),
                    i64::from(rec.spikes[neuron]),
                ),
            ];
            if let Some((field, model, oracle)) = pairs.into_iter().find(|(_, m, o)| m != o) {
                return Some(Divergence {
                    episode,
                    cycle,
                    neuron,
                    field,
                    model,
                    oracle,
                });
            }
        }
    }
    None
}

pub fn check_episode(seed: u64, index: u64, cycles: usize) -> Option<Divergence> {
    let ep = Episode::generate(seed, index, cycles);
    let model = model_trace(&ep);
    let oracle = oracle_network_trace(&ep.weights, ep.params, &ep.externals);
    compare(index, &model, &oracle)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub episodes: u64,
    pub cycles: usize,
    /// Lowest-numbered failing episode, if any.
    pub first_divergence: Option<Divergence>,
}

/// Runs `episodes` random episodes in parallel.
pub fn run_check(episodes: u64, seed: u64, cycles: usize) -> CheckReport {
    let first_divergence = (0..episodes)
        .into_par_iter()
        .filter_map(|i| check_episode(seed, i, cycles))
        .min_by_key(|d| d.episode);
    CheckReport {
        episodes,
        cycles,
        first_divergence,
    }
}
