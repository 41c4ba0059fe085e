// SPDX-License-Identifier: Apache-2.0
//! Two-layer, three-neuron-per-layer fully connected array.
//!
//! Layer 1 is driven by external byte currents. Layer 2 is driven by the
//! weighted sum of the layer-1 spikes *registered at the end of the previous
//! cycle*, so a layer-1 spike can first influence layer 2 one cycle later.

use crate::lif::{NeuronParams, NeuronState};

/// Neurons per layer.
pub const LAYER_SIZE: usize = 3;

/// Inter-layer synaptic weights. `w[i][j]` connects layer-1 neuron `j` to
/// layer-2 neuron `i`; the flat register order is `i * 3 + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct WeightMatrix(pub [[u8; LAYER_SIZE]; LAYER_SIZE]);

impl WeightMatrix {
    pub const ZERO: Self = Self([[0; LAYER_SIZE]; LAYER_SIZE]);

    /// Builds the matrix from its row-major flattened form.
    pub fn from_flat(flat: [u8; LAYER_SIZE * LAYER_SIZE]) -> Self {
        let mut w = [[0; LAYER_SIZE]; LAYER_SIZE];
        for (idx, value) in flat.into_iter().enumerate() {
            w[idx / LAYER_SIZE][idx % LAYER_SIZE] = value;
        }
        Self(w)
    }

    pub fn to_flat(&self) -> [u8; LAYER_SIZE * LAYER_SIZE] {
        let mut flat = [0; LAYER_SIZE * LAYER_SIZE];
        for (i, row) in self.0.iter().enumerate() {
            flat[i * LAYER_SIZE..(i + 1) * LAYER_SIZE].copy_from_slice(row);
        }
        flat
    }

    /// Diagonal matrix with `value` on the diagonal.
    pub fn diagonal(value: u8) -> Self {
        let mut w = [[0; LAYER_SIZE]; LAYER_SIZE];
        for (i, row) in w.iter_mut().enumerate() {
            row[i] = value;
        }
        Self(w)
    }

    pub fn get(&self, dst: usize, src: usize) -> u8 {
        self.0[dst][src]
    }
}

/// `current[i] = min(255, sum_j w[i][j] * spike[j])`.
pub fn compute_layer2_currents(
    weights: &WeightMatrix,
    layer1_spikes: [bool; LAYER_SIZE],
) -> [u8; LAYER_SIZE] {
    weights.0.map(|row| {
        let sum: u16 = row
            .iter()
            .zip(layer1_spikes)
            .filter(|(_, spiked)| *spiked)
            .map(|(w, _)| u16::from(*w))
            .sum();
        u8::try_from(sum).unwrap_or(u8::MAX)
    })
}

/// Spike outputs of one network cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LayerSpikes {
    pub layer1: [bool; LAYER_SIZE],
    pub layer2: [bool; LAYER_SIZE],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NetworkState {
    pub layer1: [NeuronState; LAYER_SIZE],
    pub layer2: [NeuronState; LAYER_SIZE],
    /// Layer-1 spikes from the previous completed cycle.
    pub layer1_spikes_reg: [bool; LAYER_SIZE],
}

impl NetworkState {
    pub const fn reset() -> Self {
        Self {
            layer1: [NeuronState::reset(); LAYER_SIZE],
            layer2: [NeuronState::reset(); LAYER_SIZE],
            layer1_spikes_reg: [false; LAYER_SIZE],
        }
    }

    /// All six neurons, layer 1 first.
    pub fn neurons(&self) -> [NeuronState; 2 * LAYER_SIZE] {
        let mut all = [NeuronState::reset(); 2 * LAYER_SIZE];
        all[..LAYER_SIZE].copy_from_slice(&self.layer1);
        all[LAYER_SIZE..].copy_from_slice(&self.layer2);
        all
    }

    /// One synchronous cycle with both layers sharing `params`.
    #[must_use]
    pub fn step(
        &self,
        weights: &WeightMatrix,
        params: NeuronParams,
        external_currents: [u8; LAYER_SIZE],
    ) -> (Self, LayerSpikes) {
        let layer2_currents = compute_layer2_currents(weights, self.layer1_spikes_reg);

        let mut next = *self;
        for (neuron, current) in next.layer1.iter_mut().zip(external_currents) {
            *neuron = neuron.step(params, current);
        }
        for (neuron, current) in next.layer2.iter_mut().zip(layer2_currents) {
            *neuron = neuron.step(params, current);
        }
        let spikes = LayerSpikes {
            layer1: next.layer1.map(|n| n.spiked),
            layer2: next.layer2.map(|n| n.spiked),
        };
        next.layer1_spikes_reg = spikes.layer1;
        (next, spikes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weighted_sum_examples() {
        let w = WeightMatrix([[3, 4, 5], [0, 0, 0], [255, 255, 255]]);
        let c = compute_layer2_currents(&w, [true, false, true]);
        assert_eq!(c[0], 8);
        assert_eq!(compute_layer2_currents(&w, [false; 3]), [0, 0, 0]);
        assert_eq!(compute_layer2_currents(&w, [true; 3])[2], 255);
    }

    #[test]
    fn flat_order_is_row_major() {
        let w = WeightMatrix::from_flat([1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(w.0, [[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        assert_eq!(w.get(1, 1), 5);
        assert_eq!(w.to_flat(), [1, 2, 3, 4, 5, 6, 7, 8, 9]);
    }

    #[test]
    fn layer2_lags_layer1_by_one_cycle() {
        let w = WeightMatrix([[255; 3]; 3]);
        let params = NeuronParams::new(0, 0, 0);
        let s = NetworkState::reset();
        let (s, spikes) = s.step(&w, params, [1, 1, 1]);
        assert_eq!(spikes.layer1, [true; 3]);
        assert_eq!(spikes.layer2, [false; 3]);
        let (_, spikes) = s.step(&w, params, [0, 0, 0]);
        assert_eq!(spikes.layer2, [true; 3]);
    }

    #[test]
    fn quiet_network_stays_quiet() {
        let params = NeuronParams::new(255, 0, 0);
        let mut s = NetworkState::reset();
        for _ in 0..10 {
            let (next, spikes) = s.step(&WeightMatrix([[200; 3]; 3]), params, [0; 3]);
            assert_eq!(spikes, LayerSpikes::default());
            s = next;
        }
        assert_eq!(s, NetworkState::reset());
    }

    fn arb_params() -> impl Strategy<Value = NeuronParams> {
        (any::<u8>(), any::<u8>(), any::<u8>()).prop_map(|(t, l, r)| NeuronParams::new(t, l, r))
    }

    fn arb_weights() -> impl Strategy<Value = WeightMatrix> {
        any::<[u8; 9]>().prop_map(WeightMatrix::from_flat)
    }

    proptest! {
        #[test]
        fn zero_external_never_fires_layer1(params in arb_params(), w in arb_weights()) {
            let mut s = NetworkState::reset();
            for _ in 0..20 {
                let (next, spikes) = s.step(&w, params, [0; 3]);
                prop_assert_eq!(spikes.layer1, [false; 3]);
                s = next;
            }
        }

        #[test]
        fn zero_weights_decouple_layers(params in arb_params(), ext in prop::collection::vec(any::<[u8; 3]>(), 1..60)) {
            let mut s = NetworkState::reset();
            let mut lone = NeuronState::reset();
            for e in &ext {
                s = s.step(&WeightMatrix::ZERO, params, *e).0;
                lone = lone.step(params, 0);
                prop_assert_eq!(s.layer2, [lone; 3]);
            }
        }

        #[test]
        fn permuting_sources_permutes_layer1_only(
            params in arb_params(),
            w in arb_weights(),
            ext in prop::collection::vec(any::<[u8; 3]>(), 1..60),
            perm_idx in 0usize..6,
        ) {
            const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let p = PERMS[perm_idx];
            // neuron k of the permuted network plays the role of neuron p[k]
            let wp = WeightMatrix(w.0.map(|row| [row[p[0]], row[p[1]], row[p[2]]]));
            let mut a = NetworkState::reset();
            let mut b = NetworkState::reset();
            for e in &ext {
                let (na, sa) = a.step(&w, params, *e);
                let (nb, sb) = b.step(&wp, params, [e[p[0]], e[p[1]], e[p[2]]]);
                prop_assert_eq!(sb.layer1, [sa.layer1[p[0]], sa.layer1[p[1]], sa.layer1[p[2]]]);
                prop_assert_eq!(sb.layer2, sa.layer2);
                a = na;
                b = nb;
            }
        }

        #[test]
        fn registered_spikes_track_layer1(params in arb_params(), w in arb_weights(), ext in prop::collection::vec(any::<[u8; 3]>(), 1..40)) {
            let mut s = NetworkState::reset();
            for e in &ext {
                let (next, spikes) = s.step(&w, params, *e);
                prop_assert_eq!(next.layer1_spikes_reg, spikes.layer1);
                prop_assert_eq!(next.layer1_spikes_reg, next.layer1.map(|n| n.spiked));
                s = next;
            }
        }
    }
}
