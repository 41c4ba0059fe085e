// SPDX-License-Identifier: Apache-2.0
//! Reference evaluator for the neuron and network update equations.
//!
//! This is a direct transcription of the update rule in wide signed
//! arithmetic with explicit clamps. It shares no arithmetic with
//! [`crate::lif`] or [`crate::network`]: membranes are `i64`, currents are
//! recomputed from the stored spike history, and the state lives in flat
//! vectors. A disagreement between the two paths is a bug in one of them.
//!
//! Every intermediate is bounded by `255 * 3 + 255`, so `i64` never wraps.

use crate::lif::NeuronParams;
use crate::network::WeightMatrix;

const NEURONS: usize = 6;
const MIN: i64 = 0;
const MAX: i64 = 255;

/// One simulated cycle, neurons ordered layer 1 (0..3) then layer 2 (3..6).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRecord {
    pub membranes: [i64; NEURONS],
    pub spikes: [bool; NEURONS],
    pub refractory: [i64; NEURONS],
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OracleTrace {
    pub records: Vec<OracleRecord>,
}

impl OracleTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Evaluates the neuron update equation for a single neuron.
///
/// Returns `(membrane, spike)` per cycle.
pub fn oracle_neuron_trace(params: NeuronParams, currents: &[u8]) -> Vec<(i64, bool)> {
    let mut v_prev: i64 = 0;
    let mut hold: i64 = 0;
    let mut out = Vec::with_capacity(currents.len());
    for &i_in in currents {
        let (v, s, h) = update(v_prev, hold, i64::from(i_in), params);
        out.push((v, s));
        v_prev = v;
        hold = h;
    }
    out
}

/// `(V_m[t], S[t], remaining hold)` from `V_m[t-1]`, the hold counter and `I_in[t]`.
fn update(v_prev: i64, hold: i64, i_in: i64, p: NeuronParams) -> (i64, bool, i64) {
    if hold != 0 {
        return (0, false, hold - 1);
    }
    let v = (i_in + v_prev - i64::from(p.leak)).clamp(MIN, MAX);
    if v > i64::from(p.threshold) {
        (0, true, i64::from(p.refractory_period))
    } else {
        (v, false, 0)
    }
}

/// Evaluates all six neurons over `externals.len()` cycles.
///
/// The layer-2 input at cycle `t` is the weighted sum of layer-1 spikes
/// recorded at cycle `t - 1` (zero at `t = 0`), clamped to 255.
pub fn oracle_network_trace(
    weights: &WeightMatrix,
    params: NeuronParams,
    externals: &[[u8; 3]],
) -> OracleTrace {
    let mut v = [0i64; NEURONS];
    let mut hold = [0i64; NEURONS];
    let mut records: Vec<OracleRecord> = Vec::with_capacity(externals.len());

    for (t, ext) in externals.iter().enumerate() {
        let mut input = [0i64; NEURONS];
        for k in 0..3 {
            input[k] = i64::from(ext[k]);
        }
        for i in 0..3 {
            let mut total: i64 = 0;
            if t > 0 {
                let last = &records[t - 1];
                for j in 0..3 {
                    let x = if last.spikes[j] { 1 } else { 0 };
                    total += i64::from(weights.0[i][j]) * x;
                }
            }
            input[3 + i] = total.min(MAX);
        }

        let mut rec = OracleRecord {
            membranes: [0; NEURONS],
            spikes: [false; NEURONS],
            refractory: [0; NEURONS],
        };
        for n in 0..NEURONS {
            let (vn, sn, hn) = update(v[n], hold[n], input[n], params);
            v[n] = vn;
            hold[n] = hn;
            rec.membranes[n] = vn;
            rec.spikes[n] = sn;
            rec.refractory[n] = hn;
        }
        records.push(rec);
    }
    OracleTrace { records }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn silent_neuron() {
        let out = oracle_neuron_trace(NeuronParams::new(255, 0, 0), &[0; 20]);
        assert!(out.iter().all(|&(v, s)| v == 0 && !s));
    }

    #[test]
    fn fires_on_second_input() {
        let out = oracle_neuron_trace(NeuronParams::new(5, 0, 0), &[3, 3, 0]);
        assert_eq!(out, vec![(3, false), (0, true), (0, false)]);
    }

    #[test]
    fn zero_network_is_zero() {
        let tr = oracle_network_trace(&WeightMatrix::ZERO, NeuronParams::default(), &[[0; 3]; 8]);
        assert_eq!(tr.len(), 8);
        for r in &tr.records {
            assert_eq!(r.membranes, [0; 6]);
            assert_eq!(r.spikes, [false; 6]);
            assert_eq!(r.refractory, [0; 6]);
        }
    }

    #[test]
    fn layer2_lag() {
        let tr = oracle_network_trace(
            &WeightMatrix([[255; 3]; 3]),
            NeuronParams::new(0, 0, 0),
            &[[1, 1, 1], [0, 0, 0]],
        );
        assert_eq!(
            tr.records[0].spikes,
            [true, true, true, false, false, false]
        );
        assert_eq!(
            tr.records[1].spikes,
            [false, false, false, true, true, true]
        );
    }
}
