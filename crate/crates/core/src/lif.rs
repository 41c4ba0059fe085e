// SPDX-License-Identifier: Apache-2.0
//! Digital leaky integrate-and-fire neuron.
//!
//! Every quantity is an unsigned byte. One call to [`NeuronState::step`] is one
//! rising clock edge: the membrane integrates the input current, loses `leak`,
//! saturates at `0..=255`, and fires when the integrated value is strictly
//! greater than the threshold. A firing neuron resets to zero in the same cycle
//! and then holds at zero for `refractory_period` cycles, discarding input.

/// Parameters shared by every neuron on the chip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NeuronParams {
    pub threshold: u8,
    pub leak: u8,
    pub refractory_period: u8,
}

impl NeuronParams {
    pub const fn new(threshold: u8, leak: u8, refractory_period: u8) -> Self {
        Self {
            threshold,
            leak,
            refractory_period,
        }
    }
}

/// Per-neuron register state.
///
/// `spiked` is the registered spike output of the most recent step; it holds
/// until the next step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NeuronState {
    pub membrane: u8,
    pub refractory_count: u8,
    pub spiked: bool,
}

impl NeuronState {
    /// All-zero power-on state.
    pub const fn reset() -> Self {
        Self {
            membrane: 0,
            refractory_count: 0,
            spiked: false,
        }
    }

    /// Checks the structural invariants every reachable state satisfies.
    pub fn is_consistent(&self) -> bool {
        (self.refractory_count == 0 || self.membrane == 0) && (!self.spiked || self.membrane == 0)
    }

    /// Advances the neuron by one clock cycle.
    #[must_use]
    pub fn step(self, params: NeuronParams, input_current: u8) -> Self {
        if self.refractory_count > 0 {
            return Self {
                membrane: 0,
                refractory_count: self.refractory_count - 1,
                spiked: false,
            };
        }
        let integrated = saturating_integrate(self.membrane, input_current, params.leak);
        if integrated > params.threshold {
            Self {
                membrane: 0,
                refractory_count: params.refractory_period,
                spiked: true,
            }
        } else {
            Self {
                membrane: integrated,
                refractory_count: 0,
                spiked: false,
            }
        }
    }
}

/// `clamp(membrane + input_current - leak, 0, 255)` without intermediate wrap.
///
/// The sum is formed at 9 bits, the leak is subtracted with a floor of zero,
/// and the result is capped at 255.
#[inline]
pub fn saturating_integrate(membrane: u8, input_current: u8, leak: u8) -> u8 {
    let sum = u16::from(membrane) + u16::from(input_current);
    let after_leak = sum.saturating_sub(u16::from(leak));
    u8::try_from(after_leak).unwrap_or(u8::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn state(membrane: u8, refractory_count: u8) -> NeuronState {
        NeuronState {
            membrane,
            refractory_count,
            spiked: false,
        }
    }

    #[test]
    fn reset_is_all_zero() {
        let s = NeuronState::reset();
        assert_eq!(s, state(0, 0));
        assert_eq!(s, NeuronState::reset());
    }

    #[test]
    fn quiet_neuron_never_fires() {
        let params = NeuronParams::new(255, 0, 0);
        let mut s = NeuronState::reset();
        for _ in 0..100 {
            s = s.step(params, 0);
            assert!(!s.spiked);
        }
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(saturating_integrate(10, 5, 3), 12);
        assert_eq!(saturating_integrate(0, 0, 200), 0);
        assert_eq!(saturating_integrate(200, 100, 0), 255);
        assert_eq!(saturating_integrate(255, 255, 255), 255);
    }

    #[test]
    fn step_examples() {
        let s = state(0, 0).step(NeuronParams::new(255, 0, 4), 0);
        assert_eq!(s, state(0, 0));

        let s = state(200, 0).step(NeuronParams::new(250, 0, 3), 100);
        assert_eq!(
            s,
            NeuronState {
                membrane: 0,
                refractory_count: 3,
                spiked: true
            }
        );

        let s = state(0, 2).step(NeuronParams::new(0, 0, 2), 255);
        assert_eq!(s, state(0, 1));

        // equal to threshold is not a spike
        let s = state(250, 0).step(NeuronParams::new(250, 0, 1), 0);
        assert_eq!(s, state(250, 0));
    }

    #[test]
    fn refractory_one_silences_exactly_one_cycle() {
        let params = NeuronParams::new(0, 0, 1);
        let s = NeuronState::reset().step(params, 1);
        assert!(s.spiked);
        let s = s.step(params, 255);
        assert!(!s.spiked);
        let s = s.step(params, 1);
        assert!(s.spiked);
    }

    fn arb_params() -> impl Strategy<Value = NeuronParams> {
        (any::<u8>(), any::<u8>(), any::<u8>()).prop_map(|(t, l, r)| NeuronParams::new(t, l, r))
    }

    proptest! {
        #[test]
        fn reachable_states_stay_consistent(params in arb_params(), currents in prop::collection::vec(any::<u8>(), 0..200)) {
            let mut s = NeuronState::reset();
            for c in currents {
                s = s.step(params, c);
                prop_assert!(s.is_consistent());
            }
        }

        #[test]
        fn refractory_clamps_membrane(params in arb_params(), count in 1u8.., current in any::<u8>()) {
            let s = state(0, count);
            let next = s.step(params, current);
            prop_assert_eq!(next.membrane, 0);
            prop_assert!(!next.spiked);
            prop_assert_eq!(next.refractory_count, count - 1);
        }

        #[test]
        fn zero_leak_accumulates_monotonically(threshold in any::<u8>(), membrane in any::<u8>(), current in any::<u8>()) {
            let params = NeuronParams::new(threshold, 0, 0);
            let s = state(membrane, 0);
            let next = s.step(params, current);
            if !next.spiked {
                prop_assert!(next.membrane >= membrane);
            }
        }

        #[test]
        fn equal_to_threshold_never_fires(membrane in any::<u8>(), current in any::<u8>(), leak in any::<u8>(), rp in any::<u8>()) {
            let v = saturating_integrate(membrane, current, leak);
            let next = state(membrane, 0).step(NeuronParams::new(v, leak, rp), current);
            prop_assert!(!next.spiked);
            prop_assert_eq!(next.membrane, v);
        }
    }
}
