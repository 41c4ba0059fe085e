// SPDX-License-Identifier: Apache-2.0
//! Drive a single LIF neuron with a constant current and print its state.
//!
//! cargo run --example neuron_dynamics

use snn_chip::{NeuronParams, NeuronState};

fn main() {
    let params = NeuronParams::new(10, 1, 2);
    let mut n = NeuronState::reset();
    println!("cycle  input  membrane  refractory  spike");
    for cycle in 0..12 {
        let input = if cycle < 9 { 4 } else { 0 };
        n = n.step(params, input);
        println!(
            "{cycle:>5}  {input:>5}  {:>8}  {:>10}  {}",
            n.membrane,
            n.refractory_count,
            u8::from(n.spiked)
        );
    }
}
