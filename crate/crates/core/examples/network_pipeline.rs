// SPDX-License-Identifier: Apache-2.0
//! Show the one-cycle lag between a layer-1 spike and the layer-2 response.
//!
//! cargo run --example network_pipeline

use snn_chip::{NetworkState, NeuronParams, WeightMatrix};

fn main() {
    let weights = WeightMatrix([[255, 0, 0], [0, 255, 0], [0, 0, 255]]);
    let params = NeuronParams::new(0, 0, 0);
    let externals = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]];

    let mut net = NetworkState::reset();
    println!("cycle  ext          layer1   layer2");
    for (cycle, ext) in externals.iter().enumerate() {
        let (next, spikes) = net.step(&weights, params, *ext);
        net = next;
        println!(
            "{cycle:>5}  {:<11}  {}      {}",
            format!("{ext:?}"),
            bits(spikes.layer1),
            bits(spikes.layer2)
        );
    }
}

fn bits(s: [bool; 3]) -> String {
    s.iter().map(|b| if *b { '1' } else { '0' }).collect()
}
