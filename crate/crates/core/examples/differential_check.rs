// SPDX-License-Identifier: Apache-2.0
//! Compare the cycle model against the reference oracle on random episodes.
//!
//! cargo run --release --example differential_check -- [EPISODES] [SEED]

use std::time::Instant;

use snn_chip::check::run_check;

fn main() {
    let mut args = std::env::args().skip(1);
    let episodes = args.next().and_then(|a| a.parse().ok()).unwrap_or(1000);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);

    let start = Instant::now();
    let report = run_check(episodes, seed, 200);
    let elapsed = start.elapsed();
    match report.first_divergence {
        None => println!(
            "{} episodes, {} cycles: model matches oracle ({elapsed:.2?})",
            report.episodes, report.cycles
        ),
        Some(d) => {
            println!("divergence: {d}");
            std::process::exit(1);
        }
    }
}
