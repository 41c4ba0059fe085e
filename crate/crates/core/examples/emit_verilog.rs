// SPDX-License-Identifier: Apache-2.0
//! Emit the Verilog bundle, lint it and write it to a directory.
//!
//! cargo run --example emit_verilog -- [OUT_DIR]

use std::path::PathBuf;

use snn_chip::hdl::{emit_verilog, lint::lint_bundle, register_map_comment};

fn main() -> std::io::Result<()> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "target/verilog".into()),
    );
    let bundle = emit_verilog();

    let violations = lint_bundle(&bundle);
    for v in &violations {
        eprintln!("{v}");
    }
    assert!(violations.is_empty(), "emitted Verilog failed lint");

    println!("register map:");
    for line in register_map_comment() {
        println!("{}", line.trim_start_matches("//"));
    }
    bundle.write_to(&out)?;
    for (name, text) in &bundle.files {
        println!(
            "{:>5} lines  {}",
            text.lines().count(),
            out.join(name).display()
        );
    }
    Ok(())
}
