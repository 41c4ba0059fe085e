// SPDX-License-Identifier: Apache-2.0
//! Value change dump output for traces. One cycle is one nanosecond.

use std::fmt::Write as _;

use crate::chip::TraceRecord;

const SCOPE: &str = "snn";

struct Signal {
    name: String,
    width: u32,
    id: char,
}

/// The 18 traced signals in CSV column order.
fn signals() -> Vec<Signal> {
    let mut out = Vec::with_capacity(18);
    for (prefix, width) in [("v", 8), ("r", 8), ("s", 1)] {
        for layer in 1..=2 {
            for n in 0..3 {
                let id = char::from(b'A' + out.len() as u8);
                out.push(Signal {
                    name: format!("{prefix}{layer}_{n}"),
                    width,
                    id,
                });
            }
        }
    }
    out
}

fn values(r: &TraceRecord) -> [u8; 18] {
    let mut v = [0; 18];
    v[..6].copy_from_slice(&r.membranes);
    v[6..12].copy_from_slice(&r.refractory);
    for (slot, s) in v[12..].iter_mut().zip(r.spikes) {
        *slot = u8::from(s);
    }
    v
}

fn change(out: &mut String, sig: &Signal, value: u8) {
    if sig.width == 1 {
        let _ = writeln!(out, "{value}{}", sig.id);
    } else {
        let _ = writeln!(out, "b{value:08b} {}", sig.id);
    }
}

pub fn write_trace_vcd(records: &[TraceRecord]) -> String {
    let sigs = signals();
    let mut out = String::new();
    out.push_str("$version snn-chip trace $end\n");
    out.push_str("$timescale 1ns $end\n");
    let _ = writeln!(out, "$scope module {SCOPE} $end");
    for s in &sigs {
        let _ = writeln!(out, "$var wire {} {} {} $end", s.width, s.id, s.name);
    }
    out.push_str("$upscope $end\n$enddefinitions $end\n");

    let mut prev: Option<[u8; 18]> = None;
    for r in records {
        let now = values(r);
        match prev {
            None => {
                let _ = writeln!(out, "#{}", r.cycle);
                out.push_str("$dumpvars\n");
                for (sig, v) in sigs.iter().zip(now) {
                    change(&mut out, sig, v);
                }
                out.push_str("$end\n");
            }
            Some(before) if before != now => {
                let _ = writeln!(out, "#{}", r.cycle);
                for ((sig, v), old) in sigs.iter().zip(now).zip(before) {
                    if v != old {
                        change(&mut out, sig, v);
                    }
                }
            }
            Some(_) => {}
        }
        prev = Some(now);
    }
    out
}
