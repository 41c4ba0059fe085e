// SPDX-License-Identifier: Apache-2.0
//! Trace CSV: one row per cycle, membranes then refractory counters then
//! spike flags, layer 1 before layer 2.

use super::error::{parse_literal, ParseError};
use crate::chip::TraceRecord;

pub const TRACE_HEADER: &str = "cycle,v1_0,v1_1,v1_2,v2_0,v2_1,v2_2,\
r1_0,r1_1,r1_2,r2_0,r2_1,r2_2,\
s1_0,s1_1,s1_2,s2_0,s2_1,s2_2";

const FIELDS: usize = 19;

pub fn write_trace_csv(records: &[TraceRecord]) -> String {
    let mut out = String::with_capacity(TRACE_HEADER.len() + 1 + records.len() * 48);
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.cycle.to_string());
        for v in r.membranes.iter().chain(&r.refractory) {
            out.push(',');
            out.push_str(&v.to_string());
        }
        for s in r.spikes {
            out.push_str(if s { ",1" } else { ",0" });
        }
        out.push('\n');
    }
    out
}

/// Reads back a trace written by [`write_trace_csv`].
pub fn read_trace_csv(text: &str) -> Result<Vec<TraceRecord>, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, h)) if h.trim_end() == TRACE_HEADER => {}
        _ => return Err(ParseError::syntax(1, 1, "missing trace header")),
    }
    let mut records: Vec<TraceRecord> = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut cols = Vec::with_capacity(FIELDS);
        let mut column = 1;
        for field in line.trim_end().split(',') {
            cols.push((column, field));
            column += field.chars().count() + 1;
        }
        if cols.len() != FIELDS {
            return Err(ParseError::syntax(
                lineno,
                1,
                format!("expected {FIELDS} fields, found {}", cols.len()),
            ));
        }
        let num = |k: usize, max: u64| parse_literal(cols[k].1, max, lineno, cols[k].0);
        let mut rec = TraceRecord {
            cycle: num(0, u64::MAX)?,
            membranes: [0; 6],
            refractory: [0; 6],
            spikes: [false; 6],
        };
        for n in 0..6 {
            rec.membranes[n] = num(1 + n, 255)? as u8;
            rec.refractory[n] = num(7 + n, 255)? as u8;
            rec.spikes[n] = num(13 + n, 1)? == 1;
        }
        if records.last().is_some_and(|prev| prev.cycle >= rec.cycle) {
            return Err(ParseError::syntax(lineno, 1, "cycle numbers must increase"));
        }
        records.push(rec);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_trace_is_header_only() {
        assert_eq!(write_trace_csv(&[]), format!("{TRACE_HEADER}\n"));
        assert!(read_trace_csv(&write_trace_csv(&[])).unwrap().is_empty());
    }

    #[test]
    fn header_spelling() {
        let cols: Vec<_> = TRACE_HEADER.split(',').collect();
        assert_eq!(cols.len(), FIELDS);
        assert_eq!(cols[0], "cycle");
        assert_eq!(cols[4], "v2_0");
        assert_eq!(cols[12], "r2_2");
        assert_eq!(cols[13], "s1_0");
    }

    #[test]
    fn rejects_bad_rows() {
        let bad = format!("{TRACE_HEADER}\n0,1\n");
        assert_eq!(read_trace_csv(&bad).unwrap_err().line(), 2);
        let row = "0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,2";
        assert!(read_trace_csv(&format!("{TRACE_HEADER}\n{row}\n")).is_err());
        let row = "1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0";
        assert!(read_trace_csv(&format!("{TRACE_HEADER}\n{row}\n{row}\n")).is_err());
        assert!(read_trace_csv("cycle\n").is_err());
    }

    fn arb_records() -> impl Strategy<Value = Vec<TraceRecord>> {
        prop::collection::vec(
            (
                1u64..5,
                any::<[u8; 6]>(),
                any::<[u8; 6]>(),
                any::<[bool; 6]>(),
            ),
            0..50,
        )
        .prop_map(|rows| {
            let mut cycle = 0;
            rows.into_iter()
                .map(|(gap, membranes, refractory, spikes)| {
                    cycle += gap;
                    TraceRecord {
                        cycle,
                        membranes,
                        refractory,
                        spikes,
                    }
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn write_read_round_trip(records in arb_records()) {
            let text = write_trace_csv(&records);
            prop_assert_eq!(text.lines().count(), records.len() + 1);
            prop_assert_eq!(read_trace_csv(&text).unwrap(), records);
        }
    }
}
