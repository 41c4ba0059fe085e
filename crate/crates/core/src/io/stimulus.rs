// SPDX-License-Identifier: Apache-2.0
//! Stimulus CSV files.
//!
//! Full header: `cycle,i0,i1,i2,sclk,mosi,cs_n,reset`. Columns may appear in
//! any order and any column except `cycle` may be omitted; omitted columns
//! take their idle value (currents 0, `sclk=0`, `mosi=0`, `cs_n=1`,
//! `reset=0`). Rows need strictly increasing cycle numbers. A row holds until
//! the next row, so cycles skipped between rows repeat the earlier row. Cycles
//! before the first row are idle.

use super::error::{parse_literal, ParseError};
use crate::chip::ChipInputs;

pub const STIMULUS_HEADER: &str = "cycle,i0,i1,i2,sclk,mosi,cs_n,reset";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Cycle,
    Current(usize),
    Sclk,
    Mosi,
    CsN,
    Reset,
}

impl Column {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "cycle" => Self::Cycle,
            "i0" => Self::Current(0),
            "i1" => Self::Current(1),
            "i2" => Self::Current(2),
            "sclk" => Self::Sclk,
            "mosi" => Self::Mosi,
            "cs_n" => Self::CsN,
            "reset" => Self::Reset,
            _ => return None,
        })
    }
}

/// Per-cycle chip inputs, one entry per cycle starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Stimulus {
    pub inputs: Vec<ChipInputs>,
}

impl Stimulus {
    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    /// Extends to `cycles` entries by holding the last row (idle if empty).
    pub fn held(&self, cycles: usize) -> Vec<ChipInputs> {
        let last = self.inputs.last().copied().unwrap_or(ChipInputs::IDLE);
        let mut out: Vec<_> = self.inputs.iter().copied().take(cycles).collect();
        out.resize(cycles, last);
        out
    }
}

/// Byte offset of each comma-separated field plus its trimmed text.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in line.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push((line[..start + lead].chars().count() + 1, part.trim()));
        start += part.len() + 1;
    }
    out
}

pub fn parse_stimulus(text: &str) -> Result<Stimulus, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, l)| (idx + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());

    let Some((header_line, header)) = lines.next() else {
        return Ok(Stimulus::default());
    };
    let mut columns = Vec::new();
    for (col, name) in fields(header) {
        let column = Column::from_name(name).ok_or_else(|| {
            ParseError::syntax(header_line, col, format!("unknown column `{name}`"))
        })?;
        if columns.contains(&column) {
            return Err(ParseError::syntax(
                header_line,
                col,
                format!("duplicate column `{name}`"),
            ));
        }
        columns.push(column);
    }
    if !columns.contains(&Column::Cycle) {
        return Err(ParseError::syntax(
            header_line,
            1,
            "header has no `cycle` column",
        ));
    }

    let mut inputs: Vec<ChipInputs> = Vec::new();
    for (lineno, line) in lines {
        let row = fields(line);
        if row.len() != columns.len() {
            return Err(ParseError::syntax(
                lineno,
                1,
                format!("expected {} fields, found {}", columns.len(), row.len()),
            ));
        }
        let mut cycle = 0u64;
        let mut input = ChipInputs::IDLE;
        for (&column, &(col, text)) in columns.iter().zip(&row) {
            let bit = |text| parse_literal(text, 1, lineno, col).map(|v| v == 1);
            match column {
                Column::Cycle => cycle = parse_literal(text, u32::MAX.into(), lineno, col)?,
                Column::Current(k) => {
                    input.external_currents[k] = parse_literal(text, 255, lineno, col)? as u8
                }
                Column::Sclk => input.lines.sclk = bit(text)?,
                Column::Mosi => input.lines.mosi = bit(text)?,
                Column::CsN => input.lines.cs_n = bit(text)?,
                Column::Reset => input.reset = bit(text)?,
            }
        }
        let cycle = cycle as usize;
        if !inputs.is_empty() && cycle < inputs.len() {
            let col = columns
                .iter()
                .position(|c| *c == Column::Cycle)
                .map_or(1, |k| row[k].0);
            return Err(ParseError::syntax(
                lineno,
                col,
                format!("cycle {cycle} does not follow cycle {}", inputs.len() - 1),
            ));
        }
        let fill = inputs.last().copied().unwrap_or(ChipInputs::IDLE);
        inputs.resize(cycle, fill);
        inputs.push(input);
    }
    Ok(Stimulus { inputs })
}

/// Renders with the full header, writing a row only when the inputs change
/// (plus the final cycle, so the length survives a round trip).
pub fn render_stimulus(inputs: &[ChipInputs]) -> String {
    let mut out = String::from(STIMULUS_HEADER);
    out.push('\n');
    let mut prev = ChipInputs::IDLE;
    for (cycle, input) in inputs.iter().enumerate() {
        if cycle == 0 || *input != prev || cycle + 1 == inputs.len() {
            let [i0, i1, i2] = input.external_currents;
            out.push_str(&format!(
                "{cycle},{i0},{i1},{i2},{},{},{},{}\n",
                u8::from(input.lines.sclk),
                u8::from(input.lines.mosi),
                u8::from(input.lines.cs_n),
                u8::from(input.reset),
            ));
        }
        prev = *input;
    }
    out
}
