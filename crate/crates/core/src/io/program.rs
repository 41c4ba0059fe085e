// SPDX-License-Identifier: Apache-2.0
//! Register program files.
//!
//! ```text
//! # threshold, leak, refractory period
//! write 0x09 10
//! write 0x0A 1
//! write 0x0B 2
//! ```
//!
//! Each directive is `write <addr> <data>`; literals are decimal or
//! `0x`-prefixed hex and must fit in a byte. `#` starts a comment.

use super::error::{parse_literal, ParseError};
use crate::regfile::WriteEvent;

/// Splits a line into whitespace-separated tokens with 1-based columns,
/// stopping at a comment.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(idx),
            (true, Some(s)) => {
                out.push((s, &code[s..idx]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &code[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (code[..byte].chars().count() + 1, tok))
        .collect()
}

pub fn parse_program(text: &str) -> Result<Vec<WriteEvent>, ParseError> {
    let mut program = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        if keyword != "write" {
            return Err(ParseError::syntax(
                lineno,
                col,
                format!("expected `write`, found `{keyword}`"),
            ));
        }
        let end_col = line.split('#').next().unwrap_or("").chars().count() + 1;
        let operand = |k: usize, what: &str| -> Result<u8, ParseError> {
            let &(col, tok) = toks
                .get(k)
                .ok_or_else(|| ParseError::syntax(lineno, end_col, format!("missing {what}")))?;
            parse_literal(tok, 255, lineno, col).map(|v| v as u8)
        };
        let addr = operand(1, "address")?;
        let data = operand(2, "data")?;
        if let Some(&(col, extra)) = toks.get(3) {
            return Err(ParseError::syntax(
                lineno,
                col,
                format!("unexpected `{extra}` after data"),
            ));
        }
        program.push(WriteEvent { addr, data });
    }
    Ok(program)
}

/// Renders one directive per line in hex.
pub fn render_program(program: &[WriteEvent]) -> String {
    program
        .iter()
        .map(|ev| format!("write 0x{:02X} 0x{:02X}\n", ev.addr, ev.data))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_directive() {
        assert_eq!(
            parse_program("write 0x09 0x7F").unwrap(),
            vec![WriteEvent::new(0x09, 0x7F)]
        );
    }

    #[test]
    fn comments_and_blanks() {
        let p = parse_program("# comment\n\nwrite 0 255").unwrap();
        assert_eq!(p, vec![WriteEvent::new(0x00, 0xFF)]);
        let p = parse_program("  write\t0X0a 1   # leak\r\n").unwrap();
        assert_eq!(p, vec![WriteEvent::new(0x0A, 1)]);
    }

    #[test]
    fn range_error_names_location() {
        let err = parse_program("write 0x09 300").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Range {
                    line: 1,
                    column: 12,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_program("\nwrite 0x100 1").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Range {
                    line: 2,
                    column: 7,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn syntax_errors() {
        let err = parse_program("write 1 2\nread 1").unwrap_err();
        assert_eq!((err.line(), err.column()), (2, 1));
        let err = parse_program("write 1").unwrap_err();
        assert_eq!((err.line(), err.column()), (1, 8));
        let err = parse_program("write 1 2 3").unwrap_err();
        assert_eq!((err.line(), err.column()), (1, 11));
        let err = parse_program("write 0xZZ 2").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Syntax {
                line: 1,
                column: 7,
                ..
            }
        ));
        let err = parse_program("write -1 2").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(events in prop::collection::vec(any::<(u8, u8)>(), 0..64)) {
            let program: Vec<_> = events.into_iter().map(|(a, d)| WriteEvent::new(a, d)).collect();
            prop_assert_eq!(parse_program(&render_program(&program)).unwrap(), program);
        }
    }
}
