// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// A malformed input file. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: value {value} is out of range (max {max})")]
    Range {
        line: usize,
        column: usize,
        value: String,
        max: u64,
    },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn line(&self) -> usize {
        match self {
            Self::Syntax { line, .. } | Self::Range { line, .. } => *line,
        }
    }

    pub fn column(&self) -> usize {
        match self {
            Self::Syntax { column, .. } | Self::Range { column, .. } => *column,
        }
    }
}

/// Parses a decimal or `0x` hex literal no larger than `max`.
pub(crate) fn parse_literal(
    token: &str,
    max: u64,
    line: usize,
    column: usize,
) -> Result<u64, ParseError> {
    let (digits, radix) = match token
        .strip_prefix("0x")
        .or_else(|| token.strip_prefix("0X"))
    {
        Some(hex) => (hex, 16),
        None => (token, 10),
    };
    if digits.is_empty() || !digits.chars().all(|c| c.is_digit(radix)) {
        return Err(ParseError::syntax(
            line,
            column,
            format!("invalid number `{token}`"),
        ));
    }
    let out_of_range = || ParseError::Range {
        line,
        column,
        value: token.to_string(),
        max,
    };
    let value = u64::from_str_radix(digits, radix).map_err(|_| out_of_range())?;
    if value > max {
        return Err(out_of_range());
    }
    Ok(value)
}
