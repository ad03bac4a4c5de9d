//! Line-oriented model documents shared by the RBF and MLP formats.
//!
//! ```text
//! <magic> v<version>
//! <key> <value>           one line per scalar field, fixed order
//! <x> <x> ...             one line per matrix row
//! ```
//!
//! Reals are written with 17 significant digits, which round-trips every
//! finite `f64` exactly.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub(crate) const VERSION: u32 = 1;

fn err(msg: impl Into<String>) -> Error {
    Error::ModelFormat(msg.into())
}

pub(crate) fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) struct Writer {
    out: String,
}

impl Writer {
    pub fn new(magic: &str) -> Self {
        Self {
            out: format!("{magic} v{VERSION}\n"),
        }
    }

    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{key} {value}");
    }

    pub fn real(&mut self, key: &str, value: f64) {
        self.field(key, format_real(value));
    }

    pub fn row(&mut self, row: &[f64]) {
        let line: Vec<String> = row.iter().map(|&v| format_real(v)).collect();
        let _ = writeln!(self.out, "{}", line.join(" "));
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub(crate) struct Reader<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Reader<'a> {
    pub fn new(text: &'a str, magic: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().peekable();
        let header = lines
            .next()
            .map(|(_, l)| l.trim_end_matches('\r').trim())
            .ok_or_else(|| err("empty document"))?;
        let version = header
            .strip_prefix(magic)
            .and_then(|rest| rest.trim().strip_prefix('v'))
            .ok_or_else(|| err(format!("expected header `{magic} v{VERSION}`")))?;
        match version.parse::<u32>() {
            Ok(VERSION) => Ok(Self { lines }),
            _ => Err(err(format!("unsupported version `v{version}`"))),
        }
    }

    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, l) in self.lines.by_ref() {
            let l = l.trim_end_matches('\r').trim();
            if !l.is_empty() {
                return Some((i + 1, l));
            }
        }
        None
    }

    fn field_str(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (line, text) = self
            .next_line()
            .ok_or_else(|| err(format!("missing field `{key}`")))?;
        let mut parts = text.split_whitespace();
        if parts.next() != Some(key) {
            return Err(err(format!("line {line}: expected field `{key}`")));
        }
        match (parts.next(), parts.next()) {
            (Some(v), None) => Ok((line, v)),
            _ => Err(err(format!("line {line}: corrupted field `{key}`"))),
        }
    }

    pub fn usize(&mut self, key: &str) -> Result<usize> {
        let (line, v) = self.field_str(key)?;
        v.parse()
            .map_err(|_| err(format!("line {line}: corrupted field `{key}`")))
    }

    pub fn real(&mut self, key: &str) -> Result<f64> {
        let (line, v) = self.field_str(key)?;
        parse_real(v).ok_or_else(|| err(format!("line {line}: corrupted field `{key}`")))
    }

    /// Next row of reals, or `None` at end of document.
    pub fn row(&mut self) -> Result<Option<Vec<f64>>> {
        let Some((line, text)) = self.next_line() else {
            return Ok(None);
        };
        text.split_whitespace()
            .map(parse_real)
            .collect::<Option<Vec<_>>>()
            .map(Some)
            .ok_or_else(|| err(format!("line {line}: corrupted field in row")))
    }

    /// Reads exactly `count` rows of width `width`; `what` names the matrix
    /// in errors.
    pub fn matrix(&mut self, count: usize, width: usize, what: &str) -> Result<Vec<Vec<f64>>> {
        let mut rows = Vec::with_capacity(count);
        for _ in 0..count {
            let row = self
                .row()?
                .ok_or_else(|| err(format!("{what} matrix shape: expected {count} rows")))?;
            if row.len() != width {
                return Err(err(format!(
                    "{what} matrix shape: row has {} entries, expected {width}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        Ok(rows)
    }

    pub fn expect_end(&mut self, what: &str) -> Result<()> {
        match self.next_line() {
            None => Ok(()),
            Some(_) => Err(err(format!("{what} matrix shape: unexpected extra rows"))),
        }
    }
}

fn parse_real(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}
