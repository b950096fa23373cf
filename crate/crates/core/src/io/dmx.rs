//! `.dmx` text format for dual matrices:
//!
//! ```text
//! dmx 1 <m> <n>
//! <m rows of the standard part, n values each>
//!
//! <m rows of the infinitesimal part>
//! ```
//!
//! Values are written with 17 significant digits, which round-trips every
//! finite `f64` exactly.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use crate::dual::DualMatrix;
use crate::error::{Error, Result};

pub const DMX_VERSION: u32 = 1;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn format_dmx(a: &DualMatrix) -> String {
    let (m, n) = a.shape();
    let mut out = format!("dmx {DMX_VERSION} {m} {n}\n");
    let block = |out: &mut String, part: &DMatrix<f64>| {
        for r in 0..m {
            for c in 0..n {
                if c > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{:.16e}", part[(r, c)]);
            }
            out.push('\n');
        }
    };
    block(&mut out, a.standard());
    out.push('\n');
    block(&mut out, a.infinitesimal());
    out
}

/// Whitespace-separated tokens of `line` with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - line.as_ptr() as usize + 1, t))
}

fn parse_block<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    m: usize,
    n: usize,
    which: &str,
    last_line: usize,
) -> Result<DMatrix<f64>> {
    let mut data = DMatrix::zeros(m, n);
    for r in 0..m {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_err(last_line + 1, 1, format!("expected {m} rows in the {which} block, found {r}")))?;
        let mut count = 0;
        for (col, tok) in tokens(line) {
            if count == n {
                return Err(parse_err(lno, col, format!("expected {n} values, found more")));
            }
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_err(lno, col, format!("`{tok}` is not a number")))?;
            if !v.is_finite() {
                return Err(parse_err(lno, col, format!("non-finite value `{tok}`")));
            }
            data[(r, count)] = v;
            count += 1;
        }
        if count < n {
            return Err(parse_err(lno, line.len() + 1, format!("expected {n} values, found {count}")));
        }
    }
    Ok(data)
}

pub fn parse_dmx(text: &str) -> Result<DualMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty input; expected `dmx 1 m n`"))?;
    let head: Vec<(usize, &str)> = tokens(header).collect();
    if head.first().map(|t| t.1) != Some("dmx") {
        return Err(parse_err(1, 1, "header must start with `dmx`"));
    }
    if head.len() != 4 {
        return Err(parse_err(1, 1, "header must be `dmx <version> <m> <n>`"));
    }
    let version: u32 = head[1]
        .1
        .parse()
        .map_err(|_| parse_err(1, head[1].0, "version is not an integer"))?;
    if version != DMX_VERSION {
        return Err(parse_err(1, head[1].0, format!("unsupported version {version}")));
    }
    let dim = |(col, tok): (usize, &str)| -> Result<usize> {
        tok.parse()
            .map_err(|_| parse_err(1, col, format!("`{tok}` is not a dimension")))
    };
    let m = dim(head[2])?;
    let n = dim(head[3])?;

    let standard = parse_block(&mut lines, m, n, "standard", 1)?;
    let after_std = 1 + m;
    match lines.next() {
        Some((_, l)) if l.trim().is_empty() => {}
        Some((lno, _)) => {
            return Err(parse_err(lno, 1, "expected a blank line before the infinitesimal block"));
        }
        None => {
            return Err(parse_err(
                after_std + 1,
                1,
                "missing infinitesimal block; expected a blank line separator",
            ));
        }
    }
    let infinitesimal = parse_block(&mut lines, m, n, "infinitesimal", after_std + 1)?;
    for (lno, l) in lines {
        if !l.trim().is_empty() {
            return Err(parse_err(lno, 1, "unexpected content after the infinitesimal block"));
        }
    }
    DualMatrix::new(standard, infinitesimal)
}

pub fn read_dmx(path: impl AsRef<Path>) -> Result<DualMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse_dmx(&text)
}

pub fn write_dmx(path: impl AsRef<Path>, a: &DualMatrix) -> Result<()> {
    std::fs::write(path, format_dmx(a))?;
    Ok(())
}
