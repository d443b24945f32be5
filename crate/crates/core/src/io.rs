//! The text and binary coloring formats.
//!
//! Text v1:
//!
//! ```text
//! ramsey-coloring v1
//! n=5
//! .RBBR
//! R.RBB
//! BR.RB
//! BBR.R
//! RBBR.
//! ```
//!
//! Binary v1: the magic `BKRM`, the version byte `0x01`, `n` as a
//! little-endian `u32`, then the upper-triangle blue indicators in row-major
//! pair order packed LSB-first, `ceil(n(n-1)/2 / 8)` bytes with zero padding.

use std::path::Path;

use crate::coloring::{Color, TwoColoring};
use crate::error::{parse_err, Result};

pub const TEXT_HEADER: &str = "ramsey-coloring v1";
pub const BINARY_MAGIC: &[u8; 4] = b"BKRM";
pub const BINARY_VERSION: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Binary,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" | "txt" => Ok(Format::Text),
            "binary" | "bin" => Ok(Format::Binary),
            _ => crate::error::domain(format!("unknown format {s:?} (expected text or binary)")),
        }
    }
}

pub fn write_text(c: &TwoColoring) -> String {
    let n = c.n();
    let mut out = String::with_capacity(32 + n * (n + 1));
    out.push_str(TEXT_HEADER);
    out.push('\n');
    out.push_str(&format!("n={n}\n"));
    for i in 0..n {
        for j in 0..n {
            out.push(if i == j {
                '.'
            } else if c.is_blue(i, j) {
                'B'
            } else {
                'R'
            });
        }
        out.push('\n');
    }
    out
}

pub fn read_text(text: &str) -> Result<TwoColoring> {
    let mut lines = text.split('\n');
    let header = lines.next().unwrap_or("");
    if header.trim_end_matches('\r') != TEXT_HEADER {
        return Err(parse_err("line 1", format!("expected header {TEXT_HEADER:?}")));
    }
    let size_line = lines.next().unwrap_or("").trim_end_matches('\r');
    let n: usize = size_line
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err("line 2", "expected n=<vertex count>"))?;
    if n == 0 {
        return Err(parse_err("line 2", "vertex count must be at least 1"));
    }
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n);
    for i in 0..n {
        let line_no = i + 3;
        let line = lines
            .next()
            .ok_or_else(|| parse_err(format!("line {line_no}"), "missing matrix row"))?
            .trim_end_matches('\r');
        if line.len() != n {
            return Err(parse_err(
                format!("line {line_no}"),
                format!("row has {} characters, expected {n}", line.len()),
            ));
        }
        let row = line.as_bytes().to_vec();
        for (j, &ch) in row.iter().enumerate() {
            let ok = match ch {
                b'.' => i == j,
                b'R' | b'B' => i != j,
                _ => false,
            };
            if !ok {
                let msg = if i == j {
                    "diagonal entry must be '.'".to_string()
                } else {
                    format!("unexpected character {:?}", ch as char)
                };
                return Err(parse_err(format!("line {line_no}, column {}", j + 1), msg));
            }
        }
        rows.push(row);
    }
    for rest in lines {
        if !rest.trim().is_empty() {
            return Err(parse_err(format!("line {}", n + 3), "trailing content after matrix"));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if rows[i][j] != rows[j][i] {
                return Err(parse_err(
                    format!("line {}, column {}", j + 3, i + 1),
                    format!("matrix not symmetric at ({i},{j})"),
                ));
            }
        }
    }
    TwoColoring::from_fn(n, |i, j| {
        if rows[i][j] == b'B' {
            Color::Blue
        } else {
            Color::Red
        }
    })
}

fn payload_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(8)
}

pub fn write_binary(c: &TwoColoring) -> Vec<u8> {
    let n = c.n();
    let mut out = Vec::with_capacity(9 + payload_len(n));
    out.extend_from_slice(BINARY_MAGIC);
    out.push(BINARY_VERSION);
    out.extend_from_slice(&(n as u32).to_le_bytes());
    let mut payload = vec![0u8; payload_len(n)];
    for (idx, blue) in c.upper_blue().enumerate() {
        if blue {
            payload[idx / 8] |= 1 << (idx % 8);
        }
    }
    out.extend_from_slice(&payload);
    out
}

pub fn read_binary(bytes: &[u8]) -> Result<TwoColoring> {
    if bytes.len() < 4 || &bytes[..4] != BINARY_MAGIC {
        return Err(parse_err("offset 0", "bad magic (expected BKRM)"));
    }
    match bytes.get(4) {
        Some(&BINARY_VERSION) => {}
        Some(v) => return Err(parse_err("offset 4", format!("unsupported version {v}"))),
        None => return Err(parse_err("offset 4", "truncated before version byte")),
    }
    let size: [u8; 4] = bytes
        .get(5..9)
        .and_then(|s| s.try_into().ok())
        .ok_or_else(|| parse_err("offset 5", "truncated vertex count"))?;
    let n = u32::from_le_bytes(size) as usize;
    if n == 0 {
        return Err(parse_err("offset 5", "vertex count must be at least 1"));
    }
    let need = payload_len(n);
    let payload = &bytes[9..];
    if payload.len() < need {
        return Err(parse_err(
            format!("offset {}", bytes.len()),
            format!("truncated pair bits: {} of {need} bytes", payload.len()),
        ));
    }
    if payload.len() > need {
        return Err(parse_err(format!("offset {}", 9 + need), "trailing bytes after pair bits"));
    }
    let pairs = n * (n - 1) / 2;
    if pairs % 8 != 0 {
        let last = payload[need - 1];
        if last >> (pairs % 8) != 0 {
            return Err(parse_err(format!("offset {}", 9 + need - 1), "nonzero padding bits"));
        }
    }
    TwoColoring::from_upper_blue(n, (0..pairs).map(|idx| payload[idx / 8] >> (idx % 8) & 1 == 1))
}

/// Parses either format, chosen by the leading bytes.
pub fn read_any(bytes: &[u8]) -> Result<TwoColoring> {
    if bytes.starts_with(BINARY_MAGIC) {
        read_binary(bytes)
    } else {
        let text = std::str::from_utf8(bytes)
            .map_err(|e| parse_err(format!("byte {}", e.valid_up_to()), "not UTF-8 text"))?;
        read_text(text)
    }
}

pub fn write(c: &TwoColoring, format: Format) -> Vec<u8> {
    match format {
        Format::Text => write_text(c).into_bytes(),
        Format::Binary => write_binary(c),
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<TwoColoring> {
    read_any(&std::fs::read(path)?)
}

pub fn save(c: &TwoColoring, path: impl AsRef<Path>, format: Format) -> Result<()> {
    std::fs::write(path, write(c, format))?;
    Ok(())
}
