//! The bracketed image-list literal shared by all three families.

use std::fmt;

use crate::error::{parse_error, Result};

use super::{check_degree, MAX_DEGREE};

/// Parses `[2,-,3]` into 0-based images, `None` for `-`.
pub(super) fn parse(kind: &'static str, input: &str) -> Result<Vec<Option<u8>>> {
    let trimmed = input.trim();
    let body = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| parse_error(kind, input, "expected `[..]`"))?;
    if body.trim().is_empty() {
        return Err(parse_error(kind, input, "degree must be at least 1"));
    }
    let entries: Vec<&str> = body.split(',').map(str::trim).collect();
    let n = entries.len();
    if n > MAX_DEGREE {
        return Err(parse_error(kind, input, format!("degree exceeds {MAX_DEGREE}")));
    }
    check_degree(n)?;
    entries
        .into_iter()
        .map(|entry| {
            if entry == "-" {
                return Ok(None);
            }
            let point: usize = entry
                .parse()
                .map_err(|_| parse_error(kind, input, format!("bad entry `{entry}`")))?;
            if point == 0 || point > n {
                return Err(parse_error(kind, input, format!("entry {point} is outside 1..={n}")));
            }
            Ok(Some((point - 1) as u8))
        })
        .collect()
}

pub(super) fn write(f: &mut fmt::Formatter<'_>, images: impl Iterator<Item = Option<u8>>) -> fmt::Result {
    f.write_str("[")?;
    for (i, image) in images.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        match image {
            Some(p) => write!(f, "{}", p as usize + 1)?,
            None => f.write_str("-")?,
        }
    }
    f.write_str("]")
}
