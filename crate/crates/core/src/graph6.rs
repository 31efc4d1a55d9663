//! graph6 encoding of simple graphs.
//!
//! Layout: a size header `N(n)` followed by the upper triangle of the
//! adjacency matrix, column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed big-endian into 6-bit groups, each stored as the byte `63 + value`.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + OFFSET);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + OFFSET);
        }
    }
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (start, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    let value = |k: usize| -> Result<usize> {
        match body.get(k) {
            None => Err(err(start + k, "unexpected end of input")),
            Some(&b) if !(63..=126).contains(&b) => {
                Err(err(start + k, format!("byte {b:#04x} outside 63..=126")))
            }
            Some(&b) => Ok((b - OFFSET) as usize),
        }
    };
    let (n, mut pos) = if body.is_empty() {
        return Err(err(start, "empty input"));
    } else if body[0] != 126 {
        (value(0)?, 1)
    } else if body.get(1) != Some(&126) {
        let mut n = 0;
        for k in 1..4 {
            n = (n << 6) | value(k)?;
        }
        if n <= 62 {
            return Err(err(start, "non-canonical size header"));
        }
        (n, 4)
    } else {
        let mut n = 0usize;
        for k in 2..8 {
            n = (n << 6) | value(k)?;
        }
        if n <= 258_047 {
            return Err(err(start, "non-canonical size header"));
        }
        (n, 8)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() < pos + needed {
        return Err(err(
            start + body.len(),
            format!("truncated: {needed} data bytes needed for {n} vertices"),
        ));
    }
    if body.len() > pos + needed {
        return Err(err(start + pos + needed, "trailing bytes after adjacency data"));
    }
    let mut g = Graph::empty(n);
    let mut k = 0usize;
    let mut chunk = 0usize;
    for j in 1..n {
        for i in 0..j {
            if k.is_multiple_of(6) {
                chunk = value(pos)?;
                pos += 1;
            }
            if (chunk >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) && chunk & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(err(start + pos - 1, "non-zero padding bits"));
    }
    Ok(g)
}
