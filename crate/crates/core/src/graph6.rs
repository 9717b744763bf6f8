//! graph6 encoding plus the loop sidecar line.
//!
//! A graph6 line is `N(n) R(x)`: the vertex count followed by the upper
//! triangle of the adjacency matrix in column order, packed six bits per
//! byte and offset by 63. graph6 has no room for loops, so a looped graph is
//! written as its graph6 line followed by `L: i1,i2,...` (0-based, ascending).
//! A missing sidecar means no loops.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, LoopedGraph};

pub const HEADER: &str = ">>graph6<<";
const SIDECAR_PREFIX: &str = "L:";
const BIAS: u8 = 63;

/// Largest order expressible with the 4-byte length form.
const SHORT_LONG_LIMIT: usize = 258_047;

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    push_order(&mut out, n);

    let nbits = n * n.saturating_sub(1) / 2;
    let mut bits = vec![false; nbits];
    for (u, v) in g.edges() {
        bits[v * (v - 1) / 2 + u] = true;
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - k);
            }
        }
        out.push((byte + BIAS) as char);
    }
    out
}

fn push_order(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + BIAS) as char);
    } else if n <= SHORT_LONG_LIMIT {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    }
}

/// Parses one graph6 string. A leading `>>graph6<<` header and trailing
/// whitespace are accepted. Error offsets are byte positions in `text`.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let start = if text.starts_with(HEADER) {
        HEADER.len()
    } else {
        0
    };
    let body = text[start..].trim_end_matches(['\n', '\r', ' ', '\t']);
    parse_at(body.as_bytes(), start)
}

fn parse_at(bytes: &[u8], base: usize) -> Result<Graph> {
    let err = |offset: usize, reason: &str| Error::Parse {
        offset: base + offset,
        reason: reason.to_string(),
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(err(i, "byte outside graph6 alphabet"));
        }
    }
    let digit = |i: usize| -> Result<usize> {
        bytes
            .get(i)
            .map(|&b| (b - BIAS) as usize)
            .ok_or_else(|| err(i, "truncated vertex count"))
    };

    let (n, header_len) = match bytes.first() {
        None => return Err(err(0, "empty graph6 string")),
        Some(&b'~') if bytes.get(1) == Some(&b'~') => {
            let mut n = 0;
            for i in 2..8 {
                n = n << 6 | digit(i)?;
            }
            (n, 8)
        }
        Some(&b'~') => {
            let mut n = 0;
            for i in 1..4 {
                n = n << 6 | digit(i)?;
            }
            (n, 4)
        }
        Some(&b) => ((b - BIAS) as usize, 1),
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() < expected {
        return Err(err(bytes.len(), "truncated adjacency data"));
    }
    if body.len() > expected {
        return Err(err(
            header_len + expected,
            "trailing bytes after adjacency data",
        ));
    }

    let mut edges = Vec::new();
    let (mut u, mut v) = (0usize, 1usize);
    for k in 0..nbits {
        let byte = body[k / 6] - BIAS;
        if byte >> (5 - k % 6) & 1 == 1 {
            edges.push((u, v));
        }
        u += 1;
        if u == v {
            u = 0;
            v += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - BIAS;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(header_len + expected - 1, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

/// Formats a sidecar line, or `None` when there are no loops.
pub fn sidecar_line(g: &LoopedGraph) -> Option<String> {
    if g.sigma() == 0 {
        return None;
    }
    let mut s = String::from("L: ");
    for (k, v) in g.loops().enumerate() {
        if k > 0 {
            s.push(',');
        }
        let _ = write!(s, "{v}");
    }
    Some(s)
}

/// Parses the index list of a sidecar line (`L: 3,4,5`). An empty list is
/// accepted and means no loops.
pub fn parse_sidecar(line: &str) -> Result<Vec<usize>> {
    let rest = line
        .strip_prefix(SIDECAR_PREFIX)
        .ok_or_else(|| Error::Parse {
            offset: 0,
            reason: "sidecar line must start with 'L:'".into(),
        })?;
    let mut out = Vec::new();
    let mut offset = SIDECAR_PREFIX.len();
    for piece in rest.split(',') {
        let trimmed = piece.trim();
        if !trimmed.is_empty() {
            let lead = piece.len() - piece.trim_start().len();
            let v = trimmed.parse::<usize>().map_err(|_| Error::Parse {
                offset: offset + lead,
                reason: format!("invalid loop index '{trimmed}'"),
            })?;
            out.push(v);
        } else if rest.contains(',') {
            return Err(Error::Parse {
                offset,
                reason: "empty loop index".into(),
            });
        }
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Writes a looped graph as its graph6 line and, if σ > 0, a sidecar line.
pub fn to_document_entry(g: &LoopedGraph) -> String {
    let mut s = to_graph6(g.base());
    s.push('\n');
    if let Some(side) = sidecar_line(g) {
        s.push_str(&side);
        s.push('\n');
    }
    s
}

/// Reads a multi-line document of graph6 lines, each optionally followed by
/// a sidecar. Blank lines and `>>graph6<<` headers are skipped. Error
/// offsets are byte positions in the whole document.
pub fn read_document(text: &str) -> Result<Vec<LoopedGraph>> {
    let mut out: Vec<LoopedGraph> = Vec::new();
    let mut pending_sidecar_allowed = false;
    let mut line_start = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.trim_end_matches(['\n', '\r']);
        let base = line_start;
        line_start += raw.len();

        let (line, skip) = match line.strip_prefix(HEADER) {
            Some(rest) => (rest, HEADER.len()),
            None => (line, 0),
        };
        let trimmed = line.trim_end();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with(SIDECAR_PREFIX) {
            if !pending_sidecar_allowed {
                return Err(Error::Parse {
                    offset: base + skip,
                    reason: "loop sidecar without a preceding graph6 line".into(),
                });
            }
            let loops = parse_sidecar(trimmed).map_err(|e| shift_offset(e, base + skip))?;
            let last = out.pop().expect("sidecar follows a graph");
            let looped = last.base().with_loops(loops).map_err(|e| match e {
                Error::VertexOutOfRange { index, n } => Error::Parse {
                    offset: base + skip,
                    reason: format!("loop index {index} out of range for n={n}"),
                },
                other => other,
            })?;
            out.push(looped);
            pending_sidecar_allowed = false;
            continue;
        }
        let g = parse_at(trimmed.as_bytes(), base + skip)?;
        out.push(g.without_loops());
        pending_sidecar_allowed = true;
    }
    Ok(out)
}

fn shift_offset(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { offset, reason } => Error::Parse {
            offset: offset + by,
            reason,
        },
        other => other,
    }
}
