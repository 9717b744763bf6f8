//! Text formats shared by the command line and the web demo.

use crate::error::{Error, Result};
use crate::graph::{Graph, LoopedGraph};

/// Fixed ten significant digits with a `.` separator. Magnitudes below
/// `1e-4` or from `1e10` upward switch to exponent form. Zero (of either sign)
/// prints as `0.000000000`.
pub fn format_sig10(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.9e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("exponent in scientific format");
    if !(-4..10).contains(&exp) {
        return sci;
    }
    let decimals = (9 - exp) as usize;
    format!("{x:.decimals$}")
}

/// Space-separated 0/1 rows of `A(G) + I_σ`, one row per line.
pub fn to_matrix_text(g: &LoopedGraph) -> String {
    let mut s = String::new();
    for row in g.adjacency_matrix().rows() {
        let cells: Vec<&str> = row
            .iter()
            .map(|&x| if x == 0.0 { "0" } else { "1" })
            .collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

/// Parses one or more adjacency blocks separated by blank lines. A `1` on
/// the diagonal is a loop. Cells may be separated by spaces, commas or
/// nothing at all (`011`).
pub fn parse_matrix_text(text: &str) -> Result<Vec<LoopedGraph>> {
    let mut out = Vec::new();
    let mut block: Vec<Vec<u8>> = Vec::new();
    for line in text.lines().chain(std::iter::once("")) {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            if !block.is_empty() {
                out.push(block_to_graph(&block)?);
                block.clear();
            }
            continue;
        }
        let row = block.len();
        let mut cells = Vec::new();
        for ch in trimmed.chars().filter(|c| !c.is_whitespace() && *c != ',') {
            match ch {
                '0' => cells.push(0),
                '1' => cells.push(1),
                other => {
                    return Err(Error::InvalidEntry {
                        row,
                        col: cells.len(),
                        value: other.to_string(),
                    })
                }
            }
        }
        block.push(cells);
    }
    Ok(out)
}

#[allow(clippy::needless_range_loop)]
fn block_to_graph(rows: &[Vec<u8>]) -> Result<LoopedGraph> {
    let n = rows.len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                row: i,
                len: r.len(),
                expected: n,
            });
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rows[i][j] != rows[j][i] {
                return Err(Error::Asymmetric { row: i, col: j });
            }
            if rows[i][j] == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)?.with_loops((0..n).filter(|&i| rows[i][i] == 1))
}
