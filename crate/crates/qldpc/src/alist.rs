//! Plain-text interchange format for sparse binary matrices.
//!
//! The layout is the community-standard adjacency-list file: sizes, weight
//! maxima, per-column and per-row weights, then one line of 1-based row
//! indices per column and one line of 1-based column indices per row, each
//! padded with `0` entries up to the respective maximum weight. Both
//! adjacency halves are written and cross-checked on read, so a file
//! corrupted in either half is rejected with the offending line number.

use std::fs;
use std::path::Path;

use crate::gf2::SparseBinMat;
use crate::{Error, Result};

/// Render a matrix in the adjacency-list format. Fields are single-space
/// separated with no trailing spaces; every line ends with `\n`.
pub fn to_alist_string(matrix: &SparseBinMat) -> String {
    let m = matrix.n_rows();
    let n = matrix.n_cols();
    let mut cols: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (r, row) in matrix.rows().enumerate() {
        for &c in row {
            cols[c].push(r + 1);
        }
    }
    let col_weights: Vec<usize> = cols.iter().map(Vec::len).collect();
    let row_weights = matrix.row_weights();
    let max_col = col_weights.iter().copied().max().unwrap_or(0);
    let max_row = row_weights.iter().copied().max().unwrap_or(0);

    let join = |values: &[usize]| {
        values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let padded = |indices: &[usize], width: usize| {
        let mut line: Vec<usize> = indices.to_vec();
        line.resize(width, 0);
        join(&line)
    };

    let mut out = String::new();
    out.push_str(&format!("{n} {m}\n"));
    out.push_str(&format!("{max_col} {max_row}\n"));
    out.push_str(&join(&col_weights));
    out.push('\n');
    out.push_str(&join(&row_weights));
    out.push('\n');
    for col in &cols {
        out.push_str(&padded(col, max_col));
        out.push('\n');
    }
    for row in matrix.rows() {
        let shifted: Vec<usize> = row.iter().map(|&c| c + 1).collect();
        out.push_str(&padded(&shifted, max_row));
        out.push('\n');
    }
    out
}

/// Parse the format produced by [`to_alist_string`]. `origin` names the
/// source in errors (a path, or a label for in-memory text).
pub fn parse_alist(text: &str, origin: &str) -> Result<SparseBinMat> {
    let lines: Vec<&str> = text.lines().collect();
    let fail = |line: usize, msg: String| Error::Parse {
        path: origin.to_string(),
        line,
        msg,
    };
    let get_line = |idx: usize| -> Result<&str> {
        lines
            .get(idx)
            .copied()
            .ok_or_else(|| fail(lines.len() + 1, "unexpected end of file".into()))
    };
    let ints = |idx: usize| -> Result<Vec<usize>> {
        get_line(idx)?
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| fail(idx + 1, format!("invalid integer `{tok}`")))
            })
            .collect()
    };

    let sizes = ints(0)?;
    if sizes.len() != 2 {
        return Err(fail(1, format!("expected `columns rows`, got {} fields", sizes.len())));
    }
    let (n, m) = (sizes[0], sizes[1]);
    let maxima = ints(1)?;
    if maxima.len() != 2 {
        return Err(fail(
            2,
            format!("expected `max_col_weight max_row_weight`, got {} fields", maxima.len()),
        ));
    }
    let (max_col, max_row) = (maxima[0], maxima[1]);
    let col_weights = ints(2)?;
    if col_weights.len() != n {
        return Err(fail(
            3,
            format!("expected {n} column weights, got {}", col_weights.len()),
        ));
    }
    let row_weights = ints(3)?;
    if row_weights.len() != m {
        return Err(fail(
            4,
            format!("expected {m} row weights, got {}", row_weights.len()),
        ));
    }
    if let Some(w) = col_weights.iter().find(|&&w| w > max_col) {
        return Err(fail(3, format!("column weight {w} exceeds the stated maximum {max_col}")));
    }
    if let Some(w) = row_weights.iter().find(|&&w| w > max_row) {
        return Err(fail(4, format!("row weight {w} exceeds the stated maximum {max_row}")));
    }
    if col_weights.iter().sum::<usize>() != row_weights.iter().sum::<usize>() {
        return Err(fail(4, "column weights and row weights sum differently".into()));
    }

    // One line of 1-based indices per column, then per row; entries beyond
    // the stated weight must be the `0` padding.
    let read_adjacency = |first_line: usize,
                          count: usize,
                          weights: &[usize],
                          padded_width: usize,
                          index_limit: usize,
                          what: &str,
                          bound: &str|
     -> Result<Vec<Vec<usize>>> {
        let mut all = Vec::with_capacity(count);
        for i in 0..count {
            let idx = first_line + i;
            let line_no = idx + 1;
            let entries = ints(idx)?;
            if padded_width > 0 && entries.len() != padded_width {
                return Err(fail(
                    line_no,
                    format!("expected {padded_width} entries, got {}", entries.len()),
                ));
            }
            let w = weights[i];
            let mut indices = Vec::with_capacity(w);
            for (pos, &value) in entries.iter().enumerate() {
                if pos < w {
                    if value == 0 || value > index_limit {
                        return Err(fail(
                            line_no,
                            format!("{what} index {value} out of range 1..={index_limit} ({bound})"),
                        ));
                    }
                    indices.push(value - 1);
                } else if value != 0 {
                    return Err(fail(
                        line_no,
                        format!("expected `0` padding after {w} entries, got {value}"),
                    ));
                }
            }
            if indices.windows(2).any(|p| p[0] >= p[1]) {
                return Err(fail(
                    line_no,
                    format!("{what} indices must be strictly increasing"),
                ));
            }
            all.push(indices);
        }
        Ok(all)
    };

    let cols = read_adjacency(4, n, &col_weights, max_col, m, "row", "per column")?;
    let rows = read_adjacency(4 + n, m, &row_weights, max_row, n, "column", "per row")?;

    for (extra, line) in lines.iter().enumerate().skip(4 + n + m) {
        if !line.trim().is_empty() {
            return Err(fail(extra + 1, "unexpected trailing content".into()));
        }
    }

    // The halves must describe the same matrix.
    let mut cols_from_rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (r, row) in rows.iter().enumerate() {
        for &c in row {
            cols_from_rows[c].push(r);
        }
    }
    for (c, (stated, derived)) in cols.iter().zip(cols_from_rows.iter()).enumerate() {
        if stated != derived {
            return Err(fail(
                4 + c + 1,
                format!("column {} disagrees with the row lists", c + 1),
            ));
        }
    }

    SparseBinMat::new(n, rows).map_err(|e| fail(4 + n + 1, e.to_string()))
}

/// Write `matrix` to `path` in the adjacency-list format.
pub fn write_alist(matrix: &SparseBinMat, path: &Path) -> Result<()> {
    fs::write(path, to_alist_string(matrix))?;
    Ok(())
}

/// Read a matrix from an adjacency-list file.
pub fn read_alist(path: &Path) -> Result<SparseBinMat> {
    let text = fs::read_to_string(path)?;
    parse_alist(&text, &path.display().to_string())
}
