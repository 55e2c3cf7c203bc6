//! Plain-text serialization of chain complexes.
//!
//! ```text
//! field 2
//! degree 3: 2 cells
//! degree 4: 8 cells
//! boundary 4
//! 6: 0 1
//! 7: 0 1
//! ```
//!
//! A `boundary k` block lists, per cell of degree `k`, the indices of the
//! degree-`k-1` cells in its boundary; `index*coeff` carries a coefficient
//! other than 1. Cells with zero boundary may be omitted. Lines starting
//! with `#` are comments.

use super::{ChainComplex, FFMatrix, HomologyError};

pub fn write_complex(complex: &ChainComplex) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {}\n", complex.field()));
    for (k, &n) in complex.dims().iter().enumerate() {
        if n > 0 {
            out.push_str(&format!("degree {k}: {n} cells\n"));
        }
    }
    for (k, &n) in complex.dims().iter().enumerate() {
        if k == 0 || n == 0 {
            continue;
        }
        let b = complex.boundary(k);
        if b.is_zero() {
            continue;
        }
        out.push_str(&format!("boundary {k}\n"));
        for cell in 0..n {
            let mut terms = Vec::new();
            for row in 0..b.rows() {
                let coeff = b.get(row, cell);
                if coeff == 1 {
                    terms.push(format!("{row}"));
                } else if coeff != 0 {
                    terms.push(format!("{row}*{coeff}"));
                }
            }
            if !terms.is_empty() {
                out.push_str(&format!("{cell}: {}\n", terms.join(" ")));
            }
        }
    }
    out
}

pub fn parse_complex(input: &str) -> Result<ChainComplex, HomologyError> {
    let err = |line: usize, msg: String| HomologyError::Parse { line, msg };

    let mut field: Option<u32> = None;
    let mut degrees: Vec<(usize, usize)> = Vec::new();
    // (degree, cell, row, coeff) triples gathered before we know all dims
    let mut entries: Vec<(usize, usize, usize, u32)> = Vec::new();
    let mut current_boundary: Option<usize> = None;

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("field ") {
            let q: u32 = rest
                .trim()
                .parse()
                .map_err(|_| err(lineno, format!("invalid field modulus '{rest}'")))?;
            field = Some(q);
        } else if let Some(rest) = line.strip_prefix("degree ") {
            let (deg_part, cells_part) = rest
                .split_once(':')
                .ok_or_else(|| err(lineno, "expected 'degree k: n cells'".into()))?;
            let degree: usize = deg_part
                .trim()
                .parse()
                .map_err(|_| err(lineno, format!("invalid degree '{}'", deg_part.trim())))?;
            let count_str = cells_part.trim().trim_end_matches("cells").trim();
            let count: usize = count_str
                .parse()
                .map_err(|_| err(lineno, format!("invalid cell count '{count_str}'")))?;
            degrees.push((degree, count));
        } else if let Some(rest) = line.strip_prefix("boundary ") {
            let degree: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(lineno, format!("invalid boundary degree '{rest}'")))?;
            if degree == 0 {
                return Err(err(lineno, "degree 0 has no boundary map".into()));
            }
            current_boundary = Some(degree);
        } else if let Some((cell_part, terms_part)) = line.split_once(':') {
            let degree = current_boundary
                .ok_or_else(|| err(lineno, "boundary row outside a 'boundary k' block".into()))?;
            let cell: usize = cell_part
                .trim()
                .parse()
                .map_err(|_| err(lineno, format!("invalid cell index '{}'", cell_part.trim())))?;
            for term in terms_part.split_whitespace() {
                let (row_str, coeff_str) = match term.split_once('*') {
                    Some((r, c)) => (r, Some(c)),
                    None => (term, None),
                };
                let row: usize = row_str
                    .parse()
                    .map_err(|_| err(lineno, format!("invalid face index '{row_str}'")))?;
                let coeff: u32 = match coeff_str {
                    Some(c) => {
                        c.parse().map_err(|_| err(lineno, format!("invalid coefficient '{c}'")))?
                    }
                    None => 1,
                };
                entries.push((degree, cell, row, coeff));
            }
        } else {
            return Err(err(lineno, format!("unrecognized line '{line}'")));
        }
    }

    let q = field.ok_or_else(|| err(0, "missing 'field q' header".into()))?;
    let top = degrees.iter().map(|&(d, _)| d).max().unwrap_or(0);
    let mut dims = vec![0usize; top + 1];
    for &(d, n) in &degrees {
        dims[d] = n;
    }
    let mut complex = ChainComplex::with_zero_boundaries(q, dims.clone())?;
    let mut maps: Vec<FFMatrix> = (0..dims.len())
        .map(|k| {
            let rows = if k == 0 { 0 } else { dims[k - 1] };
            FFMatrix::zeros(q, rows, dims[k]).expect("field validated above")
        })
        .collect();
    for (degree, cell, row, coeff) in entries {
        if degree >= dims.len() || cell >= dims[degree] {
            return Err(err(0, format!("cell {cell} out of range in degree {degree}")));
        }
        if degree == 0 || row >= dims[degree - 1] {
            return Err(err(0, format!("face {row} out of range for boundary {degree}")));
        }
        maps[degree].set(row, cell, coeff);
    }
    for (k, m) in maps.into_iter().enumerate() {
        complex.set_boundary(k, m)?;
    }
    Ok(complex)
}
