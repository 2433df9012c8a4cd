use std::io::{BufRead, Write};

use super::SparseIntMatrix;
use crate::error::{Error, Result};

pub const HEADER: &str = "%%MatrixMarket matrix coordinate integer general";

/// Coordinate format, 1-based, entries in column-major order.
pub fn write_matrix_market<W: Write>(m: &SparseIntMatrix, mut out: W) -> Result<()> {
    writeln!(out, "{HEADER}")?;
    writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nnz())?;
    for &(r, c, v) in m.entries() {
        writeln!(out, "{} {} {}", r + 1, c + 1, v)?;
    }
    Ok(())
}

pub fn to_matrix_market_string(m: &SparseIntMatrix) -> String {
    let mut buf = Vec::new();
    write_matrix_market(m, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn read_matrix_market<R: BufRead>(input: R) -> Result<SparseIntMatrix> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty MatrixMarket input".into()))??;
    if !header.trim().eq_ignore_ascii_case(HEADER) {
        return Err(Error::Parse(format!("unsupported MatrixMarket header `{header}`")));
    }
    let mut size = None;
    let mut triplets = Vec::new();
    for line in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        let nums: Vec<i64> = fields
            .iter()
            .map(|f| f.parse::<i64>().map_err(|_| Error::Parse(format!("bad number in `{t}`"))))
            .collect::<Result<_>>()?;
        if nums.len() != 3 {
            return Err(Error::Parse(format!("expected three fields in `{t}`")));
        }
        match size {
            None => {
                if nums.iter().any(|&x| x < 0) {
                    return Err(Error::Parse("negative size".into()));
                }
                size = Some((nums[0] as usize, nums[1] as usize, nums[2] as usize));
            }
            Some(_) => {
                if nums[0] < 1 || nums[1] < 1 {
                    return Err(Error::Parse(format!("index below 1 in `{t}`")));
                }
                triplets.push((nums[0] as usize - 1, nums[1] as usize - 1, nums[2]));
            }
        }
    }
    let (rows, cols, nnz) = size.ok_or_else(|| Error::Parse("missing size line".into()))?;
    if triplets.len() != nnz {
        return Err(Error::Parse(format!("expected {nnz} entries, found {}", triplets.len())));
    }
    SparseIntMatrix::from_triplets(rows, cols, triplets)
}
