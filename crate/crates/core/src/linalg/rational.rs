use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SparseIntMatrix;

/// Below this many rows and columns the dense fraction-free path is used.
pub const DENSE_LIMIT: usize = 500;

/// Exact rank over the rationals.
pub fn rank_rational(m: &SparseIntMatrix) -> usize {
    if m.rows() < DENSE_LIMIT && m.cols() < DENSE_LIMIT {
        rank_bareiss(m)
    } else {
        rank_sparse(m)
    }
}

/// Fraction-free Gaussian elimination on a dense integer copy.
pub fn rank_bareiss(m: &SparseIntMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = vec![vec![BigInt::zero(); cols]; rows];
    for &(r, c, v) in m.entries() {
        a[r][c] = BigInt::from(v);
    }
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let x = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                let (q, rem) = x.div_rem(&prev);
                debug_assert!(rem.is_zero());
                a[r][c] = q;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

type RatRow = Vec<(usize, BigRational)>;

fn rat_axpy(x: &RatRow, y: &RatRow, k: &BigRational) -> RatRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i >= x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, &y[j].1 * k));
            j += 1;
        } else {
            let v = &x[i].1 + &y[j].1 * k;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Echelon form of the given rows: pivot column to a row with leading 1.
fn echelon(rows: Vec<RatRow>) -> (HashMap<usize, RatRow>, Vec<RatRow>) {
    let mut pivots: HashMap<usize, RatRow> = HashMap::new();
    let mut zero_rows = Vec::new();
    for mut row in rows {
        loop {
            let Some((lead, lv)) = row.first().cloned() else {
                zero_rows.push(row);
                break;
            };
            match pivots.get(&lead) {
                Some(piv) => row = rat_axpy(&row, piv, &-lv),
                None => {
                    let inv = lv.recip();
                    for e in row.iter_mut() {
                        e.1 = &e.1 * &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    (pivots, zero_rows)
}

fn rational_rows(m: &SparseIntMatrix) -> Vec<RatRow> {
    m.row_lists()
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, BigRational::from_integer(v.into()))).collect())
        .collect()
}

/// Sparse elimination over the rationals.
pub fn rank_sparse(m: &SparseIntMatrix) -> usize {
    let mut rows: Vec<RatRow> = rational_rows(m).into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(|r| (r.len(), r[0].0));
    echelon(rows).0.len()
}

/// A rational `x` with `m * x = rhs`, if one exists.
pub fn solve_rational(m: &SparseIntMatrix, rhs: &[i64]) -> Option<Vec<BigRational>> {
    let cols = m.cols();
    // augmented column index `cols` carries the right-hand side
    let rows: Vec<RatRow> = rational_rows(m)
        .into_iter()
        .zip(rhs)
        .map(|(mut r, &b)| {
            if b != 0 {
                r.push((cols, BigRational::from_integer(b.into())));
            }
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    let (pivots, _) = echelon(rows);
    if pivots.contains_key(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    let mut leads: Vec<usize> = pivots.keys().copied().collect();
    leads.sort_unstable_by(|a, b| b.cmp(a));
    for lead in leads {
        let row = &pivots[&lead];
        let mut val = BigRational::zero();
        for (c, v) in row.iter().skip(1) {
            if *c == cols {
                val += v;
            } else {
                val -= v * &x[*c];
            }
        }
        x[lead] = val;
    }
    Some(x)
}

/// `m * x` over the rationals.
pub fn apply_rational(m: &SparseIntMatrix, x: &[BigRational]) -> Vec<BigRational> {
    let mut y = vec![BigRational::zero(); m.rows()];
    for &(r, c, v) in m.entries() {
        y[r] += &x[c] * BigRational::from_integer(v.into());
    }
    y
}
