//! Exact sparse integer matrices: assembly from bases, modular and rational
//! rank, image membership with certificates, MatrixMarket interchange.

mod mm;
mod modp;
mod rational;
mod sparse;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use mm::{read_matrix_market, to_matrix_market_string, write_matrix_market, HEADER as MATRIX_MARKET_HEADER};
pub use modp::{rank_certified, rank_mod_p, rank_modular, PrimeSource, RankCertificate, DEFAULT_PRIME_COUNT, DEFAULT_SEED};
pub use rational::{apply_rational, rank_bareiss, rank_rational, rank_sparse, solve_rational};
pub use sparse::{assemble, SparseIntMatrix};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankMode {
    Modular,
    Rational,
}

/// Rank of `m` in the given mode. Modular mode uses `primes`.
pub fn rank(m: &SparseIntMatrix, mode: RankMode, primes: &[u64]) -> RankCertificate {
    match mode {
        RankMode::Modular => rank_modular(m, primes),
        RankMode::Rational => {
            let r = rank_rational(m);
            RankCertificate {
                primes: Vec::new(),
                ranks: vec![r],
                consensus: r,
                agree: true,
            }
        }
    }
}

/// Outcome of an image-membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImageTest {
    /// `m * witness = v`, re-verified exactly.
    Yes { witness: Vec<BigRational> },
    /// Appending `v` raises the rank modulo every listed prime, and the modular
    /// ranks of `m` agree across them.
    No { primes: Vec<u64>, rank: usize, augmented_rank: usize },
}

impl ImageTest {
    pub fn is_yes(&self) -> bool {
        matches!(self, Self::Yes { .. })
    }
}

fn rational_membership(m: &SparseIntMatrix, v: &[i64]) -> Result<ImageTest> {
    match solve_rational(m, v) {
        Some(witness) => {
            let back = apply_rational(m, &witness);
            let ok = back
                .iter()
                .zip(v)
                .all(|(a, &b)| *a == BigRational::from_integer(b.into()));
            if !ok {
                return Err(Error::Dimension("rational witness failed verification".into()));
            }
            Ok(ImageTest::Yes { witness })
        }
        None => {
            let r = rank_rational(m);
            Ok(ImageTest::No {
                primes: Vec::new(),
                rank: r,
                augmented_rank: r + 1,
            })
        }
    }
}

/// Whether `v` lies in the column space of `m` over the rationals.
///
/// Modular mode compares the rank of `m` with the rank of `[m | v]` modulo
/// each prime; when all primes agree on a rank jump the answer is `No`, when
/// they agree on no jump a rational witness is computed. Disagreement falls
/// back to exact rational elimination.
pub fn in_image(m: &SparseIntMatrix, v: &[i64], mode: RankMode, primes: &[u64]) -> Result<ImageTest> {
    if v.len() != m.rows() {
        return Err(Error::Dimension(format!("vector of length {} for {} rows", v.len(), m.rows())));
    }
    if v.iter().all(|&x| x == 0) {
        return Ok(ImageTest::Yes {
            witness: vec![BigRational::zero(); m.cols()],
        });
    }
    if mode == RankMode::Rational || primes.is_empty() {
        return rational_membership(m, v);
    }
    let aug = m.with_column(v)?;
    let a = rank_modular(m, primes);
    let b = rank_modular(&aug, primes);
    let jumps: Vec<bool> = a.ranks.iter().zip(&b.ranks).map(|(x, y)| y > x).collect();
    if a.agree && b.agree && jumps.iter().all(|&j| j) {
        return Ok(ImageTest::No {
            primes: primes.to_vec(),
            rank: a.consensus,
            augmented_rank: b.consensus,
        });
    }
    rational_membership(m, v)
}
