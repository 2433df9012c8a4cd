use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SparseIntMatrix;

pub const DEFAULT_SEED: u64 = 0x6763_7832;
pub const DEFAULT_PRIME_COUNT: usize = 3;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// Source of distinct random primes in `[2^30, 2^31)`.
#[derive(Clone, Debug)]
pub struct PrimeSource {
    rng: ChaCha8Rng,
    used: Vec<u64>,
}

impl PrimeSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            used: Vec::new(),
        }
    }

    pub fn next_prime(&mut self) -> u64 {
        loop {
            let candidate = self.rng.gen_range((1u64 << 30)..(1u64 << 31));
            if is_prime(candidate) && !self.used.contains(&candidate) {
                self.used.push(candidate);
                return candidate;
            }
        }
    }

    pub fn take(&mut self, k: usize) -> Vec<u64> {
        (0..k).map(|_| self.next_prime()).collect()
    }
}

fn reduce(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

fn inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}

/// Rank over `F_p` by sparse elimination against a table of normalized pivot
/// rows.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    let mut rows: Vec<Vec<(usize, u64)>> = m
        .row_lists()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|(c, v)| (c, reduce(v, p)))
                .filter(|&(_, v)| v != 0)
                .collect::<Vec<_>>()
        })
        .filter(|r: &Vec<(usize, u64)>| !r.is_empty())
        .collect();
    rows.sort_by_key(|r| (r.len(), r[0].0));
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for mut row in rows {
        loop {
            let Some(&(lead, lv)) = row.first() else {
                break;
            };
            match pivots.get(&lead) {
                Some(piv) => row = axpy(&row, piv, p - lv, p),
                None => {
                    let inv = inverse(lv, p);
                    for e in row.iter_mut() {
                        e.1 = e.1 * inv % p;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `x + k * y` over `F_p`, both sorted by column.
fn axpy(x: &[(usize, u64)], y: &[(usize, u64)], k: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, y[j].1 * k % p));
            j += 1;
        } else {
            let v = (x[i].1 + y[j].1 * k) % p;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Ranks modulo several primes with their consensus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub primes: Vec<u64>,
    pub ranks: Vec<usize>,
    /// The largest modular rank, a lower bound for the rational rank.
    pub consensus: usize,
    pub agree: bool,
}

pub fn rank_modular(m: &SparseIntMatrix, primes: &[u64]) -> RankCertificate {
    let ranks: Vec<usize> = primes.par_iter().map(|&p| rank_mod_p(m, p)).collect();
    let consensus = ranks.iter().copied().max().unwrap_or(0);
    let agree = ranks.iter().all(|&r| r == consensus);
    RankCertificate {
        primes: primes.to_vec(),
        ranks,
        consensus,
        agree,
    }
}

/// Modular rank with `count` fresh primes, retrying with new primes while the
/// ranks disagree (at most `retries` extra rounds).
pub fn rank_certified(m: &SparseIntMatrix, source: &mut PrimeSource, count: usize, retries: usize) -> RankCertificate {
    let mut cert = rank_modular(m, &source.take(count));
    for _ in 0..retries {
        if cert.agree {
            break;
        }
        cert = rank_modular(m, &source.take(count));
    }
    cert
}
