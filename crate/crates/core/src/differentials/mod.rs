//! Differentials, the Lie bracket, and chain maps between complexes.
//!
//! All operators act on canonical representatives: the representative's list
//! order is its orientation, each elementary move writes the induced order of
//! the resulting labelled graph, and canonicalization turns that order into a
//! sign.

mod aux;
mod bracket;
mod delta;
mod maps;

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

pub use aux::d_aux;
pub use bracket::{bracket, edge, insert, jacobi, reconciling_sign};
pub use delta::{delta, delta_directed, d_weighted, differential};
pub use maps::{
    loop_action, map_f_wheeled, map_f_wheeled_projected, map_i_directed, project_equal, project_summand,
    rescaling_chain_literal, rescaling_class,
};

use crate::graphs::{canonize, CanonicalGraph, Parity};

/// Finite linear combination with exact integer coefficients and no stored
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for ChainVector<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> ChainVector<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis_vector(key: K) -> Self {
        let mut v = Self::new();
        v.add(key, 1);
        v
    }

    pub fn add(&mut self, key: K, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: i64) {
        for (k, &c) in &other.terms {
            self.add(k.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: i64) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, scale);
        out
    }

    pub fn coefficient(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }

    /// Apply a linear map given on keys.
    pub fn map_linear<K2: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<ChainVector<K2>, E>,
    ) -> Result<ChainVector<K2>, E> {
        let mut out = ChainVector::new();
        for (k, &c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for ChainVector<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        let mut v = Self::new();
        for (k, c) in iter {
            v.add(k, c);
        }
        v
    }
}

/// JSON form: canonical key to integer string.
impl<K: Ord + fmt::Display> Serialize for ChainVector<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            m.serialize_entry(&k.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl<K: Ord + fmt::Display> fmt::Display for ChainVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*[{k}]")?;
        }
        Ok(())
    }
}

/// Accumulates labelled graphs with coefficients into canonical classes.
pub(crate) struct Accumulator {
    parity: Parity,
    directed: bool,
    pub out: ChainVector<CanonicalGraph>,
}

impl Accumulator {
    pub fn new(parity: Parity, directed: bool) -> Self {
        Self {
            parity,
            directed,
            out: ChainVector::new(),
        }
    }

    pub fn push(&mut self, n: usize, edges: &[(usize, usize)], weights: Option<&[u32]>, coeff: i64) {
        let c = canonize(n, edges, self.directed, weights, self.parity);
        if c.sign != 0 {
            self.out.add(c.graph, coeff * c.sign);
        }
    }
}

/// `(-1)^k`
pub(crate) fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
