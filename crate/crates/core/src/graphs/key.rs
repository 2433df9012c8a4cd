use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Multigraph, Parity};
use crate::error::{Error, Result};

/// A graph in canonical labelling: `d=<int>;V=<n>;E=[(s,t),...];W=[...]`.
///
/// Edges are sorted; undirected edges are stored with `s <= t`. The weight
/// list is empty for unweighted graphs. The textual form is the cache key and
/// does not record directedness, which is fixed by the complex it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalGraph {
    d: i32,
    n: u8,
    directed: bool,
    edges: Vec<(u8, u8)>,
    weights: Vec<u32>,
}

impl CanonicalGraph {
    pub(crate) fn from_parts(d: i32, n: usize, directed: bool, edges: Vec<(u8, u8)>, weights: Vec<u32>) -> Self {
        Self {
            d,
            n: n as u8,
            directed,
            edges,
            weights,
        }
    }

    pub fn d(&self) -> i32 {
        self.d
    }

    pub fn parity(&self) -> Parity {
        Parity(self.d)
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        !self.weights.is_empty()
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(s, t)| (s as usize, t as usize)).collect()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn degree(&self) -> i64 {
        super::degree_of(self.vertex_count(), self.edge_count(), self.parity())
    }

    /// `#E - #V + 1`; meaningful for connected graphs.
    pub fn loop_order(&self) -> i64 {
        self.edges.len() as i64 - self.n as i64 + 1
    }

    /// The canonical representative as a labelled graph whose list order is
    /// the reference orientation.
    pub fn to_multigraph(&self) -> Multigraph {
        Multigraph::from_parts_unchecked(self.vertex_count(), self.edge_list(), self.directed)
    }

    /// `(in, out)` degrees of the canonical representative.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); self.vertex_count()];
        for &(s, t) in &self.edges {
            deg[s as usize].1 += 1;
            deg[t as usize].0 += 1;
        }
        deg
    }

    /// Same graph with the weights forgotten.
    pub fn unweighted(&self) -> Self {
        Self {
            weights: Vec::new(),
            ..self.clone()
        }
    }

    /// Parse the textual form. Directedness is supplied by the caller.
    pub fn parse(text: &str, directed: bool) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in `{text}`"));
        let mut parts = text.trim().split(';');
        let d: i32 = parts
            .next()
            .and_then(|p| p.strip_prefix("d="))
            .ok_or_else(|| bad("missing d="))?
            .parse()
            .map_err(|_| bad("bad d"))?;
        let n: usize = parts
            .next()
            .and_then(|p| p.strip_prefix("V="))
            .ok_or_else(|| bad("missing V="))?
            .parse()
            .map_err(|_| bad("bad V"))?;
        if n > u8::MAX as usize {
            return Err(bad("too many vertices"));
        }
        let e = parts
            .next()
            .and_then(|p| p.strip_prefix("E=["))
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| bad("missing E=[...]"))?;
        let mut edges = Vec::new();
        if !e.is_empty() {
            for pair in e.split("),") {
                let pair = pair.trim_start_matches('(').trim_end_matches(')');
                let (s, t) = pair.split_once(',').ok_or_else(|| bad("bad edge"))?;
                let s: usize = s.parse().map_err(|_| bad("bad edge source"))?;
                let t: usize = t.parse().map_err(|_| bad("bad edge target"))?;
                if s >= n || t >= n {
                    return Err(Error::EdgeOutOfRange {
                        source_vertex: s,
                        target_vertex: t,
                        vertex_count: n,
                    });
                }
                edges.push((s as u8, t as u8));
            }
        }
        let w = parts
            .next()
            .and_then(|p| p.strip_prefix("W=["))
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| bad("missing W=[...]"))?;
        let weights: Vec<u32> = if w.is_empty() {
            Vec::new()
        } else {
            w.split(',')
                .map(|x| x.parse().map_err(|_| bad("bad weight")))
                .collect::<Result<_>>()?
        };
        if !weights.is_empty() && weights.len() != n {
            return Err(Error::WeightLength {
                expected: n,
                got: weights.len(),
            });
        }
        if parts.next().is_some() {
            return Err(bad("trailing fields"));
        }
        Ok(Self {
            d,
            n: n as u8,
            directed,
            edges,
            weights,
        })
    }
}

impl fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={};V={};E=[", self.d, self.n)?;
        for (i, (s, t)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({s},{t})")?;
        }
        f.write_str("];W=[")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}
