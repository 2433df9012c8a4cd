//! Isomorph-free enumeration of graded slices.
//!
//! Undirected skeletons are grown one edge at a time and deduplicated by
//! canonical form after each step, with degree and connectivity pruning.
//! Skeletons are then oriented, filtered, canonicalized with orientation
//! signs and, for weighted slices, decorated with every admissible weight
//! function.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canon::{canonical_encoding, canonize};
use super::{minimal_weight, CanonicalGraph, OrientedClass, Parity};
use crate::error::{Error, Result};

/// Which part of a weighted complex to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Summand {
    All,
    /// Every vertex has `w_v = in - 1 = out - 1`.
    Equal,
    /// Some vertex violates the equality above.
    NonEqual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightConstraint {
    /// Upper bound on the total weight.
    pub cap: u32,
    pub summand: Summand,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraints {
    pub directed: bool,
    pub connected: bool,
    pub min_valency: usize,
    pub no_tadpoles: bool,
    pub no_passing: bool,
    pub balanced: bool,
    pub unbalanced: bool,
    pub acyclic: bool,
    /// At least one vertex of valency exactly two.
    pub has_bivalent: bool,
    pub weights: Option<WeightConstraint>,
}

impl Constraints {
    fn loops_allowed(&self) -> bool {
        !(self.no_tadpoles || self.acyclic)
    }

    /// Whether a labelled graph satisfies every unweighted constraint.
    pub fn admits(&self, n: usize, edges: &[(usize, usize)]) -> bool {
        let mut ind = vec![0usize; n];
        let mut outd = vec![0usize; n];
        for &(s, t) in edges {
            if s == t && !self.loops_allowed() {
                return false;
            }
            outd[s] += 1;
            ind[t] += 1;
        }
        let val = |v: usize| ind[v] + outd[v];
        if (0..n).any(|v| val(v) < self.min_valency) {
            return false;
        }
        if self.has_bivalent && !(0..n).any(|v| val(v) == 2) {
            return false;
        }
        if self.directed {
            if self.no_passing && (0..n).any(|v| ind[v] == 1 && outd[v] == 1) {
                return false;
            }
            let balanced = (0..n).all(|v| ind[v] == outd[v]);
            if self.balanced && !balanced {
                return false;
            }
            if self.unbalanced && balanced {
                return false;
            }
            if self.acyclic
                && !super::Multigraph::from_parts_unchecked(n, edges.to_vec(), true).is_acyclic()
            {
                return false;
            }
        }
        if self.connected
            && !super::Multigraph::from_parts_unchecked(n, edges.to_vec(), self.directed).is_connected()
        {
            return false;
        }
        true
    }

    /// Whether a weight vector fits the weight constraint (cap and summand).
    pub fn admits_weights(&self, n: usize, edges: &[(usize, usize)], weights: &[u32]) -> bool {
        let Some(wc) = self.weights else {
            return true;
        };
        let mut ind = vec![0usize; n];
        let mut outd = vec![0usize; n];
        for &(s, t) in edges {
            outd[s] += 1;
            ind[t] += 1;
        }
        if weights.iter().sum::<u32>() > wc.cap {
            return false;
        }
        if (0..n).any(|v| weights[v] < minimal_weight(ind[v], outd[v])) {
            return false;
        }
        let equal = (0..n).all(|v| weights[v] as i64 == ind[v] as i64 - 1 && ind[v] == outd[v]);
        match wc.summand {
            Summand::All => true,
            Summand::Equal => equal,
            Summand::NonEqual => !equal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SliceSpec {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub parity: Parity,
    pub constraints: Constraints,
    /// Abort with [`Error::SliceTooLarge`] beyond this many classes.
    pub limit: Option<usize>,
}

struct Pruner {
    min_valency: usize,
    connected: bool,
    even_degrees: bool,
}

impl Pruner {
    fn viable(&self, n: usize, edges: &[(usize, usize)], remaining: usize) -> bool {
        let mut deg = vec![0usize; n];
        for &(s, t) in edges {
            deg[s] += 1;
            deg[t] += 1;
        }
        let deficiency: usize = deg.iter().map(|&x| self.min_valency.saturating_sub(x)).sum();
        if deficiency > 2 * remaining {
            return false;
        }
        if self.even_degrees && deg.iter().filter(|&&x| x % 2 == 1).count() > 2 * remaining {
            return false;
        }
        if self.connected {
            let comps = super::Multigraph::from_parts_unchecked(n, edges.to_vec(), false).component_count();
            if comps > remaining + 1 {
                return false;
            }
        }
        true
    }
}

/// Undirected multigraphs with `n` vertices and `e` edges up to isomorphism,
/// as canonical sorted edge lists.
fn skeletons(n: usize, e: usize, loops: bool, pruner: &Pruner) -> Vec<Vec<(usize, usize)>> {
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    if !pruner.viable(n, &[], e) {
        return Vec::new();
    }
    for k in 0..e {
        let remaining = e - k - 1;
        let next: HashSet<Vec<(u8, u8)>> = level
            .par_iter()
            .flat_map_iter(|g| {
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i..n {
                        if i == j && !loops {
                            continue;
                        }
                        let mut h = g.clone();
                        h.push((i, j));
                        if pruner.viable(n, &h, remaining) {
                            out.push(canonical_encoding(n, &h, false, None));
                        }
                    }
                }
                out
            })
            .collect();
        let mut sorted: Vec<_> = next.into_iter().collect();
        sorted.sort_unstable();
        level = sorted
            .into_iter()
            .map(|g| g.into_iter().map(|(s, t)| (s as usize, t as usize)).collect())
            .collect();
    }
    level
}

/// All ways of directing the edges of an undirected skeleton, up to
/// permutations within parallel bundles.
fn orientations(edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut bundles: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(s, t) in edges {
        *bundles.entry((s.min(t), s.max(t))).or_default() += 1;
    }
    let mut out = vec![Vec::new()];
    for (&(s, t), &m) in &bundles {
        if s == t {
            for g in &mut out {
                g.extend(std::iter::repeat((s, t)).take(m));
            }
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (m + 1));
        for g in &out {
            for forward in 0..=m {
                let mut h = g.clone();
                h.extend(std::iter::repeat((s, t)).take(forward));
                h.extend(std::iter::repeat((t, s)).take(m - forward));
                next.push(h);
            }
        }
        out = next;
    }
    out
}

fn weightings(n: usize, edges: &[(usize, usize)], cap: u32) -> Vec<Vec<u32>> {
    let mut ind = vec![0usize; n];
    let mut outd = vec![0usize; n];
    for &(s, t) in edges {
        outd[s] += 1;
        ind[t] += 1;
    }
    let mins: Vec<u32> = (0..n).map(|v| minimal_weight(ind[v], outd[v])).collect();
    let base: u32 = mins.iter().sum();
    let mut out = Vec::new();
    if base > cap {
        return out;
    }
    let mut cur = mins.clone();
    fn rec(v: usize, slack: u32, mins: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if v == mins.len() {
            out.push(cur.clone());
            return;
        }
        for extra in 0..=slack {
            cur[v] = mins[v] + extra;
            rec(v + 1, slack - extra, mins, cur, out);
        }
        cur[v] = mins[v];
    }
    rec(0, cap - base, &mins, &mut cur, &mut out);
    out
}

/// Every isomorphism class of the slice, zero classes included, sorted by
/// canonical key. Weighted slices list weighted classes.
pub fn enumerate_all(spec: &SliceSpec) -> Result<Vec<OrientedClass>> {
    let c = &spec.constraints;
    let (n, e) = (spec.vertex_count, spec.edge_count);
    let pruner = Pruner {
        min_valency: c.min_valency,
        connected: c.connected,
        even_degrees: c.directed && c.balanced,
    };
    let skel = skeletons(n, e, c.loops_allowed(), &pruner);
    let parity = spec.parity;

    let per_skeleton: Vec<Vec<OrientedClass>> = skel
        .par_iter()
        .map(|s| {
            let mut found: BTreeMap<CanonicalGraph, bool> = BTreeMap::new();
            let candidates = if c.directed {
                orientations(s)
            } else {
                vec![s.clone()]
            };
            let mut shapes: HashSet<Vec<(u8, u8)>> = HashSet::new();
            for g in candidates {
                if !c.admits(n, &g) {
                    continue;
                }
                if c.weights.is_none() {
                    let k = canonize(n, &g, c.directed, None, parity);
                    found.insert(k.graph.clone(), k.is_zero());
                } else {
                    shapes.insert(canonical_encoding(n, &g, c.directed, None));
                }
            }
            if let Some(wc) = c.weights {
                for shape in shapes {
                    let g: Vec<(usize, usize)> = shape.iter().map(|&(a, b)| (a as usize, b as usize)).collect();
                    for w in weightings(n, &g, wc.cap) {
                        if !c.admits_weights(n, &g, &w) {
                            continue;
                        }
                        let k = canonize(n, &g, c.directed, Some(&w), parity);
                        found.insert(k.graph.clone(), k.is_zero());
                    }
                }
            }
            found
                .into_iter()
                .map(|(graph, is_zero)| OrientedClass { graph, is_zero })
                .collect()
        })
        .collect();

    let mut all: Vec<OrientedClass> = per_skeleton.into_iter().flatten().collect();
    if let Some(limit) = spec.limit {
        let nonzero = all.iter().filter(|c| !c.is_zero).count();
        if nonzero > limit {
            return Err(Error::SliceTooLarge { partial: nonzero });
        }
    }
    all.sort_by_cached_key(|c| c.graph.to_string());
    Ok(all)
}

/// Nonzero classes of the slice, sorted by canonical key.
pub fn enumerate(spec: &SliceSpec) -> Result<Vec<CanonicalGraph>> {
    Ok(enumerate_all(spec)?
        .into_iter()
        .filter(|c| !c.is_zero)
        .map(|c| c.graph)
        .collect())
}
