//! Canonical labelling by colour refinement and exhaustive individualization.
//!
//! Every leaf of the search tree is a relabelling `lambda: old -> new`. All
//! leaves are explored; the ones producing the lexicographically smallest
//! encoding differ from each other by automorphisms, so comparing the
//! orientation signs they induce detects odd automorphisms. When only the
//! encoding is needed, siblings related by discovered automorphisms are
//! skipped instead.

use super::{CanonicalGraph, Multigraph, OrientedClass, Parity};
use crate::error::{Error, Result};

/// Result of canonicalizing a labelled graph.
#[derive(Clone, Debug)]
pub(crate) struct Canon {
    pub graph: CanonicalGraph,
    /// `input = sign * canonical`; 0 when the class vanishes.
    pub sign: i64,
}

impl Canon {
    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

struct Search<'a> {
    n: usize,
    directed: bool,
    edges: &'a [(usize, usize)],
    adj: Vec<u8>,
    best: Option<(Vec<(u8, u8)>, Vec<Vec<usize>>)>,
    /// Prune siblings related by known automorphisms; only the encoding of
    /// `best` is then meaningful.
    prune: bool,
    first: Option<(Vec<(u8, u8)>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let n = self.n;
        let mut classes = count_distinct(&colors);
        loop {
            let mut sigs: Vec<(u32, Vec<(u32, u8, u8)>, usize)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(u32, u8, u8)> = (0..n)
                        .filter_map(|u| {
                            let a = self.adj[v * n + u];
                            let b = self.adj[u * n + v];
                            (a != 0 || b != 0).then(|| (colors[u], a, b))
                        })
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut next = vec![0u32; n];
            let mut rank = 0u32;
            for i in 0..n {
                if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                    rank += 1;
                }
                next[sigs[i].2] = rank;
            }
            colors = next;
            let now = rank as usize + 1;
            if now == classes || now == n {
                return colors;
            }
            classes = now;
        }
    }

    /// Orbit representatives under the known automorphisms fixing `path`.
    fn orbit_roots(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for g in &self.autos {
            if path.iter().any(|&v| g[v] != v) {
                continue;
            }
            for u in 0..self.n {
                let (a, b) = (find(&mut parent, u), find(&mut parent, g[u]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|u| find(&mut parent, u)).collect()
    }

    fn run(&mut self, colors: Vec<u32>, path: &mut Vec<usize>) {
        let colors = self.refine(colors);
        let n = self.n;
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        match (0..n).find(|&c| sizes[c] > 1) {
            None => self.leaf(colors.iter().map(|&c| c as usize).collect()),
            Some(cell) => {
                let mut explored: Vec<usize> = Vec::new();
                for v in 0..n {
                    if colors[v] as usize != cell {
                        continue;
                    }
                    if self.prune && !explored.is_empty() {
                        let roots = self.orbit_roots(path);
                        if explored.iter().any(|&x| roots[x] == roots[v]) {
                            continue;
                        }
                    }
                    explored.push(v);
                    let next = colors
                        .iter()
                        .enumerate()
                        .map(|(u, &c)| 2 * c + u32::from(u != v))
                        .collect();
                    path.push(v);
                    self.run(next, path);
                    path.pop();
                }
            }
        }
    }

    fn leaf(&mut self, lambda: Vec<usize>) {
        let mut enc: Vec<(u8, u8)> = self
            .edges
            .iter()
            .map(|&(s, t)| {
                let (a, b) = (lambda[s] as u8, lambda[t] as u8);
                if !self.directed && a > b {
                    (b, a)
                } else {
                    (a, b)
                }
            })
            .collect();
        enc.sort_unstable();
        if self.prune {
            match &self.first {
                None => self.first = Some((enc.clone(), lambda.clone())),
                Some((f, fl)) if *f == enc => {
                    let g = relating_automorphism(fl, &lambda);
                    self.autos.push(g);
                }
                _ => {}
            }
            if let Some((b, leaves)) = &self.best {
                if *b == enc {
                    let g = relating_automorphism(&leaves[0], &lambda);
                    self.autos.push(g);
                    return;
                }
            }
        }
        match &mut self.best {
            None => self.best = Some((enc, vec![lambda])),
            Some((b, leaves)) => match enc.cmp(b) {
                std::cmp::Ordering::Less => self.best = Some((enc, vec![lambda])),
                std::cmp::Ordering::Equal => leaves.push(lambda),
                std::cmp::Ordering::Greater => {}
            },
        }
    }
}

/// The automorphism `u -> a^-1(b(u))` relating two leaves with equal
/// encodings.
fn relating_automorphism(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (u, &l) in a.iter().enumerate() {
        inv[l] = u;
    }
    b.iter().map(|&l| inv[l]).collect()
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Parity of the number of inversions, as `+1` / `-1`.
fn inversion_sign<T: Ord>(seq: &[T]) -> i64 {
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                odd = !odd;
            }
        }
    }
    if odd {
        -1
    } else {
        1
    }
}

/// Canonical form of an unoriented labelled graph with an optional vertex
/// colouring. Returns the sorted relabelled edge list and every relabelling
/// that realizes it.
pub(crate) fn canonical_leaves(
    n: usize,
    edges: &[(usize, usize)],
    directed: bool,
    colors: Option<&[u32]>,
) -> (Vec<(u8, u8)>, Vec<Vec<usize>>) {
    search(n, edges, directed, colors, false)
}

/// Canonical encoding only, with automorphism pruning. Fast on graphs with
/// large symmetry groups such as those with many isolated vertices.
pub(crate) fn canonical_encoding(n: usize, edges: &[(usize, usize)], directed: bool, colors: Option<&[u32]>) -> Vec<(u8, u8)> {
    search(n, edges, directed, colors, true).0
}

fn search(
    n: usize,
    edges: &[(usize, usize)],
    directed: bool,
    colors: Option<&[u32]>,
    prune: bool,
) -> (Vec<(u8, u8)>, Vec<Vec<usize>>) {
    let mut adj = vec![0u8; n * n];
    let mut loops = vec![0u32; n];
    let mut outd = vec![0u32; n];
    let mut ind = vec![0u32; n];
    for &(s, t) in edges {
        adj[s * n + t] += 1;
        if !directed && s != t {
            adj[t * n + s] += 1;
        }
        outd[s] += 1;
        ind[t] += 1;
        if s == t {
            loops[s] += 1;
        }
    }
    let mut keys: Vec<(u32, u32, u32, u32)> = (0..n)
        .map(|v| {
            let w = colors.map_or(0, |c| c[v]);
            if directed {
                (w, outd[v], ind[v], loops[v])
            } else {
                (w, outd[v] + ind[v], 0, loops[v])
            }
        })
        .collect();
    let initial: Vec<u32> = {
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        keys.iter_mut()
            .map(|k| sorted.binary_search(k).unwrap() as u32)
            .collect()
    };
    let mut search = Search {
        n,
        directed,
        edges,
        adj,
        best: None,
        prune,
        first: None,
        autos: Vec::new(),
    };
    if n == 0 {
        return (Vec::new(), vec![Vec::new()]);
    }
    search.run(initial, &mut Vec::new());
    search.best.expect("search visits at least one leaf")
}

/// Canonical oriented class of a labelled graph; `weights` act as colours.
pub(crate) fn canonize(
    n: usize,
    edges: &[(usize, usize)],
    directed: bool,
    weights: Option<&[u32]>,
    parity: Parity,
) -> Canon {
    let (enc, leaves) = canonical_leaves(n, edges, directed, weights);
    let lambda0 = &leaves[0];
    let canon_weights = match weights {
        Some(w) => {
            let mut cw = vec![0u32; n];
            for (u, &l) in lambda0.iter().enumerate() {
                cw[l] = w[u];
            }
            cw
        }
        None => Vec::new(),
    };
    let graph = CanonicalGraph::from_parts(parity.d(), n, directed, enc.clone(), canon_weights);

    let vanishes_structurally = if parity.is_even() {
        enc.windows(2).any(|w| w[0] == w[1])
    } else {
        !directed && enc.iter().any(|&(s, t)| s == t)
    };
    if vanishes_structurally {
        return Canon { graph, sign: 0 };
    }

    let leaf_sign = |lambda: &Vec<usize>| -> i64 {
        if parity.is_even() {
            let mapped: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(s, t)| {
                    let (a, b) = (lambda[s], lambda[t]);
                    if !directed && a > b {
                        (b, a)
                    } else {
                        (a, b)
                    }
                })
                .collect();
            inversion_sign(&mapped)
        } else {
            let mut sign = inversion_sign(lambda);
            if !directed {
                for &(s, t) in edges {
                    if lambda[s] > lambda[t] {
                        sign = -sign;
                    }
                }
            }
            sign
        }
    };
    let sign = leaf_sign(lambda0);
    let consistent = leaves[1..].iter().all(|l| leaf_sign(l) == sign);
    Canon {
        graph,
        sign: if consistent { sign } else { 0 },
    }
}

/// Canonical class of `graph` under `parity`, plus the sign with
/// `graph = sign * canonical`. Zero classes report sign `+1`.
pub fn canonicalize(
    graph: &Multigraph,
    parity: Parity,
    weights: Option<&[u32]>,
) -> Result<(OrientedClass, i8)> {
    if let Some(w) = weights {
        if w.len() != graph.vertex_count() {
            return Err(Error::WeightLength {
                expected: graph.vertex_count(),
                got: w.len(),
            });
        }
        for (v, (&wv, &(i, o))) in w.iter().zip(graph.degrees().iter()).enumerate() {
            let minimum = super::minimal_weight(i, o);
            if wv < minimum {
                return Err(Error::WeightCondition {
                    vertex: v,
                    weight: wv,
                    minimum,
                });
            }
        }
    }
    let c = canonize(
        graph.vertex_count(),
        graph.edges(),
        graph.is_directed(),
        weights,
        parity,
    );
    let is_zero = c.is_zero();
    Ok((
        OrientedClass {
            graph: c.graph,
            is_zero,
        },
        if is_zero { 1 } else { c.sign as i8 },
    ))
}

/// Order of the group of vertex relabellings preserving the (coloured) graph.
/// Permutations of parallel edges are not counted.
pub fn automorphism_group_order(graph: &Multigraph, weights: Option<&[u32]>) -> usize {
    canonical_leaves(graph.vertex_count(), graph.edges(), graph.is_directed(), weights)
        .1
        .len()
}
