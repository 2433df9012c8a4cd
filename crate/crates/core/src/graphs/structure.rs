//! Skeleton and string extraction for directed graphs.

use serde::{Deserialize, Serialize};

use super::{Multigraph, WeightedGraph};

/// Recursively delete univalent in-vertices (no incoming edge, exactly one
/// outgoing edge). Returns the remaining graph and, for each of its vertices,
/// the index it had in the input.
pub fn skeleton(graph: &Multigraph) -> (Multigraph, Vec<usize>) {
    let mut alive: Vec<bool> = vec![true; graph.vertex_count()];
    let mut edges: Vec<(usize, usize)> = graph.edges().to_vec();
    loop {
        let mut ind = vec![0usize; alive.len()];
        let mut outd = vec![0usize; alive.len()];
        for &(s, t) in &edges {
            outd[s] += 1;
            ind[t] += 1;
        }
        let doomed: Vec<usize> = (0..alive.len())
            .filter(|&v| alive[v] && ind[v] == 0 && outd[v] == 1)
            .collect();
        if doomed.is_empty() {
            break;
        }
        for &v in &doomed {
            alive[v] = false;
        }
        edges.retain(|&(s, t)| alive[s] && alive[t]);
    }
    let kept: Vec<usize> = (0..alive.len()).filter(|&v| alive[v]).collect();
    let mut relabel = vec![usize::MAX; alive.len()];
    for (new, &old) in kept.iter().enumerate() {
        relabel[old] = new;
    }
    let edges = edges.iter().map(|&(s, t)| (relabel[s], relabel[t])).collect();
    (
        Multigraph::from_parts_unchecked(kept.len(), edges, graph.is_directed()),
        kept,
    )
}

/// Directed edge of the reduced graph. `weight` counts the passing vertices
/// the edge replaces; 0 is an ordinary edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub source: usize,
    pub target: usize,
    pub weight: usize,
}

/// A maximal path of stringy vertices, listed along the edge direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringPath {
    pub vertices: Vec<usize>,
    pub weights: Vec<u32>,
    /// Core vertices the path is attached to (0, 1 or 2 of them).
    pub attached_to: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringDecomposition {
    pub core: Vec<usize>,
    pub strings: Vec<StringPath>,
    /// Edges between core vertices; chains of passing vertices collapse to one
    /// edge each.
    pub reduced_edges: Vec<WeightedEdge>,
    /// Strings hanging off a single core vertex.
    pub hairs: Vec<StringPath>,
}

/// Split the vertices into stringy ones (passing vertices without loops and
/// univalent vertices) and core ones, and collapse passing chains.
pub fn string_decomposition(graph: &WeightedGraph) -> StringDecomposition {
    let g = graph.graph();
    let n = g.vertex_count();
    let deg = g.degrees();
    let passing = |v: usize| deg[v] == (1, 1) && g.loops_at(v) == 0;
    let stringy: Vec<bool> = (0..n).map(|v| passing(v) || deg[v].0 + deg[v].1 == 1).collect();
    let core: Vec<usize> = (0..n).filter(|&v| !stringy[v]).collect();

    let mut seen = vec![false; n];
    let mut strings = Vec::new();
    let mut hairs = Vec::new();
    let mut reduced_edges = Vec::new();

    let succ = |v: usize| g.edges().iter().find(|e| e.0 == v).map(|e| e.1);
    let pred = |v: usize| g.edges().iter().find(|e| e.1 == v).map(|e| e.0);

    for start in 0..n {
        if !stringy[start] || seen[start] {
            continue;
        }
        // walk backwards to the first stringy vertex of the path
        let mut first = start;
        while let Some(p) = pred(first) {
            if !stringy[p] || p == start {
                break;
            }
            first = p;
        }
        let mut path = vec![first];
        seen[first] = true;
        let mut cur = first;
        while let Some(s) = succ(cur) {
            if !stringy[s] || seen[s] {
                break;
            }
            path.push(s);
            seen[s] = true;
            cur = s;
        }
        let head = pred(path[0]).filter(|&p| !stringy[p]);
        let tail = succ(*path.last().unwrap()).filter(|&s| !stringy[s]);
        let attached_to: Vec<usize> = head.into_iter().chain(tail).collect();
        let weights = path.iter().map(|&v| graph.weights()[v]).collect();
        let sp = StringPath {
            vertices: path.clone(),
            weights,
            attached_to,
        };
        match (head, tail) {
            (Some(h), Some(t)) if path.iter().all(|&v| passing(v)) => reduced_edges.push(WeightedEdge {
                source: h,
                target: t,
                weight: path.len(),
            }),
            (Some(_), None) | (None, Some(_)) => hairs.push(sp.clone()),
            _ => {}
        }
        strings.push(sp);
    }
    for &(s, t) in g.edges() {
        if !stringy[s] && !stringy[t] {
            reduced_edges.push(WeightedEdge {
                source: s,
                target: t,
                weight: 0,
            });
        }
    }
    reduced_edges.sort_by_key(|e| (e.source, e.target, e.weight));
    StringDecomposition {
        core,
        strings,
        reduced_edges,
        hairs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_collapses_to_target() {
        let g = Multigraph::directed(2, vec![(0, 1)]).unwrap();
        let (s, kept) = skeleton(&g);
        assert_eq!(s.vertex_count(), 1);
        assert_eq!(s.edge_count(), 0);
        assert_eq!(kept, vec![1]);
    }

    #[test]
    fn two_cycle_with_pendant() {
        let g = Multigraph::directed(3, vec![(0, 1), (1, 0), (2, 0)]).unwrap();
        let (s, kept) = skeleton(&g);
        assert_eq!(kept, vec![0, 1]);
        assert_eq!(s.edges(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn recursive_deletion() {
        // 3 -> 2 -> 0 <-> 1: deleting 3 makes 2 a univalent in-vertex
        let g = Multigraph::directed(4, vec![(0, 1), (1, 0), (2, 0), (3, 2)]).unwrap();
        let (s, kept) = skeleton(&g);
        assert_eq!(kept, vec![0, 1]);
        assert_eq!(skeleton(&s).0, s);
    }

    #[test]
    fn chain_becomes_weighted_edge() {
        // two trivalent vertices 0, 1 joined by a double edge and a chain 0 -> 2 -> 3 -> 1
        let g = Multigraph::directed(4, vec![(0, 1), (1, 0), (0, 2), (2, 3), (3, 1)]).unwrap();
        let w = WeightedGraph::with_canonical_weights(g);
        let sd = string_decomposition(&w);
        assert_eq!(sd.core, vec![0, 1]);
        assert!(sd.reduced_edges.contains(&WeightedEdge {
            source: 0,
            target: 1,
            weight: 2
        }));
        assert_eq!(sd.reduced_edges.iter().filter(|e| e.weight == 0).count(), 2);
    }

    #[test]
    fn pure_string() {
        let g = Multigraph::directed(3, vec![(0, 1), (1, 2)]).unwrap();
        let w = WeightedGraph::new(g, vec![2, 1, 3]).unwrap();
        let sd = string_decomposition(&w);
        assert!(sd.core.is_empty());
        assert_eq!(sd.strings.len(), 1);
        assert_eq!(sd.strings[0].vertices, vec![0, 1, 2]);
        assert_eq!(sd.strings[0].weights, vec![2, 1, 3]);
    }
}
