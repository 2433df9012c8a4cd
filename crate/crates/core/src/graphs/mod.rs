//! Directed and undirected multigraphs, orientation data, canonical forms with
//! signs, enumeration of graded slices, and the skeleton/string extractors.
//!
//! A labelled [`Multigraph`] carries its orientation implicitly: the order of
//! the edge list when `d` is even, the order of the vertices (and, for
//! undirected graphs, the stored direction of every edge) when `d` is odd.
//! Every operation that moves edges or vertices around therefore produces a
//! labelled graph whose list order *is* the induced orientation, and
//! [`canonicalize`] turns that into a sign relative to the canonical
//! representative.

mod canon;
mod enumerate;
mod key;
mod structure;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{automorphism_group_order, canonicalize};
pub(crate) use canon::canonize;
pub use enumerate::{enumerate, enumerate_all, Constraints, SliceSpec, Summand, WeightConstraint};
pub use key::CanonicalGraph;
pub use structure::{skeleton, string_decomposition, StringDecomposition, StringPath, WeightedEdge};

/// The integer `d` indexing a family of complexes.
///
/// Only its parity decides the orientation carrier; the value itself enters the
/// degree formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Parity(pub i32);

/// What the orientation line of a graph is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carrier {
    Edges,
    Vertices,
}

impl Parity {
    pub fn d(self) -> i32 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0.rem_euclid(2) == 0
    }

    pub fn carrier(self) -> Carrier {
        if self.is_even() {
            Carrier::Edges
        } else {
            Carrier::Vertices
        }
    }

    /// `(-1)^d`
    pub fn sign(self) -> i64 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }
}

/// Cohomological degree `d(#V - 1) - (d - 1)#E`.
pub fn degree_of(vertex_count: usize, edge_count: usize, parity: Parity) -> i64 {
    let d = parity.d() as i64;
    d * (vertex_count as i64 - 1) - (d - 1) * edge_count as i64
}

/// A finite multigraph with an ordered edge list. Parallel edges and loops
/// are allowed; each list entry is one orientation slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    directed: bool,
}

/// Directed multigraphs are the default object; undirected ones share the type.
pub type DirectedMultigraph = Multigraph;

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, directed: bool) -> Result<Self> {
        for &(s, t) in &edges {
            if s >= vertex_count || t >= vertex_count {
                return Err(Error::EdgeOutOfRange {
                    source_vertex: s,
                    target_vertex: t,
                    vertex_count,
                });
            }
        }
        Ok(Self {
            vertex_count,
            edges,
            directed,
        })
    }

    pub fn directed(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(vertex_count, edges, true)
    }

    pub fn undirected(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(vertex_count, edges, false)
    }

    /// Constructor that additionally asserts connectedness.
    pub fn connected(vertex_count: usize, edges: Vec<(usize, usize)>, directed: bool) -> Result<Self> {
        let g = Self::new(vertex_count, edges, directed)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub(crate) fn from_parts_unchecked(vertex_count: usize, edges: Vec<(usize, usize)>, directed: bool) -> Self {
        debug_assert!(edges.iter().all(|&(s, t)| s < vertex_count && t < vertex_count));
        Self {
            vertex_count,
            edges,
            directed,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == v).count()
    }

    /// Number of half-edges at `v`; a loop counts twice.
    pub fn valency(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v && e.1 == v).count()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.0 == e.1)
    }

    /// `(in, out)` for every vertex.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); self.vertex_count];
        for &(s, t) in &self.edges {
            deg[s].1 += 1;
            deg[t].0 += 1;
        }
        deg
    }

    /// A `(1,1)`-vertex. For undirected graphs this reads as "bivalent".
    pub fn is_passing(&self, v: usize) -> bool {
        self.in_degree(v) == 1 && self.out_degree(v) == 1
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.vertex_count;
        for &(s, t) in &self.edges {
            let (a, b) = (find(&mut parent, s), find(&mut parent, t));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    /// Connectedness of the underlying undirected graph. The empty graph counts
    /// as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `#E - #V + 1` for connected graphs.
    pub fn loop_order(&self) -> Result<usize> {
        if !self.is_connected() || self.vertex_count == 0 {
            return Err(Error::Disconnected);
        }
        Ok(self.edges.len() + 1 - self.vertex_count)
    }

    pub fn degree(&self, parity: Parity) -> i64 {
        degree_of(self.vertex_count, self.edges.len(), parity)
    }

    /// No closed directed path (loops included).
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count;
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.edges {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.edges {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == n
    }

    /// `|v|_in = |v|_out` everywhere.
    pub fn is_balanced(&self) -> bool {
        self.degrees().iter().all(|&(i, o)| i == o)
    }
}

/// Minimal admissible weight `max{1, |v|_in - 1, |v|_out - 1}`.
pub fn minimal_weight(in_degree: usize, out_degree: usize) -> u32 {
    1.max(in_degree.saturating_sub(1)).max(out_degree.saturating_sub(1)) as u32
}

/// A directed graph together with an admissible vertex weight function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedGraph {
    graph: Multigraph,
    weights: Vec<u32>,
}

impl WeightedGraph {
    pub fn new(graph: Multigraph, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != graph.vertex_count() {
            return Err(Error::WeightLength {
                expected: graph.vertex_count(),
                got: weights.len(),
            });
        }
        for (v, (&w, &(i, o))) in weights.iter().zip(graph.degrees().iter()).enumerate() {
            let minimum = minimal_weight(i, o);
            if w < minimum {
                return Err(Error::WeightCondition {
                    vertex: v,
                    weight: w,
                    minimum,
                });
            }
        }
        Ok(Self { graph, weights })
    }

    /// The graph with its canonical (minimal) weight function.
    pub fn with_canonical_weights(graph: Multigraph) -> Self {
        let weights = graph.degrees().iter().map(|&(i, o)| minimal_weight(i, o)).collect();
        Self { graph, weights }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }
}

/// A canonical representative plus its symmetry status.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedClass {
    pub graph: CanonicalGraph,
    /// Some automorphism reverses the orientation, so the class vanishes.
    pub is_zero: bool,
}

impl OrientedClass {
    pub fn key(&self) -> String {
        self.graph.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_formula_examples() {
        let d2 = Parity(2);
        assert_eq!(degree_of(4, 6, d2), 0);
        assert_eq!(degree_of(5, 5, d2), 3);
        assert_eq!(degree_of(1, 1, d2), -1);
        // both textbook forms agree
        for d in -3..6 {
            for v in 1..6usize {
                for e in 0..9usize {
                    let alt = d as i64 * v as i64 + (1 - d as i64) * e as i64 - d as i64;
                    assert_eq!(degree_of(v, e, Parity(d)), alt);
                }
            }
        }
    }

    #[test]
    fn loop_orders() {
        let k4 = Multigraph::undirected(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.loop_order().unwrap(), 3);
        let pent = Multigraph::undirected(5, (0..5).map(|i| (i, (i + 1) % 5)).collect()).unwrap();
        assert_eq!(pent.loop_order().unwrap(), 1);
        let tree = Multigraph::directed(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(tree.loop_order().unwrap(), 0);
        let split = Multigraph::directed(3, vec![(0, 1)]).unwrap();
        assert!(matches!(split.loop_order(), Err(Error::Disconnected)));
    }

    #[test]
    fn malformed_edges_rejected() {
        assert!(matches!(
            Multigraph::directed(2, vec![(0, 2)]),
            Err(Error::EdgeOutOfRange { .. })
        ));
        assert!(matches!(
            Multigraph::connected(3, vec![(0, 1)], true),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn weight_condition_enforced() {
        // vertex 0 has out-degree 3, needs weight >= 2
        let g = Multigraph::directed(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(matches!(
            WeightedGraph::new(g.clone(), vec![1, 1, 1, 1]),
            Err(Error::WeightCondition { vertex: 0, minimum: 2, .. })
        ));
        let w = WeightedGraph::new(g.clone(), vec![2, 1, 1, 1]).unwrap();
        assert_eq!(w.total_weight(), 5);
        assert_eq!(WeightedGraph::with_canonical_weights(g).weights(), &[2, 1, 1, 1]);
    }

    #[test]
    fn acyclic_and_balanced() {
        let two_cycle = Multigraph::directed(2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(!two_cycle.is_acyclic());
        assert!(two_cycle.is_balanced());
        let tadpole = Multigraph::directed(1, vec![(0, 0)]).unwrap();
        assert!(!tadpole.is_acyclic());
        let path = Multigraph::directed(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(path.is_acyclic());
        assert!(!path.is_balanced());
        assert!(path.is_passing(1));
    }
}
