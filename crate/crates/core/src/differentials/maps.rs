use super::{sign_pow, Accumulator, ChainVector};
use crate::complexes::{is_equal_weighted, ComplexId};
use crate::error::{Error, Result};
use crate::graphs::{minimal_weight, CanonicalGraph};

/// Sum of the weighted versions of `g` over all admissible weight functions of
/// total weight at most `cap`. Lands in the full weighted complex.
pub fn map_f_wheeled(g: &CanonicalGraph, cap: u32) -> Result<ChainVector<CanonicalGraph>> {
    if !g.is_directed() {
        return Err(Error::Dimension("expected a directed graph".into()));
    }
    let n = g.vertex_count();
    let edges = g.edge_list();
    let mins: Vec<u32> = g.degrees().iter().map(|&(i, o)| minimal_weight(i, o)).collect();
    let mut acc = Accumulator::new(g.parity(), true);
    let base: u32 = mins.iter().sum();
    if base > cap {
        return Ok(acc.out);
    }
    let mut w = mins.clone();
    fn rec(
        v: usize,
        slack: u32,
        mins: &[u32],
        w: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if v == mins.len() {
            visit(w);
            return;
        }
        for extra in 0..=slack {
            w[v] = mins[v] + extra;
            rec(v + 1, slack - extra, mins, w, visit);
        }
        w[v] = mins[v];
    }
    rec(0, cap - base, &mins, &mut w, &mut |w| acc.push(n, &edges, Some(w), 1));
    Ok(acc.out)
}

/// [`map_f_wheeled`] followed by projection onto the summand without the
/// balanced canonically weighted graphs.
pub fn map_f_wheeled_projected(g: &CanonicalGraph, cap: u32) -> Result<ChainVector<CanonicalGraph>> {
    Ok(project_summand(&map_f_wheeled(g, cap)?, ComplexId::dwGC))
}

/// Keep the terms of a weighted chain lying in the given summand.
pub fn project_summand(v: &ChainVector<CanonicalGraph>, summand: ComplexId) -> ChainVector<CanonicalGraph> {
    let mut out = v.clone();
    out.retain(|g| match summand {
        ComplexId::dwGC_eq => is_equal_weighted(g),
        ComplexId::dwGC => !is_equal_weighted(g),
        _ => true,
    });
    out
}

/// Sum over all ways to direct the edges of an undirected graph. For odd `d`
/// each reversal of the stored direction contributes a sign.
pub fn map_i_directed(g: &CanonicalGraph) -> Result<ChainVector<CanonicalGraph>> {
    if g.is_directed() {
        return Err(Error::Dimension("expected an undirected graph".into()));
    }
    let n = g.vertex_count();
    let edges = g.edge_list();
    let even = g.parity().is_even();
    let mut acc = Accumulator::new(g.parity(), true);
    for mask in 0..(1u64 << edges.len()) {
        let e: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| if mask >> i & 1 == 1 { (t, s) } else { (s, t) })
            .collect();
        let coeff = if even { 1 } else { sign_pow(mask.count_ones() as i64) };
        acc.push(n, &e, None, coeff);
    }
    Ok(acc.out)
}

/// Quotient map onto balanced graphs: identity on them, zero otherwise.
pub fn project_equal(g: &CanonicalGraph) -> ChainVector<CanonicalGraph> {
    if g.degrees().iter().all(|&(i, o)| i == o) {
        ChainVector::basis_vector(g.clone())
    } else {
        ChainVector::new()
    }
}

/// Action of the extra degree-0 generator: multiplication by twice the loop
/// order.
pub fn loop_action(g: &CanonicalGraph) -> ChainVector<CanonicalGraph> {
    let mut v = ChainVector::new();
    v.add(g.clone(), 2 * g.loop_order());
    v
}

fn single_vertex(d: i32, a: u32) -> CanonicalGraph {
    CanonicalGraph::parse(&format!("d={d};V=1;E=[];W=[{a}]"), true).expect("valid key")
}

/// The rescaling cocycle `sum_a a * (single vertex of weight a)`, truncated at
/// `a <= cap`.
pub fn rescaling_class(d: i32, cap: u32) -> ChainVector<CanonicalGraph> {
    (1..=cap).map(|a| (single_vertex(d, a), a as i64)).collect()
}

/// The chain `sum_a (a - 1) * (single vertex of weight a)`. It is not closed.
pub fn rescaling_chain_literal(d: i32, cap: u32) -> ChainVector<CanonicalGraph> {
    (1..=cap).map(|a| (single_vertex(d, a), a as i64 - 1)).collect()
}
