use super::{sign_pow, Accumulator, ChainVector};
use crate::complexes::ComplexId;
use crate::error::{Error, Result};
use crate::graphs::{minimal_weight, CanonicalGraph};

/// Half-edges at `v` as `(edge index, is_target_end)`. A loop yields both.
fn half_edges(edges: &[(usize, usize)], v: usize) -> Vec<(usize, bool)> {
    let mut hs = Vec::new();
    for (i, &(s, t)) in edges.iter().enumerate() {
        if s == v {
            hs.push((i, false));
        }
        if t == v {
            hs.push((i, true));
        }
    }
    hs
}

/// Edges after moving the half-edges selected by `mask` from `v` to `new`.
fn reattach(edges: &[(usize, usize)], hs: &[(usize, bool)], mask: u64, new: usize) -> Vec<(usize, usize)> {
    let mut out = edges.to_vec();
    for (k, &(ei, at_target)) in hs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            if at_target {
                out[ei].1 = new;
            } else {
                out[ei].0 = new;
            }
        }
    }
    out
}

/// In/out degrees of the two halves of a split, the new edge included.
fn split_degrees(edges: &[(usize, usize)], v: usize, new: usize) -> ((usize, usize), (usize, usize)) {
    let (mut a, mut b) = ((0, 0), (0, 0));
    for &(s, t) in edges {
        if s == v {
            a.1 += 1;
        }
        if t == v {
            a.0 += 1;
        }
        if s == new {
            b.1 += 1;
        }
        if t == new {
            b.0 += 1;
        }
    }
    (a, b)
}

/// Labelled terms of the differential of an unweighted representative or, with
/// `weights`, of a weighted one whose new univalent vertices take weights
/// `1..=spare`.
fn expand(
    g: &CanonicalGraph,
    weights: Option<(&[u32], u32)>,
    acc: &mut Accumulator,
) {
    let n = g.vertex_count();
    let edges = g.edge_list();
    let parity = g.parity();
    let deg = g.degree();
    let split_coeff = if parity.is_even() { 1 } else { sign_pow(n as i64 - 1) };
    let out_coeff = -sign_pow(deg);
    let in_coeff = -sign_pow(deg + parity.d() as i64);
    let degrees = g.degrees();

    for v in 0..n {
        let hs = half_edges(&edges, v);
        for mask in 0..(1u64 << hs.len()) {
            let mut e = reattach(&edges, &hs, mask, n);
            e.push((v, n));
            match weights {
                None => acc.push(n + 1, &e, None, split_coeff),
                Some((w, _)) => {
                    let (a, b) = split_degrees(&e, v, n);
                    let (ma, mb) = (minimal_weight(a.0, a.1), minimal_weight(b.0, b.1));
                    for wa in ma..=w[v].saturating_sub(mb) {
                        let mut nw = w.to_vec();
                        nw[v] = wa;
                        nw.push(w[v] - wa);
                        acc.push(n + 1, &e, Some(&nw), split_coeff);
                    }
                }
            }
        }

        let attach = |new_edge: (usize, usize), coeff: i64, guard_ok: bool, acc: &mut Accumulator| {
            let e: Vec<(usize, usize)> = if parity.is_even() {
                std::iter::once(new_edge).chain(edges.iter().copied()).collect()
            } else {
                edges.iter().copied().chain(std::iter::once(new_edge)).collect()
            };
            match weights {
                None => acc.push(n + 1, &e, None, coeff),
                Some((w, spare)) => {
                    if !guard_ok {
                        return;
                    }
                    for c in 1..=spare {
                        let mut nw = w.to_vec();
                        nw.push(c);
                        acc.push(n + 1, &e, Some(&nw), coeff);
                    }
                }
            }
        };
        let (ind, outd) = degrees[v];
        let (out_ok, in_ok) = match weights {
            Some((w, _)) => (w[v] as usize >= outd, w[v] as usize >= ind),
            None => (true, true),
        };
        attach((v, n), out_coeff, out_ok, acc);
        attach((n, v), in_coeff, in_ok, acc);
    }
}

/// The differential `[., edge]` on an unweighted class, directed or not: vertex
/// splitting plus attachment of a new univalent vertex by an out- and by an
/// in-edge. Univalent split terms cancel the attachments in the result.
///
/// On undirected graphs every split arises from a half-edge subset and from
/// its complement, and both attachments coincide, so the raw sum is halved
/// to count each term once. This keeps `map_i_directed` a chain map.
pub fn delta(g: &CanonicalGraph) -> ChainVector<CanonicalGraph> {
    let mut acc = Accumulator::new(g.parity(), g.is_directed());
    expand(g, None, &mut acc);
    if g.is_directed() {
        return acc.out;
    }
    let mut out = ChainVector::new();
    for (k, c) in acc.out.iter() {
        debug_assert!(c % 2 == 0, "undirected terms come in pairs");
        out.add(k.clone(), c / 2);
    }
    out
}

/// [`delta`] restricted to directed input.
pub fn delta_directed(g: &CanonicalGraph) -> Result<ChainVector<CanonicalGraph>> {
    if !g.is_directed() {
        return Err(Error::Dimension("expected a directed graph".into()));
    }
    Ok(delta(g))
}

/// Differential of a weighted class in the quotient by total weight above
/// `cap`. Splits distribute the weight over the two halves; attachments add
/// a new vertex of weight `c >= 1` where the weight condition allows.
pub fn d_weighted(g: &CanonicalGraph, cap: u32) -> Result<ChainVector<CanonicalGraph>> {
    let total = g.total_weight();
    if !g.is_weighted() && g.vertex_count() > 0 {
        return Err(Error::WeightLength {
            expected: g.vertex_count(),
            got: 0,
        });
    }
    if cap < total {
        return Err(Error::WeightCapTooSmall { cap, total });
    }
    let mut acc = Accumulator::new(g.parity(), true);
    expand(g, Some((g.weights(), cap - total)), &mut acc);
    Ok(acc.out)
}

/// The differential of `complex` on one of its basis elements, with terms
/// outside a quotient removed.
pub fn differential(complex: ComplexId, g: &CanonicalGraph, cap: Option<u32>) -> Result<ChainVector<CanonicalGraph>> {
    let mut out = if complex.is_weighted() {
        let cap = cap.ok_or_else(|| Error::MissingWeightCap(complex.name().into()))?;
        d_weighted(g, cap)?
    } else {
        delta(g)
    };
    out.retain(|t| complex.keeps(t, cap));
    Ok(out)
}
