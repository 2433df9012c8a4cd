use super::{sign_pow, Accumulator, ChainVector};
use crate::graphs::{canonicalize, CanonicalGraph, Multigraph, Parity};

/// Reconciling sign `k` with `delta(G) = k * [edge, G]`, indexed by the
/// parities of `d` and of `|G|`. Calibrated on all small classes.
const RECONCILE: [[i64; 2]; 2] = [[-1, 1], [1, -1]];

pub fn reconciling_sign(d: i32, degree: i64) -> i64 {
    RECONCILE[d.rem_euclid(2) as usize][degree.rem_euclid(2) as usize]
}

/// The single directed edge, the Maurer-Cartan element.
pub fn edge(d: i32) -> CanonicalGraph {
    let g = Multigraph::directed(2, vec![(0, 1)]).expect("valid edge");
    canonicalize(&g, Parity(d), None).expect("valid edge").0.graph
}

/// `outer o_v inner`: replace vertex `v` of `outer` by `inner` and reattach
/// each dangling half-edge to every vertex of `inner`. The inner vertices come
/// first, followed by the remaining outer ones; for even `d` the outer edges
/// precede the inner ones.
pub fn insert(outer: &CanonicalGraph, v: usize, inner: &CanonicalGraph) -> ChainVector<CanonicalGraph> {
    let parity = outer.parity();
    let mut acc = Accumulator::new(parity, outer.is_directed());
    let (n1, n2) = (outer.vertex_count(), inner.vertex_count());
    let e1 = outer.edge_list();
    let e2 = inner.edge_list();
    let shift = |u: usize| if u < v { n2 + u } else { n2 + u - 1 };
    let mut hs = Vec::new();
    for (i, &(s, t)) in e1.iter().enumerate() {
        if s == v {
            hs.push((i, false));
        }
        if t == v {
            hs.push((i, true));
        }
    }
    let coeff = if parity.is_even() { 1 } else { sign_pow(v as i64) };
    let base: Vec<(usize, usize)> = e1
        .iter()
        .map(|&(s, t)| (if s == v { 0 } else { shift(s) }, if t == v { 0 } else { shift(t) }))
        .collect();
    let total = n2.pow(hs.len() as u32);
    let mut choice = vec![0usize; hs.len()];
    for _ in 0..total {
        let mut e = base.clone();
        for (k, &(ei, at_target)) in hs.iter().enumerate() {
            if at_target {
                e[ei].1 = choice[k];
            } else {
                e[ei].0 = choice[k];
            }
        }
        e.extend_from_slice(&e2);
        acc.push(n1 + n2 - 1, &e, None, coeff);
        for c in choice.iter_mut() {
            *c += 1;
            if *c < n2 {
                break;
            }
            *c = 0;
        }
    }
    acc.out
}

/// `[a, b] = sum_v a o_v b - (-1)^{|a||b|} sum_w b o_w a`, extended bilinearly.
pub fn bracket(
    a: &ChainVector<CanonicalGraph>,
    b: &ChainVector<CanonicalGraph>,
) -> ChainVector<CanonicalGraph> {
    let mut out = ChainVector::new();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            let sign = sign_pow(x.degree() * y.degree());
            for v in 0..x.vertex_count() {
                out.add_scaled(&insert(x, v, y), cx * cy);
            }
            for w in 0..y.vertex_count() {
                out.add_scaled(&insert(y, w, x), -sign * cx * cy);
            }
        }
    }
    out
}

/// Graded Jacobiator
/// `(-1)^{|a||c|}[a,[b,c]] + (-1)^{|b||a|}[b,[c,a]] + (-1)^{|c||b|}[c,[a,b]]`
/// of three homogeneous classes.
pub fn jacobi(a: &CanonicalGraph, b: &CanonicalGraph, c: &CanonicalGraph) -> ChainVector<CanonicalGraph> {
    let v = |g: &CanonicalGraph| ChainVector::basis_vector(g.clone());
    let (da, db, dc) = (a.degree(), b.degree(), c.degree());
    let mut out = ChainVector::new();
    out.add_scaled(&bracket(&v(a), &bracket(&v(b), &v(c))), sign_pow(da * dc));
    out.add_scaled(&bracket(&v(b), &bracket(&v(c), &v(a))), sign_pow(db * da));
    out.add_scaled(&bracket(&v(c), &bracket(&v(a), &v(b))), sign_pow(dc * db));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differentials::delta;

    #[test]
    fn edge_is_maurer_cartan() {
        for d in [2, 3] {
            let e = ChainVector::basis_vector(edge(d));
            assert!(bracket(&e, &e).is_zero(), "d={d}");
        }
    }

    #[test]
    fn bracket_with_edge_is_delta() {
        for d in [2, 3] {
            let g = Multigraph::directed(3, vec![(0, 1), (1, 2), (2, 0), (0, 0)]).unwrap();
            let g = canonicalize(&g, Parity(d), None).unwrap().0.graph;
            let lhs = delta(&g);
            let rhs = bracket(&ChainVector::basis_vector(edge(d)), &ChainVector::basis_vector(g.clone()))
                .scaled(reconciling_sign(d, g.degree()));
            assert!(!lhs.is_zero());
            assert_eq!(lhs, rhs, "d={d}");
        }
    }
}
