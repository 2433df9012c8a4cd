use gcx_core::complexes::{basis, ComplexId, Composition, GradedSlice};
use gcx_core::differentials::{
    bracket, d_aux, d_weighted, delta, delta_directed, edge, loop_action, map_f_wheeled, map_i_directed, project_equal,
    reconciling_sign, rescaling_chain_literal, rescaling_class, ChainVector,
};
use gcx_core::graphs::{canonicalize, minimal_weight, CanonicalGraph, Multigraph, Parity};
use gcx_core::Error;
use proptest::prelude::*;

fn class(n: usize, e: &[(usize, usize)], directed: bool, d: i32) -> CanonicalGraph {
    let g = Multigraph::new(n, e.to_vec(), directed).unwrap();
    let (c, _) = canonicalize(&g, Parity(d), None).unwrap();
    assert!(!c.is_zero);
    c.graph
}

fn weighted(n: usize, e: &[(usize, usize)], w: &[u32], d: i32) -> CanonicalGraph {
    let g = Multigraph::directed(n, e.to_vec()).unwrap();
    canonicalize(&g, Parity(d), Some(w)).unwrap().0.graph
}

fn comp(xs: &[u32]) -> Composition {
    Composition(xs.to_vec())
}

#[test]
fn aux_examples() {
    assert_eq!(d_aux(&comp(&[2])), ChainVector::basis_vector(comp(&[1, 1])));
    assert!(d_aux(&comp(&[1])).is_zero());
    assert_eq!(d_aux(&comp(&[1, 2])), ChainVector::basis_vector(comp(&[1, 1, 1])));
    for w in 1..=6u32 {
        for c in gcx_core::complexes::aux_basis(w, 2).classes() {
            let mut dd = ChainVector::new();
            for (k, x) in d_aux(c).iter() {
                assert_eq!(k.total(), w);
                dd.add_scaled(&d_aux(k), x);
            }
            assert!(dd.is_zero());
        }
    }
}

#[test]
fn edge_is_maurer_cartan() {
    for d in 2..=5 {
        let e = ChainVector::basis_vector(edge(d));
        assert!(bracket(&e, &e).is_zero());
        assert!(delta_directed(&edge(d)).unwrap().is_zero());
    }
}

#[test]
fn delta_raises_vertices_and_degree() {
    for d in [2, 3] {
        for g in basis(&GradedSlice::new(ComplexId::dfcGC, d, 2, 3, None)).unwrap().classes() {
            for (t, _) in delta(g).iter() {
                assert_eq!(t.vertex_count(), g.vertex_count() + 1);
                assert_eq!(t.degree(), g.degree() + 1);
            }
        }
    }
}

#[test]
fn orienting_an_edge() {
    let e = class(2, &[(0, 1)], false, 2);
    let i = map_i_directed(&e).unwrap();
    assert_eq!(i, ChainVector::basis_vector(edge(2)).scaled(2));
}

#[test]
fn orienting_a_triangle() {
    let cyclic = class(3, &[(0, 1), (1, 2), (2, 0)], true, 2);
    let transitive = class(3, &[(0, 1), (1, 2), (0, 2)], true, 2);
    let raw = CanonicalGraph::parse("d=2;V=3;E=[(0,1),(0,2),(1,2)];W=[]", false).unwrap();
    let i = map_i_directed(&raw).unwrap();
    // the reflection of the triangle is odd on edges, so the 8 orientations
    // cancel in pairs: 2 cyclic and 6 transitive labellings
    assert!(i.is_zero());
    assert!(i.coefficient(&cyclic) == 0 && i.coefficient(&transitive) == 0);
    let (c, _) = canonicalize(&raw.to_multigraph(), Parity(2), None).unwrap();
    assert!(c.is_zero);
}

#[test]
fn i_commutes_with_delta_on_polygons() {
    for d in [2, 3] {
        for p in 1..=6 {
            let edges: Vec<(usize, usize)> = (0..p).map(|i| (i, (i + 1) % p)).collect();
            let g = Multigraph::undirected(p, edges).unwrap();
            let (c, _) = canonicalize(&g, Parity(d), None).unwrap();
            if c.is_zero {
                continue;
            }
            let mut left = ChainVector::new();
            for (k, x) in map_i_directed(&c.graph).unwrap().iter() {
                left.add_scaled(&delta_directed(k).unwrap(), x);
            }
            let mut right = ChainVector::new();
            for (k, x) in delta(&c.graph).iter() {
                right.add_scaled(&map_i_directed(k).unwrap(), x);
            }
            assert_eq!(left, right, "p={p} d={d}");
        }
    }
}

#[test]
fn rescaling_chains() {
    assert!(rescaling_chain_literal(2, 1).is_zero());
    let lit = rescaling_chain_literal(2, 3);
    let coeffs: Vec<(u32, i64)> = lit.iter().map(|(g, c)| (g.total_weight(), c)).collect();
    assert_eq!(coeffs, vec![(2, 1), (3, 2)]);
    let r = rescaling_class(2, 3);
    let coeffs: Vec<(u32, i64)> = r.iter().map(|(g, c)| (g.total_weight(), c)).collect();
    assert_eq!(coeffs, vec![(1, 1), (2, 2), (3, 3)]);
    for w in 1..=5 {
        let mut dr = ChainVector::new();
        for (g, c) in rescaling_class(2, w).iter() {
            dr.add_scaled(&d_weighted(g, w).unwrap(), c);
        }
        assert!(dr.is_zero(), "W={w}");
    }
    // the literal (a - 1) normalization is not closed
    let mut dl = ChainVector::new();
    for (g, c) in rescaling_chain_literal(2, 4).iter() {
        dl.add_scaled(&d_weighted(g, 4).unwrap(), c);
    }
    assert!(!dl.is_zero());
}

#[test]
fn weighted_differential_guards() {
    let v = weighted(1, &[], &[3], 2);
    assert!(matches!(d_weighted(&v, 2), Err(Error::WeightCapTooSmall { .. })));
    for (t, _) in d_weighted(&v, 5).unwrap().iter() {
        assert!(t.total_weight() >= 3);
        assert!(t.total_weight() <= 5);
    }
    // a dwGC_eq element: two vertices with a double 2-cycle, weights in - 1
    let eq = weighted(2, &[(0, 1), (0, 1), (1, 0), (1, 0)], &[1, 1], 3);
    for (t, _) in d_weighted(&eq, 6).unwrap().iter() {
        assert_eq!(t.total_weight(), 2, "only splits survive on {t}");
    }
}

#[test]
fn weighting_term_counts() {
    let g = class(3, &[(0, 1), (1, 2), (2, 0), (0, 2)], true, 3);
    let mins: Vec<u32> = g.degrees().iter().map(|&(i, o)| minimal_weight(i, o)).collect();
    assert_eq!(mins.iter().sum::<u32>(), 3);
    let f = map_f_wheeled(&g, 3).unwrap();
    assert_eq!(f.len(), 1);
    for cap in 3..=7u32 {
        // integer points with w_v >= mins_v and sum <= cap, no symmetry here
        let mut count = 0;
        for a in 0..=cap {
            for b in 0..=cap {
                for c in 0..=cap {
                    let w = [mins[0] + a, mins[1] + b, mins[2] + c];
                    if w.iter().sum::<u32>() <= cap {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(map_f_wheeled(&g, cap).unwrap().len(), count, "cap {cap}");
    }
}

#[test]
fn balanced_projection_and_loop_action() {
    let cyc = class(3, &[(0, 1), (1, 2), (2, 0)], true, 2);
    assert_eq!(project_equal(&cyc), ChainVector::basis_vector(cyc.clone()));
    let src = class(3, &[(0, 1), (0, 2), (1, 2), (2, 1)], true, 2);
    assert!(project_equal(&src).is_zero());
    assert_eq!(loop_action(&cyc), ChainVector::basis_vector(cyc.clone()).scaled(2));
    let k4 = class(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], false, 2);
    assert_eq!(loop_action(&k4), ChainVector::basis_vector(k4.clone()).scaled(6));
    let tree = class(3, &[(0, 1), (1, 2)], true, 2);
    assert!(loop_action(&tree).is_zero());
}

fn small_classes(d: i32) -> Vec<CanonicalGraph> {
    let mut out = Vec::new();
    for b in 0..=1 {
        for v in 1..=3 {
            out.extend(basis(&GradedSlice::new(ComplexId::dfcGC, d, b, v, None)).unwrap().classes().iter().cloned());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_graded_antisymmetric(d in 2i32..=3, i in any::<usize>(), j in any::<usize>()) {
        let pool = small_classes(d);
        let (a, b) = (&pool[i % pool.len()], &pool[j % pool.len()]);
        let ab = bracket(&ChainVector::basis_vector(a.clone()), &ChainVector::basis_vector(b.clone()));
        let ba = bracket(&ChainVector::basis_vector(b.clone()), &ChainVector::basis_vector(a.clone()));
        let sign = if (a.degree() * b.degree()).rem_euclid(2) == 0 { -1 } else { 1 };
        prop_assert_eq!(ab, ba.scaled(sign));
    }

    #[test]
    fn delta_is_bracket_with_edge(d in 2i32..=4, i in any::<usize>()) {
        let pool = small_classes(d);
        let g = &pool[i % pool.len()];
        let rhs = bracket(&ChainVector::basis_vector(edge(d)), &ChainVector::basis_vector(g.clone()))
            .scaled(reconciling_sign(d, g.degree()));
        prop_assert_eq!(delta_directed(g).unwrap(), rhs);
    }
}
