//! Brute-force reference: every labelled edge multiset, canonical form by
//! minimizing over all vertex permutations, vanishing by enumerating the full
//! automorphism group. Shares no code with the library's canonicalizer.

use std::collections::BTreeMap;

pub type Edges = Vec<(usize, usize)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// connected directed, any valency
    DirectedAll,
    DirectedGe2,
    /// min valency 2, no passing vertices
    DirectedNoPassing,
    DirectedBalanced,
    DirectedUnbalanced,
    DirectedAcyclic,
    UndirectedGe2,
    UndirectedGe3,
}

impl Family {
    pub fn directed(self) -> bool {
        !matches!(self, Self::UndirectedGe2 | Self::UndirectedGe3)
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Sign of a sequence read as a permutation of its sorted order; 0 if it
/// has repeats.
pub fn sequence_sign<T: Ord>(xs: &[T]) -> i64 {
    let mut sign = 1;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            match xs[i].cmp(&xs[j]) {
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

fn relabel(edges: &[(usize, usize)], p: &[usize], directed: bool) -> Edges {
    edges
        .iter()
        .map(|&(s, t)| {
            let (a, b) = (p[s], p[t]);
            if directed || a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

/// Canonical encoding: lexicographically least sorted relabelled edge list,
/// weights permuted alongside and compared after the edges.
pub fn canonical_form(edges: &[(usize, usize)], weights: &[u32], directed: bool, perms: &[Vec<usize>]) -> (Edges, Vec<u32>) {
    let mut best: Option<(Edges, Vec<u32>)> = None;
    for p in perms {
        let mut e = relabel(edges, p, directed);
        e.sort_unstable();
        let mut w = vec![0; weights.len()];
        for (u, &x) in weights.iter().enumerate() {
            w[p[u]] = x;
        }
        let cand = (e, w);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// Whether some automorphism acts on the orientation by an odd permutation.
/// Edges are taken in sorted canonical order.
pub fn vanishes(edges: &[(usize, usize)], weights: &[u32], directed: bool, d: i32, perms: &[Vec<usize>]) -> bool {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    let even = d % 2 == 0;
    if even && sorted.windows(2).any(|w| w[0] == w[1]) {
        // swapping two identical edges is an odd automorphism
        return true;
    }
    if !even && !directed && sorted.iter().any(|&(s, t)| s == t) {
        // reversing a loop flips one edge direction
        return true;
    }
    for p in perms {
        if weights.iter().enumerate().any(|(u, &w)| weights[p[u]] != w) {
            continue;
        }
        let image = relabel(&sorted, p, directed);
        let mut image_sorted = image.clone();
        image_sorted.sort_unstable();
        if image_sorted != sorted {
            continue;
        }
        let sign = if even {
            sequence_sign(&image)
        } else {
            let mut s = sequence_sign(p);
            if !directed {
                for &(a, b) in &sorted {
                    if p[a] > p[b] {
                        s = -s;
                    }
                }
            }
            s
        };
        if sign < 0 {
            return true;
        }
    }
    false
}

pub fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut deg = vec![(0, 0); n];
    for &(s, t) in edges {
        deg[s].1 += 1;
        deg[t].0 += 1;
    }
    deg
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(s, t) in edges {
            for (a, b) in [(s, t), (t, s)] {
                if a == u && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.iter().all(|&x| x)
}

fn has_directed_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    // repeatedly strip sources
    let mut alive = vec![true; n];
    loop {
        let mut removed = false;
        for v in 0..n {
            if alive[v] && !edges.iter().any(|&(s, t)| t == v && alive[s]) {
                alive[v] = false;
                removed = true;
            }
        }
        if !removed {
            return alive.iter().any(|&a| a);
        }
    }
}

pub fn admits(family: Family, n: usize, edges: &[(usize, usize)]) -> bool {
    if !connected(n, edges) {
        return false;
    }
    let deg = degrees(n, edges);
    let val = |v: usize| deg[v].0 + deg[v].1;
    let all = |f: &dyn Fn(usize) -> bool| (0..n).all(f);
    let passing = |v: usize| deg[v] == (1, 1);
    match family {
        Family::DirectedAll => true,
        Family::DirectedGe2 | Family::UndirectedGe2 => all(&|v| val(v) >= 2),
        Family::UndirectedGe3 => all(&|v| val(v) >= 3),
        Family::DirectedNoPassing => all(&|v| val(v) >= 2 && !passing(v)),
        Family::DirectedBalanced => all(&|v| val(v) >= 2 && !passing(v) && deg[v].0 == deg[v].1),
        Family::DirectedUnbalanced => {
            all(&|v| val(v) >= 2 && !passing(v)) && (0..n).any(|v| deg[v].0 != deg[v].1)
        }
        Family::DirectedAcyclic => all(&|v| val(v) >= 2 && !passing(v)) && !has_directed_cycle(n, edges),
    }
}

/// All edge multisets of size `e` on `n` labelled vertices.
pub fn labelled_multisets(n: usize, e: usize, directed: bool) -> Vec<Edges> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .filter(|&(s, t)| directed || s <= t)
        .collect();
    let mut out = Vec::new();
    fn rec(start: usize, left: usize, pairs: &[(usize, usize)], cur: &mut Edges, out: &mut Vec<Edges>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..pairs.len() {
            cur.push(pairs[i]);
            rec(i, left - 1, pairs, cur, out);
            cur.pop();
        }
    }
    rec(0, e, &pairs, &mut Vec::new(), &mut out);
    out
}

/// One isomorphism class found by the oracle.
#[derive(Clone, Debug)]
pub struct OracleClass {
    pub representative: Edges,
    pub weights: Vec<u32>,
    pub zero: bool,
}

/// Isomorphism classes of a family on `n` vertices and `e` edges, keyed by
/// the oracle's canonical form.
pub fn classes(family: Family, n: usize, e: usize, d: i32) -> BTreeMap<(Edges, Vec<u32>), OracleClass> {
    let perms = permutations(n);
    let directed = family.directed();
    let mut out = BTreeMap::new();
    for g in labelled_multisets(n, e, directed) {
        if !admits(family, n, &g) {
            continue;
        }
        let key = canonical_form(&g, &[], directed, &perms);
        out.entry(key).or_insert_with(|| OracleClass {
            zero: vanishes(&g, &[], directed, d, &perms),
            representative: g,
            weights: Vec::new(),
        });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightedSummand {
    All,
    Equal,
    NonEqual,
}

/// Weighted directed connected classes with every `w_v >= max(1, in-1, out-1)`
/// and total at most `cap`.
pub fn weighted_classes(
    summand: WeightedSummand,
    n: usize,
    e: usize,
    d: i32,
    cap: u32,
) -> BTreeMap<(Edges, Vec<u32>), OracleClass> {
    let perms = permutations(n);
    let mut out = BTreeMap::new();
    for g in labelled_multisets(n, e, true) {
        if !connected(n, &g) {
            continue;
        }
        let deg = degrees(n, &g);
        let mins: Vec<u32> = deg.iter().map(|&(i, o)| 1.max(i.saturating_sub(1)).max(o.saturating_sub(1)) as u32).collect();
        let mut w = mins.clone();
        'weights: loop {
            if w.iter().sum::<u32>() <= cap {
                let equal = deg.iter().zip(&w).all(|(&(i, o), &x)| i == o && x as usize + 1 == i);
                let keep = match summand {
                    WeightedSummand::All => true,
                    WeightedSummand::Equal => equal,
                    WeightedSummand::NonEqual => !equal,
                };
                if keep {
                    let key = canonical_form(&g, &w, true, &perms);
                    out.entry(key).or_insert_with(|| OracleClass {
                        zero: vanishes(&g, &w, true, d, &perms),
                        representative: g.clone(),
                        weights: w.clone(),
                    });
                }
            }
            // odometer over weights up to cap
            let mut i = 0;
            loop {
                if i == n {
                    break 'weights;
                }
                w[i] += 1;
                if w[i] <= cap {
                    break;
                }
                w[i] = mins[i];
                i += 1;
            }
        }
    }
    out
}
