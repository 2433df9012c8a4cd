//! The registry of complexes: each id is a constraint bundle over the graph
//! enumerator plus a rule for which differential terms a quotient drops.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{
    enumerate, CanonicalGraph, Constraints, Parity, SliceSpec, Summand, WeightConstraint, WeightedGraph,
};

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComplexId {
    dfGC,
    dfcGC,
    dfcGC_ge2,
    dcGC,
    dcGC_eq,
    dcGC_neq,
    OGC,
    fGC,
    GC_ge2,
    GC2,
    GC,
    dwGC_star,
    dwGC,
    dwGC_eq,
    AuxC,
}

impl ComplexId {
    pub const ALL: [ComplexId; 15] = [
        Self::dfGC,
        Self::dfcGC,
        Self::dfcGC_ge2,
        Self::dcGC,
        Self::dcGC_eq,
        Self::dcGC_neq,
        Self::OGC,
        Self::fGC,
        Self::GC_ge2,
        Self::GC2,
        Self::GC,
        Self::dwGC_star,
        Self::dwGC,
        Self::dwGC_eq,
        Self::AuxC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::dfGC => "dfGC",
            Self::dfcGC => "dfcGC",
            Self::dfcGC_ge2 => "dfcGC_ge2",
            Self::dcGC => "dcGC",
            Self::dcGC_eq => "dcGC_eq",
            Self::dcGC_neq => "dcGC_neq",
            Self::OGC => "OGC",
            Self::fGC => "fGC",
            Self::GC_ge2 => "GC_ge2",
            Self::GC2 => "GC2",
            Self::GC => "GC",
            Self::dwGC_star => "dwGC_star",
            Self::dwGC => "dwGC",
            Self::dwGC_eq => "dwGC_eq",
            Self::AuxC => "AuxC",
        }
    }

    pub fn is_weighted(self) -> bool {
        matches!(self, Self::dwGC_star | Self::dwGC | Self::dwGC_eq)
    }

    pub fn is_directed(self) -> bool {
        !matches!(self, Self::fGC | Self::GC_ge2 | Self::GC2 | Self::GC)
    }

    pub fn is_aux(self) -> bool {
        self == Self::AuxC
    }

    /// Constraint bundle; `cap` is required for weighted complexes.
    pub fn constraints(self, cap: Option<u32>) -> Result<Constraints> {
        let mut c = Constraints {
            directed: self.is_directed(),
            connected: true,
            ..Default::default()
        };
        match self {
            Self::dfGC => c.connected = false,
            Self::dfcGC => {}
            Self::dfcGC_ge2 => c.min_valency = 2,
            Self::dcGC | Self::dcGC_eq | Self::dcGC_neq | Self::OGC => {
                c.min_valency = 2;
                c.no_passing = true;
                c.balanced = self == Self::dcGC_eq;
                c.unbalanced = self == Self::dcGC_neq;
                c.acyclic = self == Self::OGC;
            }
            Self::fGC => {
                c.connected = false;
                c.min_valency = 2;
            }
            Self::GC_ge2 => c.min_valency = 2,
            Self::GC2 => {
                c.min_valency = 2;
                c.has_bivalent = true;
            }
            Self::GC => c.min_valency = 3,
            Self::dwGC_star | Self::dwGC | Self::dwGC_eq => {
                let cap = cap.ok_or_else(|| Error::MissingWeightCap(self.name().into()))?;
                c.weights = Some(WeightConstraint {
                    cap,
                    summand: match self {
                        Self::dwGC_star => Summand::All,
                        Self::dwGC => Summand::NonEqual,
                        _ => Summand::Equal,
                    },
                });
            }
            Self::AuxC => return Err(Error::UnknownComplex("AuxC has no graph constraints".into())),
        }
        Ok(c)
    }

    /// Whether a differential term survives in this complex. Terms that survive
    /// must then lie in the target basis; terms that do not are quotiented
    /// away.
    pub fn keeps(self, term: &CanonicalGraph, cap: Option<u32>) -> bool {
        match self {
            Self::dcGC_eq => term.degrees().iter().all(|&(i, o)| i == o),
            Self::dwGC_eq => cap.map_or(true, |w| term.total_weight() <= w) && is_equal_weighted(term),
            Self::dwGC_star | Self::dwGC => cap.map_or(true, |w| term.total_weight() <= w),
            _ => true,
        }
    }

    /// Upper bound on the vertex count of a nonempty slice, when finite.
    pub fn max_vertices(self, b: usize, cap: Option<u32>) -> Option<usize> {
        match self {
            Self::AuxC => cap.map(|w| w as usize),
            Self::dwGC_star | Self::dwGC => cap.map(|w| w as usize),
            // forced weights sum to b - 1 and each is at least 1
            Self::dwGC_eq => cap.map(|w| (w as usize).min(b.saturating_sub(1))),
            Self::dcGC_eq => Some(b.saturating_sub(1)),
            Self::GC => Some((2 * b).saturating_sub(2)),
            Self::dfcGC_ge2 | Self::dcGC | Self::dcGC_neq | Self::OGC | Self::GC_ge2 | Self::GC2 if b == 0 => Some(0),
            _ => None,
        }
    }
}

impl fmt::Display for ComplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComplexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownComplex(s.to_string()))
    }
}

/// One graded piece: fixed loop order and vertex count, plus the weight cap
/// for weighted complexes. For `AuxC`, `v` is the string length and `w` the
/// total weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedSlice {
    pub complex: ComplexId,
    pub d: Parity,
    pub b: usize,
    pub v: usize,
    pub w: Option<u32>,
}

impl GradedSlice {
    pub fn new(complex: ComplexId, d: i32, b: usize, v: usize, w: Option<u32>) -> Self {
        Self {
            complex,
            d: Parity(d),
            b,
            v,
            w,
        }
    }

    pub fn aux(w: u32, n: usize) -> Self {
        Self::new(ComplexId::AuxC, 0, 0, n, Some(w))
    }

    /// `V + b - 1`, or `None` when negative.
    pub fn edge_count(&self) -> Option<usize> {
        (self.v + self.b).checked_sub(1)
    }

    pub fn degree(&self) -> i64 {
        if self.complex.is_aux() {
            return self.v as i64;
        }
        let d = self.d.d() as i64;
        self.v as i64 - d - (d - 1) * (self.b as i64 - 1)
    }

    /// The next slice along the differential.
    pub fn next(&self) -> Self {
        Self {
            v: self.v + 1,
            ..*self
        }
    }

    pub fn with_complex(&self, complex: ComplexId) -> Self {
        Self { complex, ..*self }
    }
}

/// An element of the auxiliary string complex: the weights along the string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(pub Vec<u32>);

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("C=[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix("C=[")
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("not a string element: `{s}`")))?;
        if inner.is_empty() {
            return Ok(Self(Vec::new()));
        }
        inner
            .split(',')
            .map(|x| x.parse::<u32>().map_err(|_| Error::Parse(format!("bad weight in `{s}`"))))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl Composition {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Ordered list of basis elements of one slice with its index map.
#[derive(Clone, Debug)]
pub struct Basis<K> {
    pub slice: GradedSlice,
    classes: Vec<K>,
    index: HashMap<K, usize>,
}

impl<K: Clone + Eq + Hash> Basis<K> {
    pub fn from_classes(slice: GradedSlice, classes: Vec<K>) -> Self {
        let index = classes.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Self { slice, classes, index }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[K] {
        &self.classes
    }

    pub fn position(&self, key: &K) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn contains(&self, key: &K) -> bool {
        self.index.contains_key(key)
    }
}

/// Basis of a graph slice. Fails for `AuxC` (see [`aux_basis`]) and for
/// weighted complexes without a cap.
pub fn basis(slice: &GradedSlice) -> Result<Basis<CanonicalGraph>> {
    basis_with_limit(slice, None)
}

pub fn basis_with_limit(slice: &GradedSlice, limit: Option<usize>) -> Result<Basis<CanonicalGraph>> {
    let constraints = slice.complex.constraints(slice.w)?;
    let Some(edge_count) = slice.edge_count() else {
        return Ok(Basis::from_classes(*slice, Vec::new()));
    };
    if slice.complex.is_weighted() && slice.w.is_some_and(|w| (w as usize) < slice.v) {
        return Ok(Basis::from_classes(*slice, Vec::new()));
    }
    let classes = enumerate(&SliceSpec {
        vertex_count: slice.v,
        edge_count,
        parity: slice.d,
        constraints,
        limit,
    })?;
    Ok(Basis::from_classes(*slice, classes))
}

/// Strings of `n` vertices with total weight `w`, sorted by key.
pub fn aux_basis(w: u32, n: usize) -> Basis<Composition> {
    fn rec(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if parts == 0 {
            if left == 0 {
                out.push(Composition(cur.clone()));
            }
            return;
        }
        for a in 1..=left.saturating_sub(parts as u32 - 1) {
            cur.push(a);
            rec(left - a, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        rec(w, n, &mut Vec::new(), &mut out);
    }
    out.sort_by_cached_key(|c| c.to_string());
    Basis::from_classes(GradedSlice::aux(w, n), out)
}

/// Which direct summand of the weighted complex a weighted graph lies in.
pub fn classify_summand(graph: &WeightedGraph) -> ComplexId {
    let g = graph.graph();
    let equal = g
        .degrees()
        .iter()
        .zip(graph.weights())
        .all(|(&(i, o), &w)| i == o && w as i64 == i as i64 - 1);
    if equal {
        ComplexId::dwGC_eq
    } else {
        ComplexId::dwGC
    }
}

/// Every vertex has `w_v = |v|_in - 1 = |v|_out - 1`.
pub fn is_equal_weighted(term: &CanonicalGraph) -> bool {
    term.degrees()
        .iter()
        .zip(term.weights())
        .all(|(&(i, o), &w)| i == o && w as i64 == i as i64 - 1)
}

/// Dimensions of the graded symmetric algebra on `(connected[-d])`, shifted
/// back by `d`, counting products of 1 to `max_parts` factors. `extended`
/// adjoins one generator of degree 0 before shifting.
pub fn disconnected_dims(
    connected: &BTreeMap<i64, usize>,
    d: i32,
    max_parts: usize,
    extended: bool,
) -> BTreeMap<i64, usize> {
    let d = d as i64;
    let mut gens = connected.clone();
    if extended {
        *gens.entry(0).or_default() += 1;
    }
    // poly[k] maps total shifted degree -> count, for k factors
    let mut poly: Vec<BTreeMap<i64, u128>> = vec![BTreeMap::new(); max_parts + 1];
    poly[0].insert(0, 1);
    for (&deg, &m) in &gens {
        if m == 0 {
            continue;
        }
        let s = deg + d;
        let symmetric = s.rem_euclid(2) == 0;
        let mut next: Vec<BTreeMap<i64, u128>> = vec![BTreeMap::new(); max_parts + 1];
        for k in 0..=max_parts {
            for (&t, &c) in &poly[k] {
                for j in 0..=(max_parts - k) {
                    let ways = if symmetric {
                        binomial(m as u128 + j as u128 - 1, j as u128)
                    } else {
                        binomial(m as u128, j as u128)
                    };
                    if ways == 0 {
                        if !symmetric {
                            break;
                        }
                        continue;
                    }
                    *next[k + j].entry(t + j as i64 * s).or_default() += c * ways;
                }
            }
        }
        poly = next;
    }
    let mut out = BTreeMap::new();
    for layer in poly.iter().skip(1) {
        for (&t, &c) in layer {
            if c > 0 {
                *out.entry(t - d).or_default() += c as usize;
            }
        }
    }
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
