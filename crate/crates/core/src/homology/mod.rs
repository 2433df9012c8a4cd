//! Graded complexes assembled from slices: rank ladders, cohomology tables
//! with honest truncation intervals, and the verification suites.

mod cone;
mod verify;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::hash::Hash;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cone::{cone_of_matrices, cone_report};
pub use verify::{
    chain_map_matrices, is_nontrivial_cocycle, ses_consistency, verify_chain_map, verify_d_squared, ChainMapKind,
    ChainMapReport, Coboundary, CocycleReport, DSquaredReport, Mismatch, SesReport, SesRow,
};

use crate::complexes::{aux_basis, basis_with_limit, Basis, ComplexId, GradedSlice};
use crate::differentials::{d_aux, differential, ChainVector};
use crate::error::{Error, Result};
use crate::linalg::{assemble, rank_certified, rank_modular, PrimeSource, SparseIntMatrix, DEFAULT_PRIME_COUNT, DEFAULT_SEED};

pub const SCHEMA_VERSION: u32 = 1;

/// A contiguous run of slices of one complex. For `AuxC`, `w` is the total
/// weight and the vertex count is the string length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderSpec {
    pub complex: ComplexId,
    pub d: i32,
    pub b: usize,
    pub vertices: RangeInclusive<usize>,
    pub w: Option<u32>,
    /// Per-slice cap on the number of classes; larger slices become gaps.
    pub limit: Option<usize>,
}

impl LadderSpec {
    pub fn new(complex: ComplexId, d: i32, b: usize, vertices: RangeInclusive<usize>, w: Option<u32>) -> Self {
        Self {
            complex,
            d,
            b,
            vertices,
            w,
            limit: None,
        }
    }

    pub fn aux(w: u32) -> Self {
        Self::new(ComplexId::AuxC, 0, 0, 1..=w.max(1) as usize, Some(w))
    }

    pub fn slice(&self, v: usize) -> GradedSlice {
        GradedSlice::new(self.complex, self.d, self.b, v, self.w)
    }

    fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::Dimension("empty vertex range".into()));
        }
        if (self.complex.is_weighted() || self.complex.is_aux()) && self.w.is_none() {
            return Err(Error::MissingWeightCap(self.complex.name().into()));
        }
        Ok(())
    }

    /// Whether the slice below the range is known to be empty.
    pub fn lower_exact(&self) -> bool {
        *self.vertices.start() <= 1
    }

    /// Whether the slice above the range is known to be empty.
    pub fn upper_exact(&self) -> bool {
        self.complex
            .max_vertices(self.b, self.w)
            .is_some_and(|m| *self.vertices.end() >= m)
    }
}

/// A basis together with the differential that acts on it.
pub(crate) trait Engine: Sync {
    type Key: Clone + Eq + Hash + Ord + Display + Send + Sync;
    fn basis(&self, v: usize) -> Result<Basis<Self::Key>>;
    fn apply(&self, key: &Self::Key) -> Result<ChainVector<Self::Key>>;
}

pub(crate) struct GraphEngine<'a>(pub &'a LadderSpec);

impl Engine for GraphEngine<'_> {
    type Key = crate::graphs::CanonicalGraph;

    fn basis(&self, v: usize) -> Result<Basis<Self::Key>> {
        basis_with_limit(&self.0.slice(v), self.0.limit)
    }

    fn apply(&self, key: &Self::Key) -> Result<ChainVector<Self::Key>> {
        differential(self.0.complex, key, self.0.w)
    }
}

pub(crate) struct AuxEngine(pub u32);

impl Engine for AuxEngine {
    type Key = crate::complexes::Composition;

    fn basis(&self, v: usize) -> Result<Basis<Self::Key>> {
        Ok(aux_basis(self.0, v))
    }

    fn apply(&self, key: &Self::Key) -> Result<ChainVector<Self::Key>> {
        Ok(d_aux(key))
    }
}

fn gap_or<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::SliceTooLarge { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Bases of every slice in the range (`None` marks a gap), then the matrices
/// between consecutive present slices.
pub(crate) fn build_bases<E: Engine>(engine: &E, vs: &[usize]) -> Result<Vec<Option<Basis<E::Key>>>> {
    vs.par_iter().map(|&v| gap_or(engine.basis(v))).collect()
}

pub(crate) fn build_maps<E: Engine>(engine: &E, bases: &[Option<Basis<E::Key>>]) -> Result<Vec<Option<SparseIntMatrix>>> {
    bases
        .windows(2)
        .map(|w| match (&w[0], &w[1]) {
            (Some(a), Some(b)) => assemble(a, b, |k| engine.apply(k)).map(Some),
            _ => Ok(None),
        })
        .collect()
}

/// One slice of a ladder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub vertices: usize,
    pub degree: i64,
    /// `None` when the slice exceeded the enumeration limit.
    pub dim: Option<usize>,
    pub keys: Option<Vec<String>>,
}

/// Slices in increasing vertex count with the differentials between them:
/// `maps[k]` goes from slot `k` to slot `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ladder {
    pub spec: LadderSpec,
    pub slots: Vec<Slot>,
    pub maps: Vec<Option<SparseIntMatrix>>,
    pub lower_exact: bool,
    pub upper_exact: bool,
}

fn slots_from<K: Display>(spec: &LadderSpec, vs: &[usize], bases: &[Option<Basis<K>>]) -> Vec<Slot>
where
    K: Clone + Eq + Hash,
{
    vs.iter()
        .zip(bases)
        .map(|(&v, b)| Slot {
            vertices: v,
            degree: spec.slice(v).degree(),
            dim: b.as_ref().map(|b| b.len()),
            keys: b.as_ref().map(|b| b.classes().iter().map(|k| k.to_string()).collect()),
        })
        .collect()
}

impl Ladder {
    pub fn build(spec: &LadderSpec) -> Result<Self> {
        spec.validate()?;
        let vs: Vec<usize> = spec.vertices.clone().collect();
        let (slots, maps) = if spec.complex.is_aux() {
            let engine = AuxEngine(spec.w.expect("validated"));
            let bases = build_bases(&engine, &vs)?;
            (slots_from(spec, &vs, &bases), build_maps(&engine, &bases)?)
        } else {
            let engine = GraphEngine(spec);
            let bases = build_bases(&engine, &vs)?;
            (slots_from(spec, &vs, &bases), build_maps(&engine, &bases)?)
        };
        Ok(Self {
            spec: spec.clone(),
            slots,
            maps,
            lower_exact: spec.lower_exact(),
            upper_exact: spec.upper_exact(),
        })
    }

    /// Reassemble a ladder from stored slot data and matrices.
    pub fn from_parts(spec: &LadderSpec, slots: Vec<Slot>, maps: Vec<Option<SparseIntMatrix>>) -> Result<Self> {
        spec.validate()?;
        if slots.len() != spec.vertices.clone().count() || maps.len() + 1 != slots.len() {
            return Err(Error::Dimension("slot and map counts do not fit the range".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            if let Some(m) = m {
                if Some(m.cols()) != slots[k].dim || Some(m.rows()) != slots[k + 1].dim {
                    return Err(Error::Dimension(format!("map {k} has the wrong shape")));
                }
            }
        }
        Ok(Self {
            spec: spec.clone(),
            slots,
            maps,
            lower_exact: spec.lower_exact(),
            upper_exact: spec.upper_exact(),
        })
    }

    pub fn is_partial(&self) -> bool {
        self.slots.iter().any(|s| s.dim.is_none())
    }

    /// Products of consecutive maps, each of which must be exactly zero.
    pub fn d_squared_ok(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if let (Some(a), Some(b)) = (&w[0], &w[1]) {
                if !b.mul(a)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn report(&self, seed: u64, prime_count: usize) -> Result<CohomologyReport> {
        let mut source = PrimeSource::new(seed);
        let primes = source.take(prime_count.max(1));
        let certs: Vec<Option<crate::linalg::RankCertificate>> = self
            .maps
            .par_iter()
            .map(|m| m.as_ref().map(|m| rank_modular(m, &primes)))
            .collect();
        // disagreeing primes get a deterministic second opinion
        let certs: Vec<Option<crate::linalg::RankCertificate>> = certs
            .into_iter()
            .zip(&self.maps)
            .map(|(c, m)| match (c, m) {
                (Some(c), Some(m)) if !c.agree => Some(rank_certified(m, &mut source, prime_count.max(1), 2)),
                (c, _) => c,
            })
            .collect();
        let ranks_agree = certs.iter().flatten().all(|c| c.agree);
        let rank_of = |k: usize| certs[k].as_ref().map(|c| c.consensus);
        let n = self.slots.len();
        let mut table = Vec::with_capacity(n);
        for (k, slot) in self.slots.iter().enumerate() {
            let incoming = if k == 0 {
                if self.lower_exact {
                    Some(0)
                } else {
                    None
                }
            } else {
                rank_of(k - 1)
            };
            let outgoing = if k + 1 == n {
                if self.upper_exact {
                    Some(0)
                } else {
                    None
                }
            } else {
                rank_of(k)
            };
            let (dim, interval) = match (slot.dim, incoming, outgoing) {
                (Some(n), Some(i), Some(o)) => (Some(n - i - o), None),
                (Some(n), i, o) => (None, Some([0, n - i.unwrap_or(0) - o.unwrap_or(0)])),
                (None, _, _) => (None, None),
            };
            table.push(TableRow {
                degree: slot.degree,
                vertices: slot.vertices,
                basis_dim: slot.dim,
                dim,
                interval,
            });
        }
        let ranks = self
            .maps
            .iter()
            .zip(&certs)
            .enumerate()
            .filter_map(|(k, (m, c))| {
                let (m, c) = (m.as_ref()?, c.as_ref()?);
                Some(RankRow {
                    from_vertices: self.slots[k].vertices,
                    to_vertices: self.slots[k + 1].vertices,
                    rows: m.rows(),
                    cols: m.cols(),
                    rank: c.consensus,
                    ranks_mod_p: c.ranks.clone(),
                    agree: c.agree,
                })
            })
            .collect();
        let gaps: Vec<usize> = self.slots.iter().filter(|s| s.dim.is_none()).map(|s| s.vertices).collect();
        let euler_basis = if gaps.is_empty() {
            Some(self.slots.iter().map(|s| sign(s.degree) * s.dim.unwrap_or(0) as i64).sum())
        } else {
            None
        };
        let euler_cohomology = if table.iter().all(|r| r.dim.is_some()) {
            Some(table.iter().map(|r| sign(r.degree) * r.dim.unwrap_or(0) as i64).sum())
        } else {
            None
        };
        let d_squared_ok = self.d_squared_ok()?;
        Ok(CohomologyReport {
            schema_version: SCHEMA_VERSION,
            complex: self.spec.complex,
            d: self.spec.d,
            b: self.spec.b,
            w: self.spec.w,
            seed,
            primes,
            table,
            ranks,
            euler_basis,
            euler_cohomology,
            flags: ReportFlags {
                d_squared_checked: true,
                d_squared_ok,
                ranks_agree,
                truncated_low: !self.lower_exact,
                truncated_high: !self.upper_exact,
                partial: !gaps.is_empty(),
                gaps,
            },
        })
    }
}

fn sign(degree: i64) -> i64 {
    if degree.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub degree: i64,
    pub vertices: usize,
    pub basis_dim: Option<usize>,
    /// Exact dimension, when both adjacent ranks are known.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim: Option<usize>,
    /// Bounds `[lower, upper]` at a truncation edge.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub interval: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub from_vertices: usize,
    pub to_vertices: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub ranks_mod_p: Vec<usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFlags {
    pub d_squared_checked: bool,
    pub d_squared_ok: bool,
    pub ranks_agree: bool,
    pub truncated_low: bool,
    pub truncated_high: bool,
    pub partial: bool,
    pub gaps: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub schema_version: u32,
    pub complex: ComplexId,
    pub d: i32,
    pub b: usize,
    #[serde(rename = "W")]
    pub w: Option<u32>,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub table: Vec<TableRow>,
    pub ranks: Vec<RankRow>,
    pub euler_basis: Option<i64>,
    pub euler_cohomology: Option<i64>,
    pub flags: ReportFlags,
}

impl CohomologyReport {
    /// Exact dimensions by degree; edge intervals and gaps are left out.
    pub fn exact_dims(&self) -> BTreeMap<i64, usize> {
        self.table.iter().filter_map(|r| Some((r.degree, r.dim?))).collect()
    }

    pub fn row(&self, vertices: usize) -> Option<&TableRow> {
        self.table.iter().find(|r| r.vertices == vertices)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Canonical keys of one slice of the ladder, in basis order.
pub fn basis_keys(spec: &LadderSpec, v: usize) -> Result<Vec<String>> {
    spec.validate()?;
    if spec.complex.is_aux() {
        Ok(AuxEngine(spec.w.expect("validated")).basis(v)?.classes().iter().map(|k| k.to_string()).collect())
    } else {
        Ok(GraphEngine(spec).basis(v)?.classes().iter().map(|k| k.to_string()).collect())
    }
}

fn keyed_matrix<E: Engine>(
    engine: &E,
    spec: &LadderSpec,
    v: usize,
    parse: impl Fn(&str) -> Result<E::Key>,
    source: &[String],
    target: &[String],
) -> Result<SparseIntMatrix> {
    let a = Basis::from_classes(spec.slice(v), source.iter().map(|k| parse(k)).collect::<Result<_>>()?);
    let b = Basis::from_classes(spec.slice(v + 1), target.iter().map(|k| parse(k)).collect::<Result<_>>()?);
    assemble(&a, &b, |k| engine.apply(k))
}

/// The differential from slice `v` to slice `v + 1`, with both bases given by
/// their stored canonical keys.
pub fn matrix_from_keys(spec: &LadderSpec, v: usize, source: &[String], target: &[String]) -> Result<SparseIntMatrix> {
    spec.validate()?;
    if spec.complex.is_aux() {
        let engine = AuxEngine(spec.w.expect("validated"));
        keyed_matrix(&engine, spec, v, |k| k.parse(), source, target)
    } else {
        let directed = spec.complex.is_directed();
        keyed_matrix(&GraphEngine(spec), spec, v, |k| crate::graphs::CanonicalGraph::parse(k, directed), source, target)
    }
}

/// Build the ladder and report on it with the default seed and prime count.
pub fn cohomology(spec: &LadderSpec) -> Result<CohomologyReport> {
    Ladder::build(spec)?.report(DEFAULT_SEED, DEFAULT_PRIME_COUNT)
}
