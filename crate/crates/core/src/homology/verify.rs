use std::collections::BTreeMap;
use std::fmt::Display;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::{build_bases, build_maps, AuxEngine, Engine, GraphEngine, Ladder, LadderSpec};
use crate::complexes::{basis_with_limit, Basis, ComplexId, GradedSlice};
use crate::differentials::{
    differential, map_f_wheeled, map_f_wheeled_projected, map_i_directed, project_equal, ChainVector,
};
use crate::error::{Error, Result};
use crate::graphs::{minimal_weight, CanonicalGraph};
use crate::linalg::{assemble, in_image, rank_modular, ImageTest, PrimeSource, RankMode, SparseIntMatrix};

/// A column where two matrix expressions disagree, with both expansions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub vertices: usize,
    pub element: String,
    pub left: BTreeMap<String, i64>,
    pub right: BTreeMap<String, i64>,
}

fn column_map(m: &SparseIntMatrix, j: usize, keys: &[String]) -> BTreeMap<String, i64> {
    m.column(j).iter().map(|&(r, _, v)| (keys[r].clone(), v)).collect()
}

fn first_bad_column(a: &SparseIntMatrix, b: &SparseIntMatrix) -> Option<usize> {
    (0..a.cols()).find(|&j| a.column(j) != b.column(j))
}

fn keys_of<K: Display>(b: &Basis<K>) -> Vec<String>
where
    K: Clone + Eq + std::hash::Hash,
{
    b.classes().iter().map(|k| k.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DSquaredReport {
    pub complex: ComplexId,
    pub d: i32,
    pub b: usize,
    #[serde(rename = "W")]
    pub w: Option<u32>,
    pub pairs_checked: usize,
    pub ok: bool,
    /// The failing basis element with `d(x)` as `left` and `d(d(x))` as `right`.
    pub failure: Option<Mismatch>,
}

fn d_squared_with<E: Engine>(engine: &E, spec: &LadderSpec) -> Result<DSquaredReport> {
    let vs: Vec<usize> = spec.vertices.clone().collect();
    let bases = build_bases(engine, &vs)?;
    let maps = build_maps(engine, &bases)?;
    let mut report = DSquaredReport {
        complex: spec.complex,
        d: spec.d,
        b: spec.b,
        w: spec.w,
        pairs_checked: 0,
        ok: true,
        failure: None,
    };
    for k in 0..maps.len().saturating_sub(1) {
        let (Some(a), Some(b)) = (&maps[k], &maps[k + 1]) else {
            continue;
        };
        report.pairs_checked += 1;
        let prod = b.mul(a)?;
        if prod.is_zero() {
            continue;
        }
        report.ok = false;
        if report.failure.is_none() {
            let j = prod.entries()[0].1;
            let src = bases[k].as_ref().expect("map implies basis");
            let mid = keys_of(bases[k + 1].as_ref().expect("map implies basis"));
            let top = keys_of(bases[k + 2].as_ref().expect("map implies basis"));
            report.failure = Some(Mismatch {
                vertices: vs[k],
                element: src.classes()[j].to_string(),
                left: column_map(a, j, &mid),
                right: column_map(&prod, j, &top),
            });
        }
    }
    Ok(report)
}

/// Checks that consecutive assembled differentials multiply to the exact zero
/// matrix over the range.
pub fn verify_d_squared(spec: &LadderSpec) -> Result<DSquaredReport> {
    spec.validate()?;
    if spec.complex.is_aux() {
        d_squared_with(&AuxEngine(spec.w.expect("validated")), spec)
    } else {
        d_squared_with(&GraphEngine(spec), spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainMapKind {
    /// All admissible weightings, from `dfcGC_ge2` into `dwGC_star`.
    FWheeled,
    /// The same map restricted to `dcGC`.
    FWheeledFromDcgc,
    /// All weightings followed by projection onto `dwGC`.
    FWheeledProjected,
    /// All directions on edges, from `GC_ge2` into `dfcGC_ge2`.
    IDirected,
    /// Quotient map from `dcGC` onto `dcGC_eq`.
    ProjectEqual,
}

impl ChainMapKind {
    pub const ALL: [ChainMapKind; 5] = [
        Self::FWheeled,
        Self::FWheeledFromDcgc,
        Self::FWheeledProjected,
        Self::IDirected,
        Self::ProjectEqual,
    ];

    pub fn source(self) -> ComplexId {
        match self {
            Self::FWheeled | Self::FWheeledProjected => ComplexId::dfcGC_ge2,
            Self::FWheeledFromDcgc | Self::ProjectEqual => ComplexId::dcGC,
            Self::IDirected => ComplexId::GC_ge2,
        }
    }

    pub fn target(self) -> ComplexId {
        match self {
            Self::FWheeled | Self::FWheeledFromDcgc => ComplexId::dwGC_star,
            Self::FWheeledProjected => ComplexId::dwGC,
            Self::IDirected => ComplexId::dfcGC_ge2,
            Self::ProjectEqual => ComplexId::dcGC_eq,
        }
    }

    pub fn is_weighted(self) -> bool {
        self.target().is_weighted()
    }

    fn apply(self, g: &CanonicalGraph, cap: Option<u32>) -> Result<ChainVector<CanonicalGraph>> {
        let cap_or = || cap.ok_or_else(|| Error::MissingWeightCap(self.target().name().into()));
        match self {
            Self::FWheeled | Self::FWheeledFromDcgc => map_f_wheeled(g, cap_or()?),
            Self::FWheeledProjected => map_f_wheeled_projected(g, cap_or()?),
            Self::IDirected => map_i_directed(g),
            Self::ProjectEqual => Ok(project_equal(g)),
        }
    }
}

fn source_spec(kind: ChainMapKind, d: i32, b: usize, vertices: RangeInclusive<usize>) -> LadderSpec {
    LadderSpec::new(kind.source(), d, b, vertices, None)
}

fn target_spec(kind: ChainMapKind, d: i32, b: usize, vertices: RangeInclusive<usize>, w: Option<u32>) -> LadderSpec {
    LadderSpec::new(kind.target(), d, b, vertices, if kind.is_weighted() { w } else { None })
}

type Bases = Vec<Option<Basis<CanonicalGraph>>>;

/// Bases and differentials of source and target over the range, with the
/// map's matrix on every slice.
pub(crate) struct ChainMapData {
    pub source_bases: Bases,
    pub target_bases: Bases,
    pub source_maps: Vec<Option<SparseIntMatrix>>,
    pub target_maps: Vec<Option<SparseIntMatrix>>,
    pub phi: Vec<Option<SparseIntMatrix>>,
}

pub(crate) fn chain_map_data(
    kind: ChainMapKind,
    d: i32,
    b: usize,
    vertices: RangeInclusive<usize>,
    w: Option<u32>,
) -> Result<ChainMapData> {
    if kind.is_weighted() && w.is_none() {
        return Err(Error::MissingWeightCap(kind.target().name().into()));
    }
    let vs: Vec<usize> = vertices.clone().collect();
    let s = source_spec(kind, d, b, vertices.clone());
    let t = target_spec(kind, d, b, vertices, w);
    let source_bases = build_bases(&GraphEngine(&s), &vs)?;
    let target_bases = build_bases(&GraphEngine(&t), &vs)?;
    let source_maps = build_maps(&GraphEngine(&s), &source_bases)?;
    let target_maps = build_maps(&GraphEngine(&t), &target_bases)?;
    let phi = source_bases
        .iter()
        .zip(&target_bases)
        .map(|(a, b)| match (a, b) {
            (Some(a), Some(b)) => assemble(a, b, |g| kind.apply(g, w)).map(Some),
            _ => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainMapData {
        source_bases,
        target_bases,
        source_maps,
        target_maps,
        phi,
    })
}

/// Matrices of the map on each slice of the range (`None` for gaps).
pub fn chain_map_matrices(
    kind: ChainMapKind,
    d: i32,
    b: usize,
    vertices: RangeInclusive<usize>,
    w: Option<u32>,
) -> Result<Vec<Option<SparseIntMatrix>>> {
    Ok(chain_map_data(kind, d, b, vertices, w)?.phi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMapReport {
    pub kind: ChainMapKind,
    pub d: i32,
    pub b: usize,
    #[serde(rename = "W")]
    pub w: Option<u32>,
    pub pairs_checked: usize,
    pub ok: bool,
    /// Full column rank modulo every prime on every slice; only for the
    /// weighting maps.
    pub injective: Option<bool>,
    /// `left` is `d(phi(x))`, `right` is `phi(d(x))`.
    pub failure: Option<Mismatch>,
}

/// Checks `phi * d_source = d_target * phi` exactly on each consecutive pair
/// of slices.
pub fn verify_chain_map(
    kind: ChainMapKind,
    d: i32,
    b: usize,
    vertices: RangeInclusive<usize>,
    w: Option<u32>,
    seed: u64,
) -> Result<ChainMapReport> {
    let vs: Vec<usize> = vertices.clone().collect();
    let data = chain_map_data(kind, d, b, vertices, w)?;
    let mut report = ChainMapReport {
        kind,
        d,
        b,
        w: if kind.is_weighted() { w } else { None },
        pairs_checked: 0,
        ok: true,
        injective: None,
        failure: None,
    };
    for k in 0..vs.len().saturating_sub(1) {
        let (Some(ds), Some(dt), Some(p0), Some(p1)) =
            (&data.source_maps[k], &data.target_maps[k], &data.phi[k], &data.phi[k + 1])
        else {
            continue;
        };
        report.pairs_checked += 1;
        let left = dt.mul(p0)?;
        let right = p1.mul(ds)?;
        if let Some(j) = first_bad_column(&left, &right) {
            report.ok = false;
            if report.failure.is_none() {
                let keys = keys_of(data.target_bases[k + 1].as_ref().expect("map implies basis"));
                report.failure = Some(Mismatch {
                    vertices: vs[k],
                    element: data.source_bases[k].as_ref().expect("map implies basis").classes()[j].to_string(),
                    left: column_map(&left, j, &keys),
                    right: column_map(&right, j, &keys),
                });
            }
        }
    }
    if kind.is_weighted() {
        let primes = PrimeSource::new(seed).take(crate::linalg::DEFAULT_PRIME_COUNT);
        // inputs needing more than the cap vanish in the quotient; the rest
        // must stay independent
        let cap = w.expect("weighted kinds carry a cap");
        let injective = data.phi.iter().zip(&data.source_bases).all(|(m, basis)| {
            let (Some(m), Some(basis)) = (m, basis) else {
                return true;
            };
            let visible = basis
                .classes()
                .iter()
                .filter(|g| g.degrees().iter().map(|&(i, o)| minimal_weight(i, o)).sum::<u32>() <= cap)
                .count();
            let c = rank_modular(m, &primes);
            c.ranks.iter().all(|&r| r == visible)
        });
        report.injective = Some(injective);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coboundary {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub closed: bool,
    pub coboundary: Coboundary,
    /// Primes certifying a `No`; empty when the answer came from exact
    /// rational elimination.
    pub primes: Vec<u64>,
    /// Rank of the incoming differential and of it with the vector appended.
    pub ranks: Option<[usize; 2]>,
}

/// Whether `x` in `slice` is closed and whether it is a coboundary.
pub fn is_nontrivial_cocycle(x: &ChainVector<CanonicalGraph>, slice: &GradedSlice, seed: u64) -> Result<CocycleReport> {
    let complex = slice.complex;
    let mut dx = ChainVector::new();
    for (g, c) in x.iter() {
        dx.add_scaled(&differential(complex, g, slice.w)?, c);
    }
    let closed = dx.is_zero();
    if x.is_zero() {
        return Ok(CocycleReport {
            closed,
            coboundary: Coboundary::Yes,
            primes: Vec::new(),
            ranks: None,
        });
    }
    let here = match basis_with_limit(slice, None) {
        Ok(b) => b,
        Err(Error::SliceTooLarge { .. }) => {
            return Ok(CocycleReport {
                closed,
                coboundary: Coboundary::Unknown,
                primes: Vec::new(),
                ranks: None,
            })
        }
        Err(e) => return Err(e),
    };
    let mut v = vec![0i64; here.len()];
    for (g, c) in x.iter() {
        let i = here.position(g).ok_or_else(|| Error::MissingKey { key: g.to_string() })?;
        v[i] = c;
    }
    let below = if slice.v <= 1 {
        SparseIntMatrix::zeros(here.len(), 0)
    } else {
        let prev = GradedSlice { v: slice.v - 1, ..*slice };
        match basis_with_limit(&prev, None) {
            Ok(pb) => assemble(&pb, &here, |g| differential(complex, g, slice.w))?,
            Err(Error::SliceTooLarge { .. }) => {
                return Ok(CocycleReport {
                    closed,
                    coboundary: Coboundary::Unknown,
                    primes: Vec::new(),
                    ranks: None,
                })
            }
            Err(e) => return Err(e),
        }
    };
    let primes = PrimeSource::new(seed).take(crate::linalg::DEFAULT_PRIME_COUNT);
    Ok(match in_image(&below, &v, RankMode::Modular, &primes)? {
        ImageTest::Yes { .. } => CocycleReport {
            closed,
            coboundary: Coboundary::Yes,
            primes: Vec::new(),
            ranks: None,
        },
        ImageTest::No {
            primes,
            rank,
            augmented_rank,
        } => CocycleReport {
            closed,
            coboundary: Coboundary::No,
            primes,
            ranks: Some([rank, augmented_rank]),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesRow {
    pub vertices: usize,
    pub degree: i64,
    pub total: usize,
    pub neq: usize,
    pub eq: usize,
    pub h_total: Option<usize>,
    pub h_neq: Option<usize>,
    pub h_eq: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesReport {
    pub d: i32,
    pub b: usize,
    pub rows: Vec<SesRow>,
    pub basis_additive: bool,
    /// Euler characteristics of the bases of the full, unbalanced and
    /// balanced complexes.
    pub euler_basis: [i64; 3],
    pub euler_additive: bool,
    /// Long-exact-sequence inequalities on the exact interior degrees.
    pub les_ok: bool,
    pub partial: bool,
}

/// Dimension bookkeeping for the sequence unbalanced -> full -> balanced of
/// directed complexes without passing vertices.
pub fn ses_consistency(d: i32, b: usize, vertices: RangeInclusive<usize>, seed: u64) -> Result<SesReport> {
    let report = |c| Ladder::build(&LadderSpec::new(c, d, b, vertices.clone(), None))?.report(seed, 3);
    let total = report(ComplexId::dcGC)?;
    let neq = report(ComplexId::dcGC_neq)?;
    let eq = report(ComplexId::dcGC_eq)?;
    let partial = total.flags.partial || neq.flags.partial || eq.flags.partial;
    let mut rows = Vec::new();
    let mut basis_additive = true;
    let mut euler = [0i64; 3];
    for ((t, n), e) in total.table.iter().zip(&neq.table).zip(&eq.table) {
        let (Some(bt), Some(bn), Some(be)) = (t.basis_dim, n.basis_dim, e.basis_dim) else {
            continue;
        };
        basis_additive &= bt == bn + be;
        let s = if t.degree.rem_euclid(2) == 0 { 1 } else { -1 };
        euler[0] += s * bt as i64;
        euler[1] += s * bn as i64;
        euler[2] += s * be as i64;
        rows.push(SesRow {
            vertices: t.vertices,
            degree: t.degree,
            total: bt,
            neq: bn,
            eq: be,
            h_total: t.dim,
            h_neq: n.dim,
            h_eq: e.dim,
        });
    }
    let mut euler_additive = euler[0] == euler[1] + euler[2];
    if let (Some(a), Some(x), Some(y)) = (total.euler_cohomology, neq.euler_cohomology, eq.euler_cohomology) {
        euler_additive &= a == x + y && a == euler[0];
    }
    // ... -> H^k(neq) -> H^k(total) -> H^k(eq) -> H^{k+1}(neq) -> ...
    let mut les_ok = true;
    for (k, r) in rows.iter().enumerate() {
        let (Some(ht), Some(hn), Some(he)) = (r.h_total, r.h_neq, r.h_eq) else {
            continue;
        };
        les_ok &= ht <= hn + he;
        if let Some(next_n) = rows.get(k + 1).and_then(|x| x.h_neq) {
            les_ok &= he <= ht + next_n;
        }
        if let Some(prev_e) = k.checked_sub(1).and_then(|i| rows[i].h_eq) {
            les_ok &= hn <= prev_e + ht;
        }
    }
    Ok(SesReport {
        d,
        b,
        rows,
        basis_additive,
        euler_basis: euler,
        euler_additive,
        les_ok,
        partial,
    })
}
