use std::ops::RangeInclusive;

use super::verify::{chain_map_data, ChainMapKind};
use super::{CohomologyReport, Ladder, LadderSpec, Slot};
use crate::error::{Error, Result};
use crate::linalg::SparseIntMatrix;

/// Mapping cone of `phi: a -> b` over a common vertex range. Slot `k` of the
/// cone is `a[k + 1] + b[k]`, with differential `[[-d_a, 0], [phi, d_b]]`.
/// Both truncation edges are left inexact.
pub fn cone_of_matrices(a: &Ladder, b: &Ladder, phi: &[Option<SparseIntMatrix>]) -> Result<Ladder> {
    let n = a.slots.len();
    if b.slots.len() != n || phi.len() != n || n < 2 {
        return Err(Error::Dimension("cone needs two aligned ladders of length at least 2".into()));
    }
    let slots: Vec<Slot> = (0..n - 1)
        .map(|k| Slot {
            vertices: b.slots[k].vertices,
            degree: b.slots[k].degree,
            dim: a.slots[k + 1].dim.zip(b.slots[k].dim).map(|(x, y)| x + y),
            keys: None,
        })
        .collect();
    let maps = (0..n.saturating_sub(2))
        .map(|k| {
            let (Some(da), Some(db), Some(f)) = (&a.maps[k + 1], &b.maps[k], &phi[k + 1]) else {
                return Ok(None);
            };
            let zero = SparseIntMatrix::zeros(da.rows(), db.cols());
            SparseIntMatrix::block(&da.scaled(-1), &zero, f, db).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let start = *b.spec.vertices.start();
    let mut spec = b.spec.clone();
    spec.vertices = start..=start + n - 2;
    Ok(Ladder {
        spec,
        slots,
        maps,
        lower_exact: false,
        upper_exact: false,
    })
}

/// Truncated cohomology of the cone of a chain map. Exploratory: both range
/// edges are intervals and nothing here decides a quasi-isomorphism.
pub fn cone_report(
    kind: ChainMapKind,
    d: i32,
    b: usize,
    vertices: RangeInclusive<usize>,
    w: Option<u32>,
    seed: u64,
) -> Result<CohomologyReport> {
    let (lo, hi) = (*vertices.start(), *vertices.end());
    let range = lo..=hi + 1;
    let data = chain_map_data(kind, d, b, range.clone(), w)?;
    let slots = |bases: &[Option<crate::complexes::Basis<crate::graphs::CanonicalGraph>>], spec: &LadderSpec| {
        range
            .clone()
            .zip(bases)
            .map(|(v, x)| Slot {
                vertices: v,
                degree: spec.slice(v).degree(),
                dim: x.as_ref().map(|x| x.len()),
                keys: None,
            })
            .collect::<Vec<_>>()
    };
    let sa = LadderSpec::new(kind.source(), d, b, range.clone(), None);
    let sb = LadderSpec::new(kind.target(), d, b, range.clone(), if kind.is_weighted() { w } else { None });
    let la = Ladder::from_parts(&sa, slots(&data.source_bases, &sa), data.source_maps)?;
    let lb = Ladder::from_parts(&sb, slots(&data.target_bases, &sb), data.target_maps)?;
    cone_of_matrices(&la, &lb, &data.phi)?.report(seed, 3)
}
