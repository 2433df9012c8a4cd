use std::path::Path;

use clap::ValueEnum;
use gcx_core::complexes::{basis, ComplexId, GradedSlice};
use gcx_core::differentials::{bracket, delta_directed, edge, jacobi, reconciling_sign, rescaling_class, ChainVector};
use gcx_core::graphs::{canonicalize, Multigraph, Parity};
use gcx_core::homology::{
    is_nontrivial_cocycle, ses_consistency, verify_chain_map, verify_d_squared, ChainMapKind, Coboundary, LadderSpec,
};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    D2,
    Chainmaps,
    Mc,
    Bracket,
    Ses,
    Cocycles,
}

pub struct Bounds {
    pub parities: Vec<i32>,
    pub b: usize,
    pub v: usize,
    pub w: u32,
}

impl Bounds {
    pub fn new(d: Option<Vec<i32>>, b: Option<usize>, v: Option<usize>, w: Option<u32>) -> Self {
        Self {
            parities: d.unwrap_or_else(|| vec![2, 3]),
            b: b.unwrap_or(2),
            v: v.unwrap_or(4),
            w: w.unwrap_or(4),
        }
    }
}

/// Outcome of one suite: lines to print, and the failure dump if any.
struct Outcome {
    lines: Vec<String>,
    failure: Option<Value>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            lines: Vec::new(),
            failure: None,
        }
    }

    fn fail(mut self, what: String, dump: Value) -> Self {
        self.lines.push(format!("FAIL {what}"));
        self.failure = Some(json!({ "case": what, "detail": dump }));
        self
    }
}

fn d2(bounds: &Bounds) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    let mut specs = Vec::new();
    for &d in &bounds.parities {
        for c in [ComplexId::dfcGC_ge2, ComplexId::dcGC, ComplexId::dcGC_eq, ComplexId::GC_ge2] {
            for b in 0..=bounds.b {
                specs.push(LadderSpec::new(c, d, b, 1..=bounds.v, None));
            }
        }
        for b in 0..=bounds.b {
            specs.push(LadderSpec::new(ComplexId::dwGC_star, d, b, 1..=bounds.v, Some(bounds.w)));
        }
    }
    specs.push(LadderSpec::aux(bounds.w));
    for spec in &specs {
        let r = verify_d_squared(spec)?;
        let name = format!("{} d={} b={} W={:?}", spec.complex, spec.d, spec.b, spec.w);
        if !r.ok {
            return Ok(out.fail(name, serde_json::to_value(&r)?));
        }
        out.lines.push(format!("ok {name}: {} pairs", r.pairs_checked));
    }
    Ok(out)
}

fn chainmaps(bounds: &Bounds) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    for &d in &bounds.parities {
        for b in 0..=bounds.b {
            for kind in ChainMapKind::ALL {
                let w = kind.is_weighted().then_some(bounds.w);
                let r = verify_chain_map(kind, d, b, 1..=bounds.v, w, gcx_core::linalg::DEFAULT_SEED)?;
                let name = format!("{kind:?} d={d} b={b} W={w:?}");
                let injective_needed = matches!(kind, ChainMapKind::FWheeled | ChainMapKind::FWheeledFromDcgc);
                if !r.ok || (injective_needed && r.injective != Some(true)) {
                    return Ok(out.fail(name, serde_json::to_value(&r)?));
                }
                out.lines.push(format!("ok {name}: {} squares", r.pairs_checked));
            }
        }
    }
    Ok(out)
}

fn mc(bounds: &Bounds) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    for &d in &bounds.parities {
        let e = ChainVector::basis_vector(edge(d));
        let ee = bracket(&e, &e);
        if !ee.is_zero() {
            let terms: Vec<Value> = ee.iter().map(|(g, c)| json!([g.to_string(), c])).collect();
            return Ok(out.fail(format!("[e,e] d={d}"), Value::Array(terms)));
        }
        out.lines.push(format!("ok [e,e] = 0 at d={d}"));
    }
    Ok(out)
}

fn bracket_suite(bounds: &Bounds) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    for &d in &bounds.parities {
        let e = ChainVector::basis_vector(edge(d));
        let mut classes = Vec::new();
        for b in 0..=bounds.b {
            for v in 1..=bounds.v {
                classes.extend(basis(&GradedSlice::new(ComplexId::dfcGC, d, b, v, None))?.classes().iter().cloned());
            }
        }
        for g in &classes {
            let lhs = delta_directed(g)?;
            let rhs = bracket(&e, &ChainVector::basis_vector(g.clone())).scaled(reconciling_sign(d, g.degree()));
            if lhs != rhs {
                let show = |x: &ChainVector<_>| x.iter().map(|(k, c): (&gcx_core::graphs::CanonicalGraph, i64)| json!([k.to_string(), c])).collect::<Vec<_>>();
                return Ok(out.fail(format!("delta vs bracket at {g}"), json!({ "delta": show(&lhs), "bracket": show(&rhs) })));
            }
        }
        let small: Vec<_> = classes.iter().filter(|g| g.vertex_count() <= 3).collect();
        let mut triples = 0;
        for (i, a) in small.iter().enumerate().take(6) {
            for b in small.iter().skip(i).take(3) {
                for c in small.iter().take(2) {
                    if !jacobi(a, b, c).is_zero() {
                        return Ok(out.fail(format!("Jacobi on {a}, {b}, {c}"), Value::Null));
                    }
                    triples += 1;
                }
            }
        }
        out.lines.push(format!("ok d={d}: delta = bracket on {} classes, Jacobi on {triples} triples", classes.len()));
    }
    Ok(out)
}

fn ses(bounds: &Bounds, seed: u64) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    for &d in &bounds.parities {
        for b in 0..=bounds.b {
            let r = ses_consistency(d, b, 1..=bounds.v, seed)?;
            let name = format!("ses d={d} b={b}");
            if !(r.basis_additive && r.euler_additive && r.les_ok) {
                return Ok(out.fail(name, serde_json::to_value(&r)?));
            }
            out.lines.push(format!("ok {name}{}", if r.partial { " (partial)" } else { "" }));
        }
    }
    Ok(out)
}

fn cocycles(bounds: &Bounds, seed: u64) -> Result<Outcome, CliError> {
    let mut out = Outcome::new();
    let k4 = Multigraph::undirected(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let (class, _) = canonicalize(&k4, Parity(2), None)?;
    let slice = GradedSlice::new(ComplexId::GC, 2, 3, 4, None);
    let rep = is_nontrivial_cocycle(&ChainVector::basis_vector(class.graph), &slice, seed)?;
    if !(rep.closed && rep.coboundary == Coboundary::No) {
        return Ok(out.fail("tetrahedron".into(), serde_json::to_value(&rep)?));
    }
    out.lines.push("ok tetrahedron: closed, not a coboundary".into());
    for w in 2..=bounds.w.max(2) {
        let r = rescaling_class(2, w);
        let slice = GradedSlice::new(ComplexId::dwGC, 2, 0, 1, Some(w));
        let rep = is_nontrivial_cocycle(&r, &slice, seed)?;
        if !(rep.closed && rep.coboundary == Coboundary::No) {
            return Ok(out.fail(format!("rescaling W={w}"), serde_json::to_value(&rep)?));
        }
        out.lines.push(format!("ok rescaling W={w}: closed, not a coboundary"));
    }
    Ok(out)
}

/// Runs one suite, prints a line per case and writes `dump` on failure.
pub fn run(suite: Suite, bounds: &Bounds, seed: u64, dump: &Path) -> Result<u8, CliError> {
    let out = match suite {
        Suite::D2 => d2(bounds)?,
        Suite::Chainmaps => chainmaps(bounds)?,
        Suite::Mc => mc(bounds)?,
        Suite::Bracket => bracket_suite(bounds)?,
        Suite::Ses => ses(bounds, seed)?,
        Suite::Cocycles => cocycles(bounds, seed)?,
    };
    for line in &out.lines {
        println!("{line}");
    }
    match out.failure {
        Some(f) => {
            std::fs::write(dump, serde_json::to_string_pretty(&f)?)?;
            eprintln!("dump written to {}", dump.display());
            Ok(1)
        }
        None => {
            println!("suite {suite:?}: pass");
            Ok(0)
        }
    }
}
