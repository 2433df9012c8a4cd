//! `gcx`: enumerate slices of graph complexes, compute cohomology tables,
//! run verification suites and export differentials.

mod cache;
mod suites;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gcx_core::complexes::ComplexId;
use gcx_core::graphs::{enumerate, Constraints, Parity, SliceSpec};
use gcx_core::homology::{basis_keys, matrix_from_keys, Ladder, LadderSpec, Slot};
use gcx_core::linalg::{to_matrix_market_string, SparseIntMatrix, DEFAULT_PRIME_COUNT, DEFAULT_SEED};
use thiserror::Error;

use cache::{sha256_hex, Cache, ENV_VAR};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] gcx_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use gcx_core::Error as E;
        match self {
            Self::Invalid(_) => 2,
            Self::Core(E::UnknownComplex(_) | E::MissingWeightCap(_) | E::Parse(_) | E::WeightCapTooSmall { .. }) => 2,
            Self::Core(E::SliceTooLarge { .. }) => 3,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "gcx", version, about = "Graph complexes: slices, differentials, cohomology")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print elapsed time and cache statistics to stderr.
    #[arg(long, global = true)]
    timing: bool,
    /// Cache root; overrides the environment variable.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the basis of one or more slices.
    Enumerate {
        #[command(flatten)]
        slice: SliceArgs,
        /// Extra constraints, comma separated: connected, min_valency=K,
        /// no_tadpoles, no_passing, balanced, unbalanced, acyclic, has_bivalent.
        #[arg(long)]
        constraints: Option<String>,
        /// Print only the counts.
        #[arg(long)]
        count_only: bool,
    },
    /// Cohomology table over a vertex range, as JSON.
    Cohomology {
        #[command(flatten)]
        slice: SliceArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME_COUNT)]
        primes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: suites::Suite,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        d: Option<Vec<i32>>,
        /// Largest loop order.
        #[arg(long)]
        b: Option<usize>,
        /// Largest vertex count.
        #[arg(long = "V")]
        v: Option<usize>,
        /// Largest weight cap, or total weight for the string complex.
        #[arg(long = "W")]
        w: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Where to write the failure dump.
        #[arg(long, default_value = "gcx-verify-dump.json")]
        dump: PathBuf,
    },
    /// Write the differential of each slice as a MatrixMarket file.
    Export {
        #[command(flatten)]
        slice: SliceArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Args, Clone)]
struct SliceArgs {
    #[arg(long, value_parser = parse_complex)]
    complex: ComplexId,
    #[arg(long, default_value_t = 2)]
    d: i32,
    /// Loop order.
    #[arg(long, default_value_t = 1)]
    b: usize,
    /// Vertex count or inclusive range `lo..hi`.
    #[arg(long = "V", value_parser = parse_range)]
    v: Option<RangeInclusive<usize>>,
    /// Weight cap for weighted complexes.
    #[arg(long = "W")]
    big_w: Option<u32>,
    /// Total weight for the string complex.
    #[arg(long = "w")]
    small_w: Option<u32>,
    /// Stop enumerating a slice beyond this many classes.
    #[arg(long)]
    limit: Option<usize>,
}

fn parse_complex(s: &str) -> Result<ComplexId, String> {
    s.parse().map_err(|e: gcx_core::Error| e.to_string())
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad vertex count `{x}`"));
    if let Some((a, b)) = s.split_once("..") {
        let (lo, hi) = (num(a)?, num(b.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(lo..=hi)
    } else {
        let v = num(s)?;
        Ok(v..=v)
    }
}

impl SliceArgs {
    fn weight(&self) -> Option<u32> {
        if self.complex.is_aux() {
            self.small_w.or(self.big_w)
        } else {
            self.big_w
        }
    }

    fn spec(&self) -> Result<LadderSpec, CliError> {
        let w = self.weight();
        if (self.complex.is_weighted() || self.complex.is_aux()) && w.is_none() {
            return Err(CliError::Invalid(format!(
                "complex {} needs {}",
                self.complex,
                if self.complex.is_aux() { "--w" } else { "--W" }
            )));
        }
        let vertices = match &self.v {
            Some(r) => r.clone(),
            None => match self.complex.max_vertices(self.b, w) {
                Some(m) if m >= 1 => 1..=m,
                _ => return Err(CliError::Invalid("this complex needs --V".into())),
            },
        };
        if *vertices.start() == 0 {
            return Err(CliError::Invalid("vertex counts start at 1".into()));
        }
        let d = if self.complex.is_aux() { 0 } else { self.d };
        let b = if self.complex.is_aux() { 0 } else { self.b };
        let mut spec = LadderSpec::new(self.complex, d, b, vertices, w);
        spec.limit = self.limit;
        Ok(spec)
    }
}

fn parse_constraints(base: Constraints, text: &str) -> Result<Constraints, CliError> {
    let mut c = base;
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item.split_once('=').map_or((item, None), |(a, b)| (a, Some(b)));
        let flag = || value.map_or(Ok(true), |v| v.parse::<bool>().map_err(|_| CliError::Invalid(format!("bad value in `{item}`"))));
        match name {
            "connected" => c.connected = flag()?,
            "no_tadpoles" => c.no_tadpoles = flag()?,
            "no_passing" => c.no_passing = flag()?,
            "balanced" => c.balanced = flag()?,
            "unbalanced" => c.unbalanced = flag()?,
            "acyclic" => c.acyclic = flag()?,
            "has_bivalent" => c.has_bivalent = flag()?,
            "min_valency" => {
                c.min_valency = value
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| CliError::Invalid(format!("min_valency needs a number in `{item}`")))?
            }
            _ => return Err(CliError::Invalid(format!("unknown constraint `{name}`"))),
        }
    }
    Ok(c)
}

struct Context {
    cache: Option<Cache>,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self, CliError> {
        if cli.no_cache {
            return Ok(Self { cache: None });
        }
        let root = cli
            .cache
            .clone()
            .or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(".gcx-cache"));
        Ok(Self {
            cache: Some(Cache::open(&root)?),
        })
    }

    /// Keys of a slice, `None` for a slice beyond the limit.
    fn keys(&mut self, spec: &LadderSpec, v: usize) -> Result<Option<Vec<String>>, CliError> {
        let slice = spec.slice(v);
        if spec.limit.is_none() {
            if let Some(k) = self.cache.as_mut().and_then(|c| c.basis(&slice)) {
                return Ok(Some(k));
            }
        }
        match basis_keys(spec, v) {
            Ok(k) => {
                if let Some(c) = self.cache.as_mut() {
                    c.store_basis(&slice, &k)?;
                }
                Ok(Some(k))
            }
            Err(gcx_core::Error::SliceTooLarge { .. }) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    fn matrix(&mut self, spec: &LadderSpec, v: usize, src: &[String], dst: &[String]) -> Result<SparseIntMatrix, CliError> {
        let slice = spec.slice(v);
        if let Some(m) = self.cache.as_mut().and_then(|c| c.matrix(&slice)) {
            if m.cols() == src.len() && m.rows() == dst.len() {
                return Ok(m);
            }
        }
        let m = matrix_from_keys(spec, v, src, dst)?;
        if let Some(c) = self.cache.as_mut() {
            c.store_matrix(&slice, &m)?;
        }
        Ok(m)
    }

    fn ladder(&mut self, spec: &LadderSpec) -> Result<Ladder, CliError> {
        let vs: Vec<usize> = spec.vertices.clone().collect();
        let keys = vs.iter().map(|&v| self.keys(spec, v)).collect::<Result<Vec<_>, _>>()?;
        let mut maps = Vec::new();
        for (k, pair) in keys.windows(2).enumerate() {
            maps.push(match (&pair[0], &pair[1]) {
                (Some(a), Some(b)) => Some(self.matrix(spec, vs[k], a, b)?),
                _ => None,
            });
        }
        let slots = vs
            .iter()
            .zip(keys)
            .map(|(&v, k)| Slot {
                vertices: v,
                degree: spec.slice(v).degree(),
                dim: k.as_ref().map(Vec::len),
                keys: k,
            })
            .collect();
        Ok(Ladder::from_parts(spec, slots, maps)?)
    }

    fn finish(&mut self, timing: bool, started: Instant) -> Result<(), CliError> {
        if let Some(c) = self.cache.as_mut() {
            c.save()?;
            if timing {
                eprintln!("cache: {} hits, {} misses", c.hits, c.misses);
            }
        }
        if timing {
            eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
        }
        Ok(())
    }
}

fn cmd_enumerate(ctx: &mut Context, slice: &SliceArgs, constraints: Option<&str>, count_only: bool) -> Result<u8, CliError> {
    let spec = slice.spec()?;
    let mut total = 0;
    let mut partial = false;
    for v in spec.vertices.clone() {
        let keys = match constraints {
            Some(text) if !spec.complex.is_aux() => {
                let s = spec.slice(v);
                let c = parse_constraints(spec.complex.constraints(spec.w)?, text)?;
                let Some(edge_count) = s.edge_count() else {
                    println!("# {} d={} b={} V={v}: 0", spec.complex, spec.d, spec.b);
                    continue;
                };
                match enumerate(&SliceSpec {
                    vertex_count: v,
                    edge_count,
                    parity: Parity(spec.d),
                    constraints: c,
                    limit: spec.limit,
                }) {
                    Ok(k) => Some(k.iter().map(|g| g.to_string()).collect::<Vec<_>>()),
                    Err(gcx_core::Error::SliceTooLarge { .. }) => None,
                    Err(e) => return Err(e.into()),
                }
            }
            _ => ctx.keys(&spec, v)?,
        };
        let header = match spec.w {
            Some(w) if spec.complex.is_aux() => format!("# {} w={w} V={v}", spec.complex),
            Some(w) => format!("# {} d={} b={} V={v} W={w}", spec.complex, spec.d, spec.b),
            None => format!("# {} d={} b={} V={v}", spec.complex, spec.d, spec.b),
        };
        match keys {
            Some(keys) => {
                println!("{header}: {}", keys.len());
                total += keys.len();
                if !count_only {
                    for k in &keys {
                        println!("{k}");
                    }
                }
            }
            None => {
                partial = true;
                println!("{header}: over limit");
            }
        }
    }
    println!("count: {total}");
    Ok(if partial { 3 } else { 0 })
}

fn cmd_cohomology(ctx: &mut Context, slice: &SliceArgs, seed: u64, primes: usize, out: Option<&PathBuf>) -> Result<u8, CliError> {
    let spec = slice.spec()?;
    let report = ctx.ladder(&spec)?.report(seed, primes)?;
    let json = report.to_json();
    match out {
        Some(path) => std::fs::write(path, format!("{json}\n"))?,
        None => println!("{json}"),
    }
    Ok(if report.flags.partial { 3 } else { 0 })
}

fn cmd_export(ctx: &mut Context, slice: &SliceArgs, out: &PathBuf) -> Result<u8, CliError> {
    let spec = slice.spec()?;
    std::fs::create_dir_all(out)?;
    let ladder = ctx.ladder(&spec)?;
    let mut vs: Vec<usize> = spec.vertices.clone().collect();
    // the last slice exports its outgoing map as well
    let last = *spec.vertices.end();
    let tail = if spec.complex.max_vertices(spec.b, spec.w).is_some_and(|m| last >= m) {
        None
    } else {
        let from = ctx.keys(&spec, last)?;
        let to = ctx.keys(&spec, last + 1)?;
        match (from, to) {
            (Some(a), Some(b)) => Some(ctx.matrix(&spec, last, &a, &b)?),
            _ => None,
        }
    };
    let mut maps: Vec<Option<SparseIntMatrix>> = ladder.maps.clone();
    maps.push(tail.or_else(|| {
        let dim = ladder.slots.last().and_then(|s| s.dim)?;
        Some(SparseIntMatrix::zeros(0, dim))
    }));
    let mut partial = false;
    for (v, m) in vs.drain(..).zip(maps) {
        let Some(m) = m else {
            partial = true;
            continue;
        };
        let mut name = format!("{}_d{}_b{}_V{v}", spec.complex, spec.d, spec.b);
        if let Some(w) = spec.w {
            name.push_str(&format!("_W{w}"));
        }
        let path = out.join(format!("{name}.mtx"));
        let text = to_matrix_market_string(&m);
        std::fs::write(&path, &text)?;
        println!("{}  {} ({}x{}, {} nonzeros)", sha256_hex(text.as_bytes()), path.display(), m.rows(), m.cols(), m.nnz());
    }
    Ok(if partial { 3 } else { 0 })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| CliError::Invalid(e.to_string()))?;
    }
    let started = Instant::now();
    let mut ctx = Context::new(&cli)?;
    let code = match &cli.command {
        Command::Enumerate {
            slice,
            constraints,
            count_only,
        } => cmd_enumerate(&mut ctx, slice, constraints.as_deref(), *count_only)?,
        Command::Cohomology { slice, seed, primes, out } => cmd_cohomology(&mut ctx, slice, *seed, *primes, out.as_ref())?,
        Command::Verify {
            suite,
            d,
            b,
            v,
            w,
            seed,
            dump,
        } => {
            let bounds = suites::Bounds::new(d.clone(), *b, *v, *w);
            suites::run(*suite, &bounds, *seed, dump)?
        }
        Command::Export { slice, out } => cmd_export(&mut ctx, slice, out)?,
    };
    ctx.finish(cli.timing, started)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gcx: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
