use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({source_vertex}, {target_vertex}) references a vertex outside 0..{vertex_count}")]
    EdgeOutOfRange {
        source_vertex: usize,
        target_vertex: usize,
        vertex_count: usize,
    },

    #[error("weight vector has {got} entries for {expected} vertices")]
    WeightLength { expected: usize, got: usize },

    #[error("vertex {vertex} has weight {weight}, below the admissible minimum {minimum}")]
    WeightCondition {
        vertex: usize,
        weight: u32,
        minimum: u32,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("slice too large: stopped after {partial} classes")]
    SliceTooLarge { partial: usize },

    #[error("weighted complex `{0}` needs a weight cap")]
    MissingWeightCap(String),

    #[error("weight cap {cap} is below the input total weight {total}")]
    WeightCapTooSmall { cap: u32, total: u32 },

    #[error("operator produced `{key}`, which is not in the target basis")]
    MissingKey { key: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unknown complex `{0}`")]
    UnknownComplex(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
