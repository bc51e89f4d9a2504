use std::path::PathBuf;

use crate::index_domain::IndexTriple;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("missing sample at (r,s,t) = {0}")]
    MissingSample(IndexTriple),

    #[error("missing coefficient at (k,l,m) = {0}")]
    MissingCoefficient(IndexTriple),

    #[error("unexpected key {0}: not in the index domain of this grid")]
    UnexpectedKey(IndexTriple),

    #[error("grid density N = {0} is even; interpolation requires N = 2M+1")]
    UnsupportedParity(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("group closure produced {0} elements, expected 8")]
    GroupClosure(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: u64, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
