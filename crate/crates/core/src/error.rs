use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("code distance must be an odd integer >= 3, got {0}")]
    InvalidDistance(usize),

    #[error("number of measurement rounds must be >= 1, got {0}")]
    InvalidRounds(usize),

    #[error("probability {value} is outside {range} ({what})")]
    InvalidProbability {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("maximum edge weight must be >= 2, got {0}")]
    InvalidMaxWeight(u32),

    #[error("expected {expected} {what}, got {actual}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("cannot split {rounds} rounds into {n} sub-graphs")]
    InvalidPartition { rounds: usize, n: usize },

    #[error("partition was built for a different decoding graph")]
    PartitionMismatch,

    #[error("cluster rooted at vertex {0} is odd and does not touch the boundary")]
    OddCluster(u32),

    #[error("correction does not annihilate the syndrome")]
    NotAnnihilated,

    #[error("trial {trial}: {source}")]
    Trial {
        trial: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("trial {trial} took {cycles} cycles, above the bound of {bound}")]
    CycleBoundExceeded { trial: u64, cycles: u64, bound: u64 },

    #[error("decoder did not terminate within {0} cycles")]
    CycleLimit(u64),

    #[error("stream of {rounds} rounds is not a multiple of d = {d} with at least two windows")]
    InvalidStream { rounds: usize, d: usize },

    #[error("nothing to summarize")]
    EmptyInput,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("bad syndrome file: {0}")]
    Format(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_trial(self, trial: u64) -> Self {
        Error::Trial {
            trial,
            source: Box::new(self),
        }
    }
}

pub(crate) fn check_probability(what: &'static str, value: f64) -> Result<()> {
    if (0.0..1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidProbability {
            what,
            value,
            range: "[0, 1)",
        })
    }
}
