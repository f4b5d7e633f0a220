use thiserror::Error;

use crate::affine_perm::AffinePerm;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank must be at least 1, got {0}")]
    InvalidRank(usize),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("residue {residue} out of range 0..={k}")]
    ResidueOutOfRange { residue: usize, k: usize },

    #[error("invalid window {window:?}: {reason}")]
    InvalidWindow { window: Vec<i64>, reason: &'static str },

    #[error("t_{{{i},{j}}} is undefined: {i} and {j} are congruent mod {period}")]
    CongruentTransposition { i: i64, j: i64, period: usize },

    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),

    #[error("partition {parts:?} is not {k}-bounded")]
    NotBounded { parts: Vec<usize>, k: usize },

    #[error("{0:?} is not a partition (parts must be positive and weakly decreasing)")]
    InvalidPartition(Vec<usize>),

    #[error("{0:?} is not a composition (parts must be positive)")]
    InvalidComposition(Vec<usize>),

    #[error("{0} is not 0-Grassmannian")]
    NotGrassmannian(AffinePerm),

    #[error("residue set is the full set {{0..={0}}}")]
    FullResidueSet(usize),

    #[error("h_{i} is zero for k = {k}")]
    GeneratorOutOfRange { i: usize, k: usize },

    #[error("length bound {requested} exceeds the supported maximum {max}")]
    LengthBound { requested: usize, max: usize },

    #[error("matrix is not unitriangular at ({row}, {col})")]
    NotUnitriangular { row: usize, col: usize },

    #[error("sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("not symmetric: M{0:?} and M{1:?} have different coefficients")]
    NotSymmetric(Vec<usize>, Vec<usize>),

    #[error("basis mismatch: expected {expected}, got {got}")]
    BasisMismatch { expected: &'static str, got: &'static str },

    #[error("inconsistent system: {0}")]
    Inconsistent(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("ascent composition of an empty sequence")]
    EmptySequence,

    #[error("parse error: {0}")]
    Parse(String),
}
