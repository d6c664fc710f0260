use thiserror::Error;

use crate::annulus::Arc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("annulus needs at least one marked point on each boundary, got ({outer}, {inner})")]
    InvalidIndex { outer: i64, inner: i64 },

    #[error("peripheral span {span} outside [2, {count}]")]
    InvalidSpan { span: i64, count: i64 },

    #[error(
        "winding window too tight: a result reaches |w| = {frontier}; raise the winding bound"
    )]
    BoundTooTight { frontier: i64 },

    #[error("collection is not maximal: {0} can still be added")]
    NotMaximal(Arc),

    #[error("arcs {0} and {1} cross")]
    Crossing(Arc, Arc),

    #[error("arc {0} is not in the collection")]
    NotInCollection(Arc),

    #[error("flip of {arc} is not unique: {completions} completions found")]
    FlipNotUnique { arc: Arc, completions: usize },

    #[error("collection is not a triangulation by finite arcs")]
    NotFiniteTriangulation,

    #[error("path algebra has more than {cap} basis paths")]
    NotFiniteDimensional { cap: usize },

    #[error("arc {0} belongs to the triangulation")]
    ArcInTriangulation(Arc),

    #[error("illegal word: {0}")]
    IllegalWord(String),

    #[error("band parameter must be non-zero")]
    ZeroParameter,

    #[error("representations live over different quivers")]
    AlgebraMismatch,

    #[error("invalid tuple: {0}")]
    InvalidTuple(String),

    #[error("point {0} is not mutable")]
    ImmutablePoint(String),

    #[error("point {0} does not belong to the rigid set")]
    UnknownPoint(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
