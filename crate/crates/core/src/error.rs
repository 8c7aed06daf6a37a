use thiserror::Error;

use crate::interval::Interval;
use crate::set::IntervalSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which of the three invariant-set conditions failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantFailure {
    /// The first image of `U` is not contained in `W`.
    FirstImageEscapes,
    /// Some scheduled map sends `W` outside itself. The index counts the
    /// preamble first, then the cycle.
    NotForwardInvariant { map_index: usize },
    /// `W` meets the target set `V`.
    MeetsTarget,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed interval: {0}")]
    MalformedInterval(String),

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("cannot parse interval {input:?}: {reason}")]
    ParseInterval { input: String, reason: String },

    #[error("pieces leave part of the domain uncovered: {missing}")]
    PieceGap { missing: IntervalSet },

    #[error("pieces {first} and {second} overlap on {overlap}")]
    PieceOverlap {
        first: usize,
        second: usize,
        overlap: IntervalSet,
    },

    #[error("piece {piece} on {on} has image {image}, which escapes the domain {domain}")]
    NotSelfMap {
        piece: usize,
        on: Interval,
        image: Interval,
        domain: Interval,
    },

    #[error("map domain must be a closed nondegenerate interval, got {0}")]
    BadDomain(Interval),

    #[error("schedule maps disagree on the domain: {expected} vs {found}")]
    DomainMismatch { expected: Interval, found: Interval },

    #[error("schedule cycle must contain at least one map")]
    EmptyCycle,

    #[error("{what} lies outside the domain {domain}")]
    OutOfDomain { what: String, domain: Interval },

    /// `step` counts single-map images or preimages applied, the failing
    /// one included.
    #[error("part budget exceeded at step {step}: {parts} parts > {max_parts}")]
    BudgetExceeded {
        step: usize,
        parts: usize,
        max_parts: usize,
    },

    #[error("part budget must be at least 1")]
    ZeroBudget,

    #[error("unknown example {0:?}")]
    UnknownExample(String),

    #[error("requested {requested} terms but the series has horizon {horizon}")]
    HorizonExceeded { requested: usize, horizon: usize },

    #[error("grid width {grid} does not evenly divide the domain length {length}")]
    GridMismatch { grid: String, length: String },

    #[error("scale {scale} does not evenly divide the domain length {length}")]
    ScaleMismatch { scale: String, length: String },

    #[error("the two points coincide; no separation constant exists")]
    DegeneratePair,

    #[error("invariant-set check failed ({condition:?}); offending set {offending}")]
    NotInvariant {
        condition: InvariantFailure,
        offending: IntervalSet,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A system description could not be loaded. `location` is a JSON
    /// field path such as `cycle[0].pieces[1].slope`, or a line and column
    /// for syntax errors.
    #[error("{path}: {location}: {message}")]
    SystemFile {
        path: String,
        location: String,
        message: String,
        #[source]
        source: Option<Box<Error>>,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}
