use thiserror::Error;

/// Errors produced by the geometry, solver, atlas and deformation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid gon count {0}: need n >= 3")]
    InvalidGonCount(u32),

    #[error("base length {l} out of range for n = {n}: need 2 sin(pi/2n) = {lo} < l < 2 sin(pi/n) = {hi}")]
    BaseLengthOutOfRange { n: u32, l: f64, lo: f64, hi: f64 },

    #[error("{quantity} = {value} violates bound {bound}")]
    Domain {
        quantity: &'static str,
        value: f64,
        bound: &'static str,
    },

    #[error("point ({x}, {x_tilde}) lies outside the height domain: {reason}")]
    OutsideDomain { x: f64, x_tilde: f64, reason: &'static str },

    #[error("point ({x}, {x_tilde}) is within 1e-10 of an arcsin singularity")]
    NearSingularDomain { x: f64, x_tilde: f64 },

    #[error("configuration does not close: residual ({r1:e}, {r2:e})")]
    Closure { r1: f64, r2: f64 },

    #[error("non-finite function value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("solution counts agree at both ends ({count}): no transition to locate")]
    NoTransition { count: usize },

    #[error("curve trace failed near ({x}, {x_tilde}): {reason}")]
    Trace { x: f64, x_tilde: f64, reason: String },

    #[error("atlas incomplete: could not locate point {0}")]
    AtlasIncomplete(&'static str),

    #[error("expected three equifacial isomers, found {0}")]
    WrongRegime(usize),

    #[error("base length {l0} is not admissible for n = {n}: need (l_H + l_K)/2 = {lo} < l0 < l_M = {hi}")]
    NotAdmissible { n: u32, l0: f64, lo: f64, hi: f64 },

    #[error("measure undefined: {0}")]
    UndefinedMeasure(&'static str),

    #[error("internal cross-check failed: {0}")]
    Inconsistent(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
