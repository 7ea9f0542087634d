//! Error types shared across the crate.

use thiserror::Error;

/// Every failure mode of the library.
///
/// Certificate violations (integrality, parity, bound) are kept distinct from
/// operational failures so callers can tell "the math says this input is not a
/// consistent category" apart from "the file is malformed".
#[derive(Debug, Error)]
pub enum Error {
    #[error("S-matrix is not square: {rows} rows but row {row} has {cols} columns")]
    NonSquareInput { rows: usize, row: usize, cols: usize },

    #[error("rank mismatch: S-matrix has rank {s_rank} but `{field}` has length {len}")]
    RankMismatch {
        s_rank: usize,
        field: &'static str,
        len: usize,
    },

    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error("unknown builtin catalog entry `{name}` and no such file exists")]
    UnknownInput { name: String },

    #[error("invalid phase exponent {num}/{den}: {reason}")]
    InvalidPhase {
        num: i64,
        den: i64,
        reason: &'static str,
    },

    #[error("validation failed: {summary}")]
    Validation { summary: String },

    #[error("fusion axiom `{axiom}` violated: {detail}")]
    FusionAxiom { axiom: &'static str, detail: String },

    #[error(
        "Verlinde sum at N[{a}][{b}][{c}] = {value:.6} does not round to an integer \
         (residual {residual:.3e} exceeds eps_int)"
    )]
    NonIntegerFusion {
        a: String,
        b: String,
        c: String,
        value: f64,
        residual: f64,
    },

    #[error("Verlinde sum at N[{a}][{b}][{c}] rounds to the negative integer {value}")]
    NegativeFusion {
        a: String,
        b: String,
        c: String,
        value: i64,
    },

    #[error(
        "indicator certificate at (a={a}, c={c}): nu/sqrt(theta_c) = {re:.6}{im:+.6}i \
         does not round to an integer within eps_int"
    )]
    NonIntegerCertificate {
        a: String,
        c: String,
        re: f64,
        im: f64,
    },

    #[error(
        "indicator certificate at (a={a}, c={c}): |{m}| exceeds the fusion bound N^(a,a)_c = {bound}"
    )]
    BoundViolation {
        a: String,
        c: String,
        m: i64,
        bound: u64,
    },

    #[error(
        "indicator certificate at (a={a}, c={c}): {m} has the wrong parity \
         (N^(a,a)_c = {bound} requires the same parity)"
    )]
    ParityViolation {
        a: String,
        c: String,
        m: i64,
        bound: u64,
    },

    #[error("label {c} has no image in the center data (iota is too short)")]
    MissingIota { c: String },

    #[error("unknown label `{name}` (available: {available})")]
    UnknownLabel { name: String, available: String },

    #[error("supplied {what} disagrees with the computed value at {at}: residual {residual:.3e}")]
    CrossCheckMismatch {
        what: &'static str,
        at: String,
        residual: f64,
    },

    #[error("{0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the integrality / parity / bound certificates, as
    /// opposed to I/O, schema, or validation problems.
    pub fn is_certificate_violation(&self) -> bool {
        matches!(
            self,
            Error::NonIntegerFusion { .. }
                | Error::NegativeFusion { .. }
                | Error::NonIntegerCertificate { .. }
                | Error::BoundViolation { .. }
                | Error::ParityViolation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
