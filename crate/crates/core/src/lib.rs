//! Reconstruction of the braiding R-symbols of a (pre)modular tensor category
//! from its modular data.
//!
//! Given an S-matrix and exact twist phases, the crate computes fusion
//! coefficients via the Verlinde formula, second generalized Frobenius-Schur
//! indicators, the eigenvalue multiplicities `d+-` of each self-braiding
//! block, and assembles the full R-symbol table in the canonical diagonal
//! gauge; every integrality, parity, and bound certificate is enforced along
//! the way. Degenerate (premodular) inputs take the same path once fusion
//! rules and indicators are supplied directly or derived from center data.
//!
//! Numeric engines are generic over the floating-point scalar (see
//! [`scalar::Real`]); everything that is exact in principle — twists, square
//! root branches, diagonal R-entries, multiplicities — is kept exact as
//! rational phases ([`phase::ExactPhase`]).

pub mod catalog;
pub mod error;
pub mod fusion;
pub mod indicator;
pub mod model;
pub mod phase;
pub mod report;
pub mod rsymbol;
pub mod scalar;

pub use error::{Error, Result};
pub use phase::ExactPhase;
pub use scalar::{Real, Tolerance};

/// Concrete `f64` aliases for the common case.
pub type ModularData = model::ModularData<f64>;
pub type PremodularData = model::PremodularData<f64>;
pub type CenterData = model::CenterData<f64>;
pub type IndicatorTable = indicator::IndicatorTable<f64>;
pub type CatalogEntry = catalog::CatalogEntry<f64>;
pub type YEntry = rsymbol::YEntry<f64>;
pub type Tolerance64 = scalar::Tolerance<f64>;
