//! Exact computations in the exterior algebra on two sets of anticommuting
//! variables `θ_1..θ_n`, `ξ_1..ξ_n`, the Casimir element
//! `δ_n = θ_1ξ_1 + ... + θ_nξ_n`, and the fermionic diagonal coinvariant
//! rings obtained by quotienting out invariants.
//!
//! Everything is exact: coefficients are arbitrary precision rationals and
//! ranks are computed by fraction-free elimination. The crate verifies
//! Lefschetz bijectivity of powers of `δ_n`, bigraded dimension formulas,
//! lattice-path standard monomial bases and hook multiplicities of the
//! symmetric group action.
//!
//! Data-parallel sweeps (per bidegree, per row of an elimination) go through
//! [`exec::Strategy`]; with the `parallel` feature disabled every strategy
//! runs sequentially.

pub mod characters;
pub mod cli;
pub mod coinvariants;
pub mod combin;
pub mod error;
pub mod exec;
pub mod exterior;
pub mod lefschetz;
pub mod linalg;
pub mod paths;
pub mod qt;

pub use error::{Error, Result};
pub use exterior::{Bidegree, Element, Monomial};
pub use linalg::ExactMatrix;
pub use paths::{Path, Step};
pub use qt::QTPolynomial;
