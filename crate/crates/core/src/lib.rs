//! Exact computation of the `S_m × S_n`-equivariant Poincaré polynomials of
//! the moduli spaces of weighted pointed stable rational curves `M_{0,m|n}`
//! (smooth curves) and their compactifications.
//!
//! The pipeline runs entirely in exact rational arithmetic:
//!
//! 1. [`genus0`] expands the generating function for `H*(M_{0,n})`.
//! 2. [`interior`] assembles the characters of `H*(M_{0,m|n})`.
//! 3. [`legendre`] applies the partial Legendre transform, built on the
//!    variant plethysm of [`plethysm`], to obtain the compactified spaces.
//! 4. [`trees`] enumerates stable dual trees and provides independent
//!    checks of the results.

pub mod error;
pub mod genus0;
pub mod interior;
pub mod legendre;
pub mod partition;
pub mod plethysm;
pub mod schema;
pub mod symfunc;
pub mod tpoly;
pub mod trees;

pub use error::Error;
pub use partition::{part, Partition};
pub use symfunc::{BiSymFunc, Factor, SymFunc, Truncation};
pub use tpoly::TPoly;
