//! Command-line plumbing for the `mzero` binary: computation with a result
//! cache, text/JSON/LaTeX rendering, and the verification suite.

pub mod cache;
pub mod compute;
pub mod render;
pub mod verify;
