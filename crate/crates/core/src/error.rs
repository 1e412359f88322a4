use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<u32>),
    #[error("degree {degree} exceeds the truncation bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("series power needs a base with constant term 1")]
    BadConstantTerm,
    #[error("plethysm needs an inner series without constant term")]
    InnerConstantTerm,
    #[error("plethystic inverse needs c·p1 + (terms of total degree >= 2), c a nonzero rational: {0}")]
    NotInvertible(String),
    #[error("fixed-point iteration did not converge after {0} passes")]
    NoConvergence(usize),
    #[error("outside the Legendre domain: {0}")]
    LegendreDomain(String),
    #[error("Legendre defining equation has a nonzero residual in {0} terms")]
    LegendreResidual(usize),
    #[error("{0}")]
    Range(String),
    #[error("weight substitution produced a negative t-exponent at ({m},{n})")]
    InvalidWeight { m: usize, n: usize },
    #[error("t-window too narrow: degree-{degree} component has t^{exponent}")]
    Vanishing { degree: usize, exponent: i32 },
    #[error("component ({m},{n}) failed invariant: {reason}")]
    Invariant { m: usize, n: usize, reason: String },
    #[error("missing component ({0},{1}) of the vertex module")]
    MissingComponent(usize, usize),
    #[error("schema error: {0}")]
    Schema(String),
}

/// Validates the `A(m,n)` weight data constraints `m >= 2`, `m + n >= 3`.
pub fn check_weight_data(m: usize, n: usize) -> Result<(), Error> {
    if m < 2 {
        return Err(Error::Range(
            "m ≥ 2 required: at least two points must be distinct (weight 1)".into(),
        ));
    }
    if m + n < 3 {
        return Err(Error::Range(
            "m+n ≥ 3 required: a stable rational curve needs three special points".into(),
        ));
    }
    Ok(())
}
