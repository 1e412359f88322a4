//! Component computations, optionally through the cache and in parallel.

use mzero_core::error::check_weight_data;
use mzero_core::interior::{component_truncation, interior_characteristic, InteriorFormula};
use mzero_core::legendre::compactified_component;
use mzero_core::{BiSymFunc, Error};
use rayon::prelude::*;

use crate::cache::{Cache, Lookup};

/// Largest `m + n` accepted by the compute commands.
pub const MAX_WEIGHT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Interior(InteriorFormula),
    Compactified,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::Interior(InteriorFormula::Printed) => "interior-printed",
            Kind::Interior(InteriorFormula::Geometric) => "interior-geometric",
            Kind::Compactified => "compactified",
        }
    }
}

pub fn check_request(m: usize, n: usize) -> Result<(), Error> {
    check_weight_data(m, n)?;
    if m + n > MAX_WEIGHT {
        return Err(Error::Range(format!("m+n ≤ {MAX_WEIGHT} required, got {}", m + n)));
    }
    Ok(())
}

pub fn compute(kind: Kind, m: usize, n: usize) -> Result<BiSymFunc, Error> {
    check_request(m, n)?;
    match kind {
        Kind::Interior(formula) => interior_characteristic(m, n, formula),
        Kind::Compactified => compactified_component(m, n),
    }
}

/// Reads through the cache; stale entries are reported on stderr and
/// recomputed.
pub fn compute_cached(kind: Kind, m: usize, n: usize, cache: Option<&Cache>) -> Result<BiSymFunc, Error> {
    let Some(cache) = cache else {
        return compute(kind, m, n);
    };
    check_request(m, n)?;
    match cache.get(kind.tag(), m, n, component_truncation(m, n)) {
        Lookup::Hit(f) => return Ok(f),
        Lookup::Miss => {}
        Lookup::Stale(reason) => eprintln!("warning: ignoring cache entry {reason}"),
    }
    let f = compute(kind, m, n)?;
    if let Err(e) = cache.put(kind.tag(), m, n, &f) {
        eprintln!("warning: could not write cache entry in {}: {e}", cache.dir().display());
    }
    Ok(f)
}

pub type Components = Vec<((usize, usize), BiSymFunc)>;

/// Every admissible `(m, n)` with `m + n ≤ max_weight`.
pub fn pairs_up_to(max_weight: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for d in 3..=max_weight {
        for m in (2..=d).rev() {
            out.push((m, d - m));
        }
    }
    out
}

/// Computes several components on a pool of `jobs` threads (0 = default);
/// the output follows the input order.
pub fn batch(
    kind: Kind,
    pairs: &[(usize, usize)],
    jobs: usize,
    cache: Option<&Cache>,
) -> Result<Components, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Range(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        pairs
            .par_iter()
            .map(|&(m, n)| compute_cached(kind, m, n, cache).map(|f| ((m, n), f)))
            .collect()
    })
}
