//! Characters of `H*(M_{0,n})` from Getzler's product formula
//!
//! ```text
//! ch_t(M) = κ( (1 + t p_1)/(1 − t²) · ∏_{n≥1} (1 + t^n p_n)^{R_n(t)} ),
//! R_n(t)  = (1/n) Σ_{d | n} μ(n/d) t^{−d},
//! ```
//!
//! where `κ` kills the components of degree 0, 1 and 2.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::partition::{mobius, Partition};
use crate::symfunc::{series_pow, BiSymFunc, Factor, SymFunc, Truncation};
use crate::tpoly::{rat, TPoly};

/// `R_n(t) = (1/n) Σ_{d | n} μ(n/d) / t^d`.
pub fn r_exponent(n: u32) -> TPoly {
    assert!(n >= 1);
    TPoly::from_pairs(
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .map(|d| (-(d as i32), rat(mobius((n / d) as u64), n as i64))),
    )
}

/// Zeroes the components of total degree 0, 1 and 2.
pub fn kappa(f: &SymFunc) -> SymFunc {
    f.filter(|a, b| a.size() + b.size() > 2)
}

/// The components `𝔪_n = ch_t(H*(M_{0,n}))` for `n ≤ bound`.
#[derive(Clone, Debug)]
pub struct Genus0Series {
    bound: usize,
    table: BTreeMap<usize, SymFunc>,
}

impl Genus0Series {
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `𝔪_n`; zero for `n < 3`. Panics above the bound.
    pub fn component(&self, n: usize) -> SymFunc {
        assert!(n <= self.bound, "𝔪_{n} is beyond the computed bound {}", self.bound);
        self.table
            .get(&n)
            .cloned()
            .unwrap_or_else(|| SymFunc::zero(Truncation::univariate(self.bound)))
    }

    /// `𝔪 = Σ_n 𝔪_n` up to the bound.
    pub fn series(&self) -> SymFunc {
        let mut out = SymFunc::zero(Truncation::univariate(self.bound));
        for f in self.table.values() {
            out = &out + f;
        }
        out
    }
}

fn expand_product(bound: usize, t_hi: i32) -> Result<SymFunc, Error> {
    let trunc = Truncation::new(bound, 0, bound, -(bound as i32), t_hi);
    let one = SymFunc::one(trunc);
    let t_p1 = BiSymFunc::power_sum(1, Factor::First, trunc).scale(&TPoly::t_pow(1));
    // 1/(1 - t^2) as a geometric series up to the top of the window
    let geometric = TPoly::from_pairs((0..=t_hi / 2).map(|k| (2 * k, rat(1, 1))));
    let mut product = (&one + &t_p1).scale(&geometric);
    for n in 1..=bound as u32 {
        let base = &one + &BiSymFunc::power_sum(n, Factor::First, trunc).scale(&TPoly::t_pow(n as i32));
        let factor = series_pow(&base, &r_exponent(n))?;
        product = &product * &factor;
    }
    Ok(kappa(&product))
}

/// Expands the product to degree `bound` and splits it into the `𝔪_n`.
///
/// The degree-`n` component must vanish outside `t^0 .. t^{n−3}`; a
/// violation means the `t`-window was too narrow, so the window is doubled
/// and the expansion retried a few times before giving up.
pub fn genus0_characteristic(bound: usize) -> Result<Genus0Series, Error> {
    if bound < 3 {
        return Err(Error::Range("genus-zero series needs a bound ≥ 3".into()));
    }
    let mut t_hi = 2 * bound as i32;
    let mut last_err = None;
    for _ in 0..4 {
        let product = expand_product(bound, t_hi)?;
        match check_vanishing(&product) {
            Ok(()) => {
                let table = product
                    .split_components()
                    .into_iter()
                    .map(|((d, _), f)| (d, f.with_truncation(Truncation::univariate(bound))))
                    .collect();
                return Ok(Genus0Series { bound, table });
            }
            Err(e) => {
                last_err = Some(e);
                t_hi *= 2;
            }
        }
    }
    Err(last_err.expect("at least one attempt"))
}

fn check_vanishing(product: &SymFunc) -> Result<(), Error> {
    for ((a, _), c) in product.terms() {
        let n = a.size();
        for (e, _) in c.terms() {
            if e < 0 || e > n as i32 - 3 {
                return Err(Error::Vanishing { degree: n, exponent: e });
            }
        }
    }
    Ok(())
}

/// `𝔪_n` restricted to the class of cycle type `ρ`, times `z_ρ`: the graded
/// trace `Σ_i (−t)^i Tr(σ | H^i(M_{0,n}))`.
pub fn graded_trace(series: &Genus0Series, rho: &Partition) -> TPoly {
    let f = series.component(rho.size());
    f.coeff(rho, &Partition::empty())
        .scale(&crate::tpoly::int(crate::partition::z_of(rho) as i64))
}
