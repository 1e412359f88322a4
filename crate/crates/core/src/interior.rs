//! Characters of `H*(M_{0,m|n})`, the open moduli of weighted stable curves.
//!
//! For `m ≥ 3` the cohomology is assembled from `H*(M_{0,m})` tensored with
//! powers of the standard representation and exterior powers of the
//! permutation representation `C_n`; for `m = 2` the space is the torus
//! `(C^×)^n / C^×`.

use std::collections::BTreeMap;

use crate::error::{check_weight_data, Error};
use crate::genus0::{genus0_characteristic, graded_trace, Genus0Series};
use crate::partition::{partitions_of, z_of, Partition};
use crate::symfunc::{complete, d_op, elementary, poincare_from, schur, BiSymFunc, Factor, Truncation};
use crate::tpoly::{int, TPoly};

/// `ch(∧^l C_n) = e_l h_{n−l}` in the second factor.
pub fn wedge_perm_char(n: usize, l: usize, trunc: Truncation) -> Result<BiSymFunc, Error> {
    if l > n {
        return Err(Error::Range(format!("exterior power {l} of C_{n} requires l ≤ n")));
    }
    Ok(&elementary(l, Factor::Second, trunc)? * &complete(n - l, Factor::Second, trunc)?)
}

/// The natural truncation for a single `(m, n)` component.
pub fn component_truncation(m: usize, n: usize) -> Truncation {
    let d = m + n;
    Truncation::new(m, n, d, -2 * d as i32, 2 * d as i32)
}

/// `Σ_{l=0}^{n} (−t)^l (𝔇^l 𝔪_m)^(1) · (e_l h_{n−l})^(2)`, for `m ≥ 3`.
fn generic_component(
    g: &Genus0Series,
    m: usize,
    n: usize,
    trunc: Truncation,
) -> Result<BiSymFunc, Error> {
    let mut d_power = g.component(m).with_truncation(trunc);
    let mut out = BiSymFunc::zero(trunc);
    for l in 0..=n {
        if l > 0 {
            d_power = d_op(&d_power, Factor::First);
        }
        let term = &d_power * &wedge_perm_char(n, l, trunc)?;
        out = &out + &term.scale(&TPoly::neg_t_pow(l as u32));
    }
    Ok(out)
}

/// The character of `H*(M_{0,m|n})` class by class, for `m ≥ 3`.
///
/// `H*(P_m^n) = H*(P_m)^{⊗n}` with `S_n` permuting the factors, and a
/// `k`-cycle of odd classes contributes the Koszul sign `(−1)^{k−1}`. So a
/// pair `(σ, τ)` has graded trace
/// `χ_{M_{0,m}}(σ) · ∏_{k-cycles of τ} (1 − t^k (fix(σ^k) − 1))`.
fn geometric_component(
    g: &Genus0Series,
    m: usize,
    n: usize,
    trunc: Truncation,
) -> Result<BiSymFunc, Error> {
    let mut out = BiSymFunc::zero(trunc);
    for rho1 in partitions_of(m) {
        let base = graded_trace(g, &rho1);
        if base.is_zero() {
            continue;
        }
        for rho2 in partitions_of(n) {
            let mut trace = base.clone();
            for &k in rho2.parts() {
                let fixed: usize = rho1
                    .parts()
                    .iter()
                    .filter(|&&c| k % c == 0)
                    .map(|&c| c as usize)
                    .sum();
                let standard = int(fixed as i64 - 1);
                trace = &trace * &TPoly::from_pairs([(0, int(1)), (k as i32, -standard)]);
            }
            let z = int((z_of(&rho1) * z_of(&rho2)) as i64);
            out.add_term(rho1.clone(), rho2, trace.scale(&z.recip()));
        }
    }
    Ok(out)
}

/// `Σ_{k=0}^{n−1} (−t)^k (𝔇^k s_2)^(1) · s_{(n−k,1^k)}^(2)`.
fn torus_component(n: usize, trunc: Truncation) -> Result<BiSymFunc, Error> {
    let mut d_power = schur(&Partition::row(2), Factor::First, trunc)?;
    let mut out = BiSymFunc::zero(trunc);
    for k in 0..n {
        if k > 0 {
            d_power = d_op(&d_power, Factor::First);
        }
        let hook = schur(&Partition::hook((n - k) as u32, k as u32), Factor::Second, trunc)?;
        out = &out + &(&d_power * &hook).scale(&TPoly::neg_t_pow(k as u32));
    }
    Ok(out)
}

/// Which description of the `S_n` action on `H*(P_m^n)` to use for `m ≥ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum InteriorFormula {
    /// `H^l(P_m^n) = (⊗^l V_{(m−1,1)}) ⊠ ∧^l C_n`, the closed formula in
    /// `𝔇` and `e_l h_{n−l}`.
    Printed,
    /// `S_n` permuting the factors of `H*(P_m)^{⊗n}` with Koszul signs.
    #[default]
    Geometric,
}

impl InteriorFormula {
    fn component(
        self,
        g: &Genus0Series,
        m: usize,
        n: usize,
        trunc: Truncation,
    ) -> Result<BiSymFunc, Error> {
        match self {
            InteriorFormula::Printed => generic_component(g, m, n, trunc),
            InteriorFormula::Geometric => geometric_component(g, m, n, trunc),
        }
    }
}

/// Every admissible component whose bidegree fits in `trunc`, computed in
/// that truncation.
pub fn components_within(
    trunc: Truncation,
    formula: InteriorFormula,
) -> Result<BTreeMap<(usize, usize), BiSymFunc>, Error> {
    let mut components = BTreeMap::new();
    let g = if trunc.n1 >= 3 { Some(genus0_characteristic(trunc.n1)?) } else { None };
    for m in 2..=trunc.n1 {
        for n in 0..=trunc.n2 {
            if m + n < 3 || !trunc.admits(m, n) {
                continue;
            }
            let c = match &g {
                Some(g) if m >= 3 => formula.component(g, m, n, trunc)?,
                _ => torus_component(n, trunc)?,
            };
            components.insert((m, n), c);
        }
    }
    Ok(components)
}

/// The printed closed formula for `ch_t(H*(M_{0,m|n}))`, `m ≥ 3`:
/// `Σ_l (−t)^l (𝔇^l 𝔪_m)^(1) (e_l h_{n−l})^(2)`.
pub fn interior_component(m: usize, n: usize) -> Result<BiSymFunc, Error> {
    if m < 3 {
        return Err(Error::Range(format!(
            "m ≥ 3 required for the generic formula, got m = {m}; use the torus case for m = 2"
        )));
    }
    let g = genus0_characteristic(m)?;
    generic_component(&g, m, n, component_truncation(m, n))
}

/// `ch_t(H*(M_{0,2|n}))`, the open Losev–Manin space.
pub fn losev_manin_component(n: usize) -> Result<BiSymFunc, Error> {
    if n < 1 {
        return Err(Error::Range("the torus case needs n ≥ 1".into()));
    }
    torus_component(n, component_truncation(2, n))
}

/// `ch_t(H*(M_{0,m|n}))` for any admissible `(m, n)`.
pub fn interior_characteristic(
    m: usize,
    n: usize,
    formula: InteriorFormula,
) -> Result<BiSymFunc, Error> {
    check_weight_data(m, n)?;
    if m == 2 {
        return losev_manin_component(n);
    }
    let g = genus0_characteristic(m)?;
    formula.component(&g, m, n, component_truncation(m, n))
}

/// The components `ch_t(𝒢(m, n))` for all `m + n ≤ bound`.
#[derive(Clone, Debug)]
pub struct InteriorTable {
    bound: usize,
    formula: InteriorFormula,
    components: BTreeMap<(usize, usize), BiSymFunc>,
}

impl InteriorTable {
    /// Computes every component with `m + n ≤ bound` in the common
    /// truncation `Truncation::weight(bound)`.
    pub fn new(bound: usize, formula: InteriorFormula) -> Result<Self, Error> {
        if bound < 3 {
            return Err(Error::Range(format!("m+n ≥ 3 required: bound {bound}")));
        }
        let components = components_within(Truncation::weight(bound), formula)?;
        Ok(InteriorTable { bound, formula, components })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn formula(&self) -> InteriorFormula {
        self.formula
    }

    /// `ch_t(𝒢(m, n))`; zero outside the admissible range.
    pub fn get(&self, m: usize, n: usize) -> Result<BiSymFunc, Error> {
        if m + n > self.bound {
            return Err(Error::MissingComponent(m, n));
        }
        Ok(self
            .components
            .get(&(m, n))
            .cloned()
            .unwrap_or_else(|| BiSymFunc::zero(Truncation::weight(self.bound))))
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), BiSymFunc> {
        &self.components
    }

    /// Signed Poincaré polynomial `Σ (−t)^i dim H^i(M_{0,m|n})`.
    pub fn poincare(&self, m: usize, n: usize) -> Result<TPoly, Error> {
        Ok(poincare_from(&self.get(m, n)?, m, n))
    }

    /// The sum of all components.
    pub fn series(&self) -> BiSymFunc {
        let mut out = BiSymFunc::zero(Truncation::weight(self.bound));
        for c in self.components.values() {
            out = &out + c;
        }
        out
    }
}

/// The printed closed formula summed over `m + n ≤ bound`.
pub fn interior_series(bound: usize) -> Result<BiSymFunc, Error> {
    Ok(InteriorTable::new(bound, InteriorFormula::Printed)?.series())
}

/// `ch_t(𝒢)` from the regrouped double sum
///
/// ```text
/// 𝔪 + (𝔪 + s_2) Σ_{n≥1} s_n
///   + Σ_{k≥1} (−t)^k ( 𝔇^k 𝔪 · Σ_{n≥k} s_{(n−k+1,1^{k−1})}
///                     + 𝔇^k (𝔪 + s_2) · Σ_{n≥k+1} s_{(n−k,1^k)} ),
/// ```
///
/// computed independently of the per-component formulas.
pub fn interior_series_regrouped(bound: usize) -> Result<BiSymFunc, Error> {
    if bound < 3 {
        return Err(Error::Range(format!("m+n ≥ 3 required: bound {bound}")));
    }
    let trunc = Truncation::weight(bound);
    let m_series = genus0_characteristic(bound)?.series().with_truncation(trunc);
    let s2 = schur(&Partition::row(2), Factor::First, trunc)?;
    let m_plus = &m_series + &s2;
    let hook_sum = |k_arm: isize, legs: usize, from: usize| -> Result<BiSymFunc, Error> {
        let mut acc = BiSymFunc::zero(trunc);
        for n in from..=bound {
            let arm = n as isize + k_arm;
            acc = &acc + &schur(&Partition::hook(arm as u32, legs as u32), Factor::Second, trunc)?;
        }
        Ok(acc)
    };
    let mut out = &m_series + &(&m_plus * &hook_sum(0, 0, 1)?);
    let mut d_m = m_series.clone();
    let mut d_m_plus = m_plus.clone();
    for k in 1..bound {
        d_m = d_op(&d_m, Factor::First);
        d_m_plus = d_op(&d_m_plus, Factor::First);
        let first = &d_m * &hook_sum(1 - k as isize, k - 1, k)?;
        let second = &d_m_plus * &hook_sum(-(k as isize), k, k + 1)?;
        out = &out + &(&first + &second).scale(&TPoly::neg_t_pow(k as u32));
    }
    Ok(out)
}
