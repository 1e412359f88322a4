//! The partial Legendre transform and the characters of `H*(M̄_{0,m|n})`.
//!
//! `g = 𝔏(f)` is the unique solution of
//!
//! ```text
//! g ∘₍₁₎ h + f = p_1^(1) h,     h = ∂f/∂p_1^(1),
//! ```
//!
//! and the compactified characters are read off from
//! `h_2^(1) + ch_t(ℋ) = 𝔏(e_2^(1) − F)`, where `F` is the interior series
//! after the weight substitution.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{check_weight_data, Error};
use crate::interior::{component_truncation, components_within, InteriorFormula};
use crate::plethysm::{plethysm1, plethystic_inverse1, split_linear_part, Substitution};
use crate::symfunc::{
    complete, elementary, poincare_from, rk_hom, to_schur_basis, BiSymFunc, Factor, Truncation,
};
use crate::tpoly::{int, Rational, TPoly};

/// Per `(m, n)` component with `d = m + n`, sends `c·t^i` to
/// `c·t^{2(d−3)−2i}`: the substitution `t ↦ t^{−2}`, `p_k ↦ t^{2k} p_k`
/// followed by division by `t^6`.
pub fn weight_substitution(g: &BiSymFunc) -> Result<BiSymFunc, Error> {
    let mut out = BiSymFunc::zero(g.truncation());
    for ((a, b), c) in g.terms() {
        let (m, n) = (a.size(), b.size());
        let shift = 2 * (m + n) as i32 - 6;
        let mut image = TPoly::zero();
        for (e, v) in c.terms() {
            let target = shift - 2 * e;
            if target < 0 {
                return Err(Error::InvalidWeight { m, n });
            }
            image.add_term(target, v.clone());
        }
        out.add_term(a.clone(), b.clone(), image);
    }
    Ok(out)
}

/// Checks that `f` lies in the domain of the transform and returns the
/// coefficient `c` of `p_1^(1)` in `∂f/∂p_1^(1)`.
///
/// The rank `Σ a_ij x^i y^j` must have `a_20` a nonzero rational and
/// `a_ij = 0` whenever `i < 2` or `i + j < 3`, apart from `(2, 0)` itself.
/// Terms invisible to the rank (those involving `p_k`, `k > 1`) are held to
/// the same bidegree condition.
pub fn legendre_domain(f: &BiSymFunc) -> Result<Rational, Error> {
    let rk = rk_hom(f);
    let a20 = rk.coeff(2, 0);
    let a = match a20.as_constant() {
        Some(a) if !a.is_zero() => a,
        _ => {
            return Err(Error::LegendreDomain(format!(
                "coefficient of x^2 in rk(f) must be a nonzero rational, found {a20}"
            )))
        }
    };
    for (&(i, j), c) in rk.terms() {
        if (i, j) != (2, 0) && (i < 2 || i + j < 3) && !c.is_zero() {
            return Err(Error::LegendreDomain(format!(
                "rk(f) has a nonzero x^{i} y^{j} coefficient {c}"
            )));
        }
    }
    for (a1, a2) in f.terms().keys() {
        let (i, j) = (a1.size(), a2.size());
        if (i, j) != (2, 0) && (i < 2 || i + j < 3) {
            return Err(Error::LegendreDomain(format!(
                "term p_{a1}^(1) p_{a2}^(2) has bidegree ({i},{j})"
            )));
        }
    }
    Ok(a * int(2))
}

fn rhs_and_derivative(f: &BiSymFunc) -> (BiSymFunc, BiSymFunc) {
    let h = f.derivative_p1(Factor::First);
    let p1 = BiSymFunc::power_sum(1, Factor::First, f.truncation());
    let rhs = &(&p1 * &h) - f;
    (rhs, h)
}

/// `g ∘₍₁₎ h + f − p_1^(1) h` for `h = ∂f/∂p_1^(1)`.
pub fn legendre_residual(f: &BiSymFunc, g: &BiSymFunc) -> Result<BiSymFunc, Error> {
    let (rhs, h) = rhs_and_derivative(f);
    Ok(&plethysm1(g, &h)? - &rhs)
}

/// `𝔏(f)` by a graded solve.
///
/// Writing `h = c·p_1 + H`, the degree-`d` part of `g` is determined by
/// `g_d ∘₍₁₎ (c·p_1) = [p_1 h − f − (g_{<d} ∘₍₁₎ h − g_{<d} ∘₍₁₎ (c·p_1))]_d`,
/// and `p_λ^(1) ∘₍₁₎ (c·p_1) = c^{ℓ(λ)} p_λ^(1)`. The result is checked
/// against the defining equation before it is returned.
pub fn partial_legendre(f: &BiSymFunc) -> Result<BiSymFunc, Error> {
    let c = legendre_domain(f)?;
    let (rhs, h) = rhs_and_derivative(f);
    let (c_h, _) = split_linear_part(&h)?;
    debug_assert_eq!(c, c_h);
    let trunc = f.truncation();
    let mut subst = Substitution::new(&h)?;
    let inv_c = c.recip();
    let mut g = BiSymFunc::zero(trunc);
    // Σ over solved terms of g ∘ h minus their leading part g ∘ (c·p_1)
    let mut correction = BiSymFunc::zero(trunc);
    for d in 0..=trunc.total {
        let target = (&rhs - &correction).total_degree_part(d);
        if target.is_zero() {
            continue;
        }
        let g_d = target.map_coeffs(|a, _, v| v.scale(&num_traits::pow(inv_c.clone(), a.len())));
        correction = &correction + &(&subst.apply(&g_d) - &target);
        g = &g + &g_d;
    }
    let residual = &subst.apply(&g) - &rhs;
    if !residual.is_zero() {
        return Err(Error::LegendreResidual(residual.len()));
    }
    Ok(without_flag(g))
}

/// `𝔏(f)` through the plethystic inverse: `g = (p_1 h − f) ∘₍₁₎ h^{−1}`.
pub fn partial_legendre_via_inverse(f: &BiSymFunc) -> Result<BiSymFunc, Error> {
    legendre_domain(f)?;
    let (rhs, h) = rhs_and_derivative(f);
    let u = plethystic_inverse1(&h)?;
    Ok(without_flag(plethysm1(&rhs, &u)?))
}

// Terms dropped above the truncation never feed back into lower degrees here,
// so the retained terms are exact.
fn without_flag(g: BiSymFunc) -> BiSymFunc {
    let trunc = g.truncation();
    BiSymFunc::from_terms(g.into_terms(), trunc)
}

/// Checks the invariants of one compactified component `ch_t(ℋ(m, n))`.
pub fn check_compactified(c: &BiSymFunc, m: usize, n: usize) -> Result<(), Error> {
    let fail = |reason: String| Err(Error::Invariant { m, n, reason });
    if m < 2 || m + n < 3 {
        if !c.is_zero() {
            return fail("component must vanish".into());
        }
        return Ok(());
    }
    if c.is_zero() {
        return fail("component is zero".into());
    }
    let top = 2 * (m + n) as i32 - 6;
    let schur = to_schur_basis(c);
    for ((l1, l2), v) in &schur {
        for (e, x) in v.terms() {
            if e < 0 || e > top {
                return fail(format!("t^{e} outside [0, {top}] at s_{l1} s_{l2}"));
            }
            if e % 2 != 0 {
                return fail(format!("odd exponent t^{e} at s_{l1} s_{l2}"));
            }
            if !x.is_integer() || x.is_negative() {
                return fail(format!("coefficient {x} of t^{e} s_{l1} s_{l2}"));
            }
            if v.coeff(top - e) != *x {
                return fail(format!("not palindromic at t^{e} s_{l1} s_{l2}"));
            }
        }
    }
    if poincare_from(c, m, n).coeff(0) != Rational::one() {
        return fail("H^0 is not one-dimensional".into());
    }
    Ok(())
}

/// `𝔏(e_2^(1) − F) − h_2^(1)` for the interior components inside `trunc`.
pub fn compactified_series(trunc: Truncation, formula: InteriorFormula) -> Result<BiSymFunc, Error> {
    let mut interior = BiSymFunc::zero(trunc);
    for c in components_within(trunc, formula)?.values() {
        interior = &interior + c;
    }
    let f = &elementary(2, Factor::First, trunc)? - &weight_substitution(&interior)?;
    Ok(&partial_legendre(&f)? - &complete(2, Factor::First, trunc)?)
}

/// The components `ch_t(ℋ(m, n))` for all `m + n ≤ bound`.
#[derive(Clone, Debug)]
pub struct CompactifiedTable {
    bound: usize,
    components: BTreeMap<(usize, usize), BiSymFunc>,
}

impl CompactifiedTable {
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `ch_t(ℋ(m, n))`; zero outside the admissible range.
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

    /// The Poincaré polynomial of `M̄_{0,m|n}` in `t` (even powers only).
    pub fn poincare(&self, m: usize, n: usize) -> Result<TPoly, Error> {
        Ok(poincare_from(&self.get(m, n)?, m, n))
    }
}

/// Runs the full pipeline to `m + n ≤ bound` and checks every component.
pub fn compactified_characteristic(bound: usize) -> Result<CompactifiedTable, Error> {
    if bound < 3 {
        return Err(Error::Range(format!("m+n ≥ 3 required: bound {bound}")));
    }
    let series = compactified_series(Truncation::weight(bound), InteriorFormula::Geometric)?;
    let mut components = BTreeMap::new();
    for ((m, n), c) in series.split_components() {
        check_compactified(&c, m, n)?;
        components.insert((m, n), c);
    }
    for m in 2..=bound {
        for n in 0..=(bound - m) {
            if m + n >= 3 && !components.contains_key(&(m, n)) {
                return Err(Error::Invariant { m, n, reason: "component is zero".into() });
            }
        }
    }
    Ok(CompactifiedTable { bound, components })
}

/// `ch_t(ℋ(m, n))` alone, computed in the smallest exact truncation.
pub fn compactified_component(m: usize, n: usize) -> Result<BiSymFunc, Error> {
    check_weight_data(m, n)?;
    let trunc = component_truncation(m, n);
    let c = compactified_series(trunc, InteriorFormula::Geometric)?.component(m, n);
    check_compactified(&c, m, n)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interior::interior_characteristic;
    use crate::partition::{part, Partition};
    use crate::symfunc::schur_pair;
    use crate::tpoly::rat;
    use proptest::prelude::*;

    #[test]
    fn weight_substitution_examples() {
        let tr = component_truncation(2, 2);
        let g = interior_characteristic(2, 2, InteriorFormula::Geometric).unwrap();
        let expect = &schur_pair(&part(&[2]), &part(&[2]), tr).unwrap().scale(&TPoly::t_pow(2))
            - &schur_pair(&part(&[1, 1]), &part(&[1, 1]), tr).unwrap();
        assert_eq!(weight_substitution(&g).unwrap(), expect);
        for (m, n) in [(2, 1), (3, 0)] {
            let g = interior_characteristic(m, n, InteriorFormula::Geometric).unwrap();
            assert_eq!(weight_substitution(&g).unwrap(), g);
        }
        let bad = BiSymFunc::monomial(part(&[3]), Partition::empty(), TPoly::t_pow(1), Truncation::weight(3));
        assert!(matches!(weight_substitution(&bad), Err(Error::InvalidWeight { .. })));
    }

    #[test]
    fn transform_of_e2_is_h2() {
        let tr = Truncation::weight(6);
        let e2 = elementary(2, Factor::First, tr).unwrap();
        let h2 = complete(2, Factor::First, tr).unwrap();
        assert_eq!(partial_legendre(&e2).unwrap(), h2);
        assert_eq!(partial_legendre(&h2).unwrap(), e2);
        assert_eq!(partial_legendre_via_inverse(&e2).unwrap(), h2);
    }

    #[test]
    fn domain_violations() {
        let tr = Truncation::weight(5);
        let p2 = BiSymFunc::power_sum(2, Factor::First, tr);
        assert!(matches!(partial_legendre(&p2), Err(Error::LegendreDomain(_))));
        let e2 = elementary(2, Factor::First, tr).unwrap();
        let low = BiSymFunc::monomial(part(&[1]), part(&[2]), TPoly::one(), tr);
        assert!(matches!(partial_legendre(&(&e2 + &low)), Err(Error::LegendreDomain(_))));
        let tp11 = BiSymFunc::monomial(part(&[1, 1]), Partition::empty(), TPoly::t_pow(1), tr);
        assert!(matches!(partial_legendre(&tp11), Err(Error::LegendreDomain(_))));
        assert_eq!(legendre_domain(&e2).unwrap(), rat(1, 1));
    }

    #[test]
    fn small_compactified_components() {
        let tr = component_truncation(2, 2);
        let expect = schur_pair(&part(&[2]), &part(&[2]), tr).unwrap().scale(&TPoly::from_ints(&[1, 0, 1]));
        assert_eq!(compactified_component(2, 2).unwrap(), expect);
        let tr = component_truncation(4, 0);
        let s4 = crate::symfunc::schur(&part(&[4]), Factor::First, tr).unwrap();
        assert_eq!(compactified_component(4, 0).unwrap(), s4.scale(&TPoly::from_ints(&[1, 0, 1])));
        assert_eq!(
            compactified_component(2, 1).unwrap(),
            schur_pair(&part(&[2]), &part(&[1]), component_truncation(2, 1)).unwrap()
        );
        assert!(compactified_component(1, 4).is_err());
    }

    #[test]
    fn table_agrees_with_single_components() {
        let table = compactified_characteristic(6).unwrap();
        for (&(m, n), c) in table.components() {
            assert_eq!(c, &compactified_component(m, n).unwrap(), "({m},{n})");
        }
        assert_eq!(table.poincare(5, 0).unwrap(), TPoly::from_ints(&[1, 0, 5, 0, 1]));
    }

    #[test]
    fn both_solvers_agree_on_pipeline_input() {
        let trunc = Truncation::weight(6);
        let mut interior = BiSymFunc::zero(trunc);
        for c in components_within(trunc, InteriorFormula::Geometric).unwrap().values() {
            interior = &interior + c;
        }
        let f = &elementary(2, Factor::First, trunc).unwrap() - &weight_substitution(&interior).unwrap();
        let g = partial_legendre(&f).unwrap();
        assert_eq!(g, partial_legendre_via_inverse(&f).unwrap());
        assert!(legendre_residual(&f, &g).unwrap().is_zero());
        assert_eq!(partial_legendre(&g).unwrap(), f);
    }

    #[test]
    fn printed_interior_gives_a_virtual_module() {
        let trunc = component_truncation(3, 2);
        let c = compactified_series(trunc, InteriorFormula::Printed).unwrap().component(3, 2);
        let err = check_compactified(&c, 3, 2).unwrap_err().to_string();
        assert!(err.contains("coefficient -1"), "{err}");
    }

    fn admissible() -> impl Strategy<Value = BiSymFunc> {
        let tr = Truncation::weight(5);
        let monomials: Vec<(Partition, Partition)> = crate::partition::partitions_up_to(5)
            .into_iter()
            .flat_map(|a| {
                crate::partition::partitions_up_to(3)
                    .into_iter()
                    .map(move |b| (a.clone(), b))
            })
            .filter(|(a, b)| a.size() >= 2 && a.size() + b.size() >= 3 && a.size() + b.size() <= 5)
            .collect();
        let n = monomials.len();
        (
            1i64..4,
            proptest::collection::vec((0..n, -3i64..=3, 0i32..=2), 1..6),
        )
            .prop_map(move |(a, picks)| {
                let mut f = elementary(2, Factor::First, tr).unwrap().scale_rational(&int(a));
                for (i, c, e) in picks {
                    let (l1, l2) = monomials[i].clone();
                    f.add_term(l1, l2, TPoly::monomial(e, int(c)));
                }
                f
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn transform_is_an_involution(f in admissible()) {
            let g = partial_legendre(&f).unwrap();
            prop_assert!(legendre_residual(&f, &g).unwrap().is_zero());
            prop_assert_eq!(&g, &partial_legendre_via_inverse(&f).unwrap());
            prop_assert_eq!(partial_legendre(&g).unwrap(), f);
        }
    }
}
