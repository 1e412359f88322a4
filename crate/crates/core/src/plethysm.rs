//! The plethysm `∘₍₁₎` that substitutes only through first-factor power sums.
//!
//! The rules are
//!
//! * `f ↦ f ∘₍₁₎ g` is a ring homomorphism,
//! * `p_n^(1) ∘₍₁₎ p_k^(i) = p_{nk}^(i)` and `p_n^(1) ∘₍₁₎ t = t^n`,
//! * `p_n^(2) ∘₍₁₎ g = p_n^(2)`,
//!
//! and `t` appearing in the outer argument is inert.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::Error;
use crate::partition::Partition;
use crate::symfunc::{BiSymFunc, Factor, Truncation};
use crate::tpoly::{Rational, TPoly};

/// `p_n^(1) ∘₍₁₎ g`: substitutes `p_k^(i) ↦ p_{nk}^(i)` and `t ↦ t^n`.
pub fn frobenius_twist(g: &BiSymFunc, n: u32) -> BiSymFunc {
    assert!(n >= 1, "twist order must be positive");
    let mut out = BiSymFunc::zero(g.truncation());
    if g.was_truncated() {
        out.mark_truncated();
    }
    for ((a, b), c) in g.terms() {
        out.add_term(a.scale(n), b.scale(n), c.substitute_power(n as i32));
    }
    out
}

/// A fixed inner argument `g` together with the memoized products
/// `∏_i p_{λ_i}^(1) ∘₍₁₎ g`, so that many outer arguments can be composed
/// with the same `g` cheaply.
pub struct Substitution {
    inner: BiSymFunc,
    trunc: Truncation,
    twists: HashMap<u32, BiSymFunc>,
    products: HashMap<Partition, BiSymFunc>,
    inexact: bool,
}

impl Substitution {
    pub fn new(inner: &BiSymFunc) -> Result<Self, Error> {
        if !inner.constant_term().is_zero() {
            return Err(Error::InnerConstantTerm);
        }
        let trunc = inner.truncation();
        // A first-degree cap below the total cap is only exact when every term
        // of g has positive first degree; otherwise p_k^(1) ∘ g can lower it.
        let inexact = trunc.n1 < trunc.total && inner.terms().keys().any(|(a, _)| a.is_empty());
        Ok(Substitution {
            inner: inner.clone(),
            trunc,
            twists: HashMap::new(),
            products: HashMap::new(),
            inexact,
        })
    }

    pub fn inner(&self) -> &BiSymFunc {
        &self.inner
    }

    fn twist(&mut self, k: u32) -> BiSymFunc {
        let inner = &self.inner;
        self.twists
            .entry(k)
            .or_insert_with(|| frobenius_twist(inner, k))
            .clone()
    }

    /// `p_λ^(1) ∘₍₁₎ g`, truncated to `trunc`.
    fn first_factor_power(&mut self, lambda: &Partition, trunc: Truncation) -> BiSymFunc {
        if let Some(v) = self.products.get(lambda) {
            return v.clone();
        }
        let value = match lambda.parts().split_first() {
            None => BiSymFunc::one(trunc),
            Some((&k, rest)) => {
                let rest = Partition::from_sorted(rest.to_vec()).expect("tail of a partition");
                let tail = self.first_factor_power(&rest, trunc);
                if tail.is_zero() {
                    tail
                } else {
                    &self.twist(k).with_truncation(trunc) * &tail
                }
            }
        };
        self.products.insert(lambda.clone(), value.clone());
        value
    }

    /// `f ∘₍₁₎ g` for the stored `g`.
    pub fn apply(&mut self, f: &BiSymFunc) -> BiSymFunc {
        let trunc = f.truncation().meet(&self.trunc);
        if trunc != self.trunc {
            // cached products are only valid for one window
            self.products.clear();
            self.trunc = trunc;
        }
        let mut out = BiSymFunc::zero(trunc);
        if f.was_truncated() || self.inner.was_truncated() || self.inexact {
            out.mark_truncated();
        }
        for ((a, b), c) in f.terms() {
            let inner = self.first_factor_power(a, trunc);
            if inner.is_zero() {
                continue;
            }
            let outer = BiSymFunc::monomial(Partition::empty(), b.clone(), c.clone(), trunc);
            out = &out + &(&inner * &outer);
        }
        out
    }
}

/// `f ∘₍₁₎ g`. The inner argument must have no constant term.
pub fn plethysm1(f: &BiSymFunc, g: &BiSymFunc) -> Result<BiSymFunc, Error> {
    Ok(Substitution::new(g)?.apply(f))
}

/// Splits `h = c·p_1^(1) + H` with `c` a nonzero rational and every term of
/// `H` of total degree at least 2.
pub(crate) fn split_linear_part(h: &BiSymFunc) -> Result<(Rational, BiSymFunc), Error> {
    let mut c = None;
    let p1 = Partition::row(1);
    for ((a, b), v) in h.terms() {
        match a.size() + b.size() {
            0 => return Err(Error::NotInvertible("constant term present".into())),
            1 if *a == p1 => match v.as_constant() {
                Some(k) if !k.is_zero() => c = Some(k),
                _ => {
                    return Err(Error::NotInvertible(format!(
                        "coefficient of p1^(1) is {v}, not a nonzero rational"
                    )))
                }
            },
            1 => {
                return Err(Error::NotInvertible(
                    "linear term in the second factor".into(),
                ))
            }
            _ => {}
        }
    }
    let c = c.ok_or_else(|| Error::NotInvertible("no p1^(1) term".into()))?;
    let rest = h.filter(|a, b| a.size() + b.size() >= 2);
    Ok((c, rest))
}

/// The two-sided `∘₍₁₎`-inverse of `h = c·p_1^(1) + H`, by the fixed-point
/// iteration `u ← (p_1^(1) − H ∘₍₁₎ u) / c`.
///
/// Each pass fixes one more total degree, so the iteration stabilizes within
/// `total + 1` passes of the truncation.
pub fn plethystic_inverse1(h: &BiSymFunc) -> Result<BiSymFunc, Error> {
    let (c, rest) = split_linear_part(h)?;
    let trunc = h.truncation();
    let inv_c = TPoly::constant(c.recip());
    let p1 = BiSymFunc::power_sum(1, Factor::First, trunc);
    let mut u = p1.scale(&inv_c);
    let max_passes = trunc.total + 2;
    for _ in 0..max_passes {
        let next = (&p1 - &plethysm1(&rest, &u)?).scale(&inv_c);
        if next == u {
            return Ok(next);
        }
        u = next;
    }
    Err(Error::NoConvergence(max_passes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{part, partitions_up_to};
    use crate::tpoly::int;
    use proptest::prelude::*;

    fn tr() -> Truncation {
        Truncation::weight(6)
    }

    fn mono(a: &[u32], b: &[u32], c: TPoly) -> BiSymFunc {
        let p = |x: &[u32]| {
            if x.is_empty() {
                Partition::empty()
            } else {
                part(x)
            }
        };
        BiSymFunc::monomial(p(a), p(b), c, tr())
    }

    #[test]
    fn twist_examples() {
        let g = &mono(&[1], &[], TPoly::one()) + &mono(&[], &[1], TPoly::one());
        let expect = &mono(&[2], &[], TPoly::one()) + &mono(&[], &[2], TPoly::one());
        assert_eq!(frobenius_twist(&g, 2), expect);
        let g = mono(&[1], &[], TPoly::t_pow(1));
        assert_eq!(frobenius_twist(&g, 2), mono(&[2], &[], TPoly::t_pow(2)));
        let g = &mono(&[2, 1], &[1], TPoly::from_ints(&[1, 3])) + &mono(&[1], &[], TPoly::one());
        assert_eq!(frobenius_twist(&g, 1), g);
    }

    #[test]
    fn plethysm_examples() {
        let g = &mono(&[1], &[], TPoly::t_pow(1)) + &mono(&[1], &[1], TPoly::from_int(3));
        let p2_second = mono(&[], &[2], TPoly::one());
        assert_eq!(plethysm1(&p2_second, &g).unwrap(), p2_second);

        let f = &mono(&[2, 1], &[1], TPoly::from_ints(&[1, 2])) + &mono(&[3], &[], TPoly::one());
        assert_eq!(plethysm1(&f, &mono(&[1], &[], TPoly::one())).unwrap(), f);

        let r = plethysm1(&mono(&[2], &[], TPoly::one()), &mono(&[1], &[], TPoly::t_pow(1))).unwrap();
        assert_eq!(r, mono(&[2], &[], TPoly::t_pow(2)));

        // t in the outer argument stays inert
        let r = plethysm1(&mono(&[2], &[], TPoly::t_pow(1)), &mono(&[1], &[], TPoly::t_pow(1))).unwrap();
        assert_eq!(r, mono(&[2], &[], TPoly::t_pow(3)));
    }

    #[test]
    fn inner_constant_term_rejected() {
        let g = &mono(&[1], &[], TPoly::one()) + &BiSymFunc::one(tr());
        assert!(matches!(
            plethysm1(&mono(&[1], &[], TPoly::one()), &g),
            Err(Error::InnerConstantTerm)
        ));
    }

    fn catalan(k: u64) -> i64 {
        let mut b: u64 = 1;
        for i in 0..k {
            b = b * (2 * k - i) / (i + 1);
        }
        (b / (k + 1)) as i64
    }

    #[test]
    fn inverse_of_p1_plus_p1_squared_is_catalan() {
        let p1 = mono(&[1], &[], TPoly::one());
        assert_eq!(plethystic_inverse1(&p1).unwrap(), p1);

        let h = &p1 + &mono(&[1, 1], &[], TPoly::one());
        let u = plethystic_inverse1(&h).unwrap();
        let mut expect = BiSymFunc::zero(tr());
        for k in 1..=6u32 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            expect.add_term(
                Partition::column(k),
                Partition::empty(),
                TPoly::from_int(sign * catalan(k as u64 - 1)),
            );
        }
        assert_eq!(u, expect);
        assert_eq!(plethysm1(&h, &u).unwrap(), p1);
        assert_eq!(plethysm1(&u, &h).unwrap(), p1);
    }

    #[test]
    fn inverse_rejects_bad_input() {
        let h = mono(&[1], &[], TPoly::t_pow(1));
        assert!(matches!(plethystic_inverse1(&h), Err(Error::NotInvertible(_))));
        let h = &mono(&[1], &[], TPoly::one()) + &mono(&[], &[1], TPoly::one());
        assert!(matches!(plethystic_inverse1(&h), Err(Error::NotInvertible(_))));
        let h = mono(&[2], &[], TPoly::one());
        assert!(matches!(plethystic_inverse1(&h), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn inverse_with_scaled_linear_term() {
        let h = &mono(&[1], &[], TPoly::from_int(2)) + &mono(&[2], &[1], TPoly::from_int(1));
        let u = plethystic_inverse1(&h).unwrap();
        let p1 = mono(&[1], &[], TPoly::one());
        assert_eq!(plethysm1(&h, &u).unwrap(), p1);
        assert_eq!(plethysm1(&u, &h).unwrap(), p1);
    }

    fn monomials(max: usize) -> Vec<(Partition, Partition)> {
        let ps = partitions_up_to(max);
        let mut out = vec![];
        for a in &ps {
            for b in &ps {
                if a.size() + b.size() <= max {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    prop_compose! {
        fn series(trunc: Truncation, max: usize, no_constant: bool)
            (picks in prop::collection::vec((0usize..64, -3i64..=3, 0i32..=2), 1..5))
            -> BiSymFunc
        {
            let ms = monomials(max);
            let mut f = BiSymFunc::zero(trunc);
            for (i, c, e) in picks {
                let (a, b) = ms[i % ms.len()].clone();
                if no_constant && a.is_empty() && b.is_empty() {
                    continue;
                }
                f.add_term(a, b, TPoly::monomial(e, int(c)));
            }
            f
        }
    }

    fn ptr() -> Truncation {
        Truncation::weight(5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn associativity(
            f in series(ptr(), 3, false),
            g in series(ptr(), 3, true),
            h in series(ptr(), 3, true),
        ) {
            let lhs = plethysm1(&plethysm1(&f, &g).unwrap(), &h).unwrap();
            let rhs = plethysm1(&f, &plethysm1(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn homomorphism_in_outer_argument(
            f1 in series(ptr(), 3, false),
            f2 in series(ptr(), 3, false),
            g in series(ptr(), 3, true),
        ) {
            let lhs = plethysm1(&(&f1 * &f2), &g).unwrap();
            let rhs = &plethysm1(&f1, &g).unwrap() * &plethysm1(&f2, &g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn second_factor_transparency(f in series(ptr(), 3, false), g in series(ptr(), 3, true)) {
            let f2 = f.filter(|a, _| a.is_empty());
            prop_assert_eq!(plethysm1(&f2, &g).unwrap(), f2);
        }

        #[test]
        fn inverse_is_two_sided(h in series(Truncation::weight(6), 4, true)) {
            let h = h.filter(|a, b| a.size() + b.size() >= 2 && !a.is_empty());
            let p1 = BiSymFunc::power_sum(1, Factor::First, Truncation::weight(6));
            let h = &p1 + &h;
            let u = plethystic_inverse1(&h).unwrap();
            prop_assert_eq!(plethysm1(&h, &u).unwrap(), p1.clone());
            prop_assert_eq!(plethysm1(&u, &h).unwrap(), p1);
        }
    }
}
