//! Truncated symmetric functions over `Q[t, t^-1]` in the power-sum basis.
//!
//! [`BiSymFunc`] is an element of `(Λ ⊗ Λ)⟦t⟧`: a sparse map from pairs of
//! partitions `(λ, μ)` to the coefficient of `p_λ^(1) p_μ^(2)`. A univariate
//! symmetric function ([`SymFunc`]) is the same type with every second
//! partition empty, so both share one serialization schema.
//!
//! Every value carries a [`Truncation`]. Operations keep only monomials with
//! first-factor degree `≤ n1`, second-factor degree `≤ n2`, total degree
//! `≤ total` and `t`-exponents in `[t_lo, t_hi]`, and set a flag when they
//! drop something.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::partition::{character, factorial, partitions_of, z_of, Partition};
use crate::tpoly::{int, Rational, TPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Truncation {
    pub n1: usize,
    pub n2: usize,
    pub total: usize,
    pub t_lo: i32,
    pub t_hi: i32,
}

impl Truncation {
    pub fn new(n1: usize, n2: usize, total: usize, t_lo: i32, t_hi: i32) -> Self {
        Truncation {
            n1,
            n2,
            total,
            t_lo,
            t_hi,
        }
    }

    /// Both factors and the total degree capped at `n`; `t` window `[-2n, 2n]`.
    pub fn weight(n: usize) -> Self {
        let w = 2 * n as i32;
        Truncation::new(n, n, n, -w, w)
    }

    /// Univariate functions of degree `≤ n` (second factor trivial).
    pub fn univariate(n: usize) -> Self {
        let w = 2 * n as i32;
        Truncation::new(n, 0, n, -w, w)
    }

    /// The intersection of two truncation windows.
    pub fn meet(&self, other: &Truncation) -> Truncation {
        Truncation {
            n1: self.n1.min(other.n1),
            n2: self.n2.min(other.n2),
            total: self.total.min(other.total),
            t_lo: self.t_lo.max(other.t_lo),
            t_hi: self.t_hi.min(other.t_hi),
        }
    }

    pub fn admits(&self, d1: usize, d2: usize) -> bool {
        d1 <= self.n1 && d2 <= self.n2 && d1 + d2 <= self.total
    }

    pub fn with_t_window(&self, t_lo: i32, t_hi: i32) -> Truncation {
        Truncation { t_lo, t_hi, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    First,
    Second,
}

impl Factor {
    pub fn index(self) -> usize {
        match self {
            Factor::First => 1,
            Factor::Second => 2,
        }
    }
}

pub type Monomial = (Partition, Partition);

/// An element of `(Λ ⊗ Λ)⟦t⟧` in the power-sum basis.
///
/// Equality compares the terms only, not the truncation context.
#[derive(Clone, Debug)]
pub struct BiSymFunc {
    trunc: Truncation,
    terms: BTreeMap<Monomial, TPoly>,
    truncated: bool,
}

/// A symmetric function in the first factor only.
pub type SymFunc = BiSymFunc;

/// Coefficients in the Schur basis `s_λ^(1) s_μ^(2)`.
pub type SchurExpansion = BTreeMap<Monomial, TPoly>;

impl PartialEq for BiSymFunc {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BiSymFunc {}

impl BiSymFunc {
    pub fn zero(trunc: Truncation) -> Self {
        BiSymFunc {
            trunc,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn constant(c: TPoly, trunc: Truncation) -> Self {
        Self::monomial(Partition::empty(), Partition::empty(), c, trunc)
    }

    pub fn one(trunc: Truncation) -> Self {
        Self::constant(TPoly::one(), trunc)
    }

    pub fn monomial(l1: Partition, l2: Partition, c: TPoly, trunc: Truncation) -> Self {
        let mut f = Self::zero(trunc);
        f.add_term(l1, l2, c);
        f
    }

    /// The power sum `p_k` in the given factor.
    pub fn power_sum(k: u32, factor: Factor, trunc: Truncation) -> Self {
        let p = Partition::row(k);
        match factor {
            Factor::First => Self::monomial(p, Partition::empty(), TPoly::one(), trunc),
            Factor::Second => Self::monomial(Partition::empty(), p, TPoly::one(), trunc),
        }
    }

    pub fn from_terms<I>(terms: I, trunc: Truncation) -> Self
    where
        I: IntoIterator<Item = (Monomial, TPoly)>,
    {
        let mut f = Self::zero(trunc);
        for ((a, b), c) in terms {
            f.add_term(a, b, c);
        }
        f
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    /// True if some operation that produced this value discarded terms.
    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    pub(crate) fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, TPoly> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, TPoly> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l1: &Partition, l2: &Partition) -> TPoly {
        self.terms
            .get(&(l1.clone(), l2.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> TPoly {
        self.coeff(&Partition::empty(), &Partition::empty())
    }

    /// Adds `c · p_λ^(1) p_μ^(2)`, respecting the truncation.
    pub fn add_term(&mut self, l1: Partition, l2: Partition, c: TPoly) {
        if c.is_zero() {
            return;
        }
        if !self.trunc.admits(l1.size(), l2.size()) {
            self.truncated = true;
            return;
        }
        let (c, dropped) = c.window(self.trunc.t_lo, self.trunc.t_hi);
        self.truncated |= dropped;
        if c.is_zero() {
            return;
        }
        let key = (l1, l2);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Re-truncates to a (narrower) window.
    pub fn with_truncation(&self, trunc: Truncation) -> Self {
        let mut out = Self::zero(trunc);
        out.truncated = self.truncated;
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &TPoly) -> Self {
        let mut out = Self::zero(self.trunc);
        out.truncated = self.truncated;
        for ((a, b), v) in &self.terms {
            let (prod, dropped) = v.mul_window(c, self.trunc.t_lo, self.trunc.t_hi);
            out.truncated |= dropped;
            out.add_term(a.clone(), b.clone(), prod);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&TPoly::constant(c.clone()))
    }

    /// Keeps the terms for which `keep(λ, μ)` holds.
    pub fn filter<F: Fn(&Partition, &Partition) -> bool>(&self, keep: F) -> Self {
        BiSymFunc {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| keep(a, b))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            truncated: self.truncated,
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<F: Fn(&Partition, &Partition, &TPoly) -> TPoly>(&self, f: F) -> Self {
        let mut out = Self::zero(self.trunc);
        out.truncated = self.truncated;
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), f(a, b, c));
        }
        out
    }

    /// The homogeneous component of bidegree `(d1, d2)`.
    pub fn component(&self, d1: usize, d2: usize) -> Self {
        self.filter(|a, b| a.size() == d1 && b.size() == d2)
    }

    /// The homogeneous component of total degree `d`.
    pub fn total_degree_part(&self, d: usize) -> Self {
        self.filter(|a, b| a.size() + b.size() == d)
    }

    /// All bidegrees carrying a nonzero term, in increasing order.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(|(a, b)| (a.size(), b.size())).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Splits into homogeneous components keyed by bidegree.
    pub fn split_components(&self) -> BTreeMap<(usize, usize), BiSymFunc> {
        let mut out: BTreeMap<(usize, usize), BiSymFunc> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            out.entry((a.size(), b.size()))
                .or_insert_with(|| BiSymFunc::zero(self.trunc))
                .terms
                .insert((a.clone(), b.clone()), c.clone());
        }
        out
    }

    /// Moves a univariate function living in the first factor to `factor`.
    pub fn into_factor(&self, factor: Factor) -> Self {
        match factor {
            Factor::First => self.clone(),
            Factor::Second => {
                let mut out = Self::zero(self.trunc);
                out.truncated = self.truncated;
                for ((a, b), c) in &self.terms {
                    debug_assert!(b.is_empty(), "into_factor expects a univariate function");
                    out.add_term(b.clone(), a.clone(), c.clone());
                }
                out
            }
        }
    }

    /// Smallest `t`-exponent occurring in any coefficient.
    pub fn min_t_exponent(&self) -> Option<i32> {
        self.terms.values().filter_map(|c| c.min_exponent()).min()
    }

    pub fn max_t_exponent(&self) -> Option<i32> {
        self.terms.values().filter_map(|c| c.max_exponent()).max()
    }

    /// Coefficient of `t^e` as a `t`-free function.
    pub fn t_slice(&self, e: i32) -> Self {
        self.map_coeffs(|_, _, c| TPoly::constant(c.coeff(e)))
    }

    /// `∂/∂p_1` in the given factor.
    pub fn derivative_p1(&self, factor: Factor) -> Self {
        let mut out = Self::zero(self.trunc);
        out.truncated = self.truncated;
        for ((a, b), c) in &self.terms {
            let (target, other) = match factor {
                Factor::First => (a, b),
                Factor::Second => (b, a),
            };
            let mult = target.multiplicity(1);
            if mult == 0 {
                continue;
            }
            let reduced = target.remove_part(1).expect("has a part 1");
            let c = c.scale(&int(mult as i64));
            match factor {
                Factor::First => out.add_term(reduced, other.clone(), c),
                Factor::Second => out.add_term(other.clone(), reduced, c),
            }
        }
        out
    }

    fn mul_impl(&self, rhs: &BiSymFunc) -> BiSymFunc {
        let trunc = self.trunc.meet(&rhs.trunc);
        let mut out = BiSymFunc::zero(trunc);
        out.truncated = self.truncated || rhs.truncated;
        let lhs_terms = terms_by_degree(self);
        let rhs_terms = terms_by_degree(rhs);
        for &(da, a1, a2, ca) in &lhs_terms {
            if da > trunc.total {
                out.truncated = true;
                break;
            }
            for &(db, b1, b2, cb) in &rhs_terms {
                if da + db > trunc.total {
                    out.truncated = true;
                    break;
                }
                if a1.size() + b1.size() > trunc.n1 || a2.size() + b2.size() > trunc.n2 {
                    out.truncated = true;
                    continue;
                }
                let (c, dropped) = ca.mul_window(cb, trunc.t_lo, trunc.t_hi);
                out.truncated |= dropped;
                out.add_term(a1.merge(b1), a2.merge(b2), c);
            }
        }
        out
    }

    fn add_impl(&self, rhs: &BiSymFunc, sign: i64) -> BiSymFunc {
        let trunc = self.trunc.meet(&rhs.trunc);
        let mut out = BiSymFunc::zero(trunc);
        out.truncated = self.truncated || rhs.truncated;
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        for ((a, b), c) in &rhs.terms {
            let c = if sign < 0 { -c } else { c.clone() };
            out.add_term(a.clone(), b.clone(), c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> BiSymFunc {
        let mut acc = BiSymFunc::one(self.trunc);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &BiSymFunc {
    type Output = BiSymFunc;
    fn add(self, rhs: &BiSymFunc) -> BiSymFunc {
        self.add_impl(rhs, 1)
    }
}

impl Sub for &BiSymFunc {
    type Output = BiSymFunc;
    fn sub(self, rhs: &BiSymFunc) -> BiSymFunc {
        self.add_impl(rhs, -1)
    }
}

impl Mul for &BiSymFunc {
    type Output = BiSymFunc;
    fn mul(self, rhs: &BiSymFunc) -> BiSymFunc {
        self.mul_impl(rhs)
    }
}

impl Neg for &BiSymFunc {
    type Output = BiSymFunc;
    fn neg(self) -> BiSymFunc {
        self.map_coeffs(|_, _, c| -c)
    }
}

fn terms_by_degree(f: &BiSymFunc) -> Vec<(usize, &Partition, &Partition, &TPoly)> {
    let mut v: Vec<_> = f
        .terms
        .iter()
        .map(|((a, b), c)| (a.size() + b.size(), a, b, c))
        .collect();
    v.sort_by_key(|x| x.0);
    v
}

fn check_degree(n: usize, factor: Factor, trunc: &Truncation) -> Result<(), Error> {
    let bound = match factor {
        Factor::First => trunc.n1,
        Factor::Second => trunc.n2,
    }
    .min(trunc.total);
    if n > bound {
        return Err(Error::DegreeOverflow { degree: n, bound });
    }
    Ok(())
}

fn from_class_function<F: Fn(&Partition) -> Rational>(
    n: usize,
    factor: Factor,
    trunc: Truncation,
    value: F,
) -> Result<BiSymFunc, Error> {
    check_degree(n, factor, &trunc)?;
    let mut f = BiSymFunc::zero(trunc);
    for rho in partitions_of(n) {
        let c = value(&rho) / int(z_of(&rho) as i64);
        let c = TPoly::constant(c);
        match factor {
            Factor::First => f.add_term(rho, Partition::empty(), c),
            Factor::Second => f.add_term(Partition::empty(), rho, c),
        }
    }
    Ok(f)
}

/// The Schur function `s_λ = Σ_ρ χ^λ(ρ) p_ρ / z_ρ` in the given factor.
pub fn schur(lambda: &Partition, factor: Factor, trunc: Truncation) -> Result<BiSymFunc, Error> {
    from_class_function(lambda.size(), factor, trunc, |rho| {
        int(character(lambda, rho))
    })
}

/// `e_n = s_{1^n}`.
pub fn elementary(n: usize, factor: Factor, trunc: Truncation) -> Result<BiSymFunc, Error> {
    from_class_function(n, factor, trunc, |rho| int(rho.sign()))
}

/// `h_n = s_n`.
pub fn complete(n: usize, factor: Factor, trunc: Truncation) -> Result<BiSymFunc, Error> {
    from_class_function(n, factor, trunc, |_| Rational::one())
}

/// `s_λ^(1) s_μ^(2)`.
pub fn schur_pair(l1: &Partition, l2: &Partition, trunc: Truncation) -> Result<BiSymFunc, Error> {
    Ok(&schur(l1, Factor::First, trunc)? * &schur(l2, Factor::Second, trunc)?)
}

/// Expands into the Schur basis using `p_ρ = Σ_λ χ^λ(ρ) s_λ`.
pub fn to_schur_basis(f: &BiSymFunc) -> SchurExpansion {
    let mut out: SchurExpansion = BTreeMap::new();
    for ((r1, r2), c) in f.terms() {
        for l1 in partitions_of(r1.size()) {
            let x1 = character(&l1, r1);
            if x1 == 0 {
                continue;
            }
            for l2 in partitions_of(r2.size()) {
                let x2 = character(&l2, r2);
                if x2 == 0 {
                    continue;
                }
                let entry = out.entry((l1.clone(), l2)).or_default();
                *entry += &c.scale(&int(x1 * x2));
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Inverse of [`to_schur_basis`].
pub fn from_schur_basis(s: &SchurExpansion, trunc: Truncation) -> Result<BiSymFunc, Error> {
    let mut out = BiSymFunc::zero(trunc);
    for ((l1, l2), c) in s {
        out = &out + &schur_pair(l1, l2, trunc)?.scale(c);
    }
    Ok(out)
}

/// `𝔇 = p_1 ∂/∂p_1 − 1` in the given factor. On a homogeneous piece of
/// degree `n` this tensors with the standard representation of `S_n`.
pub fn d_op(f: &BiSymFunc, factor: Factor) -> BiSymFunc {
    f.map_coeffs(|a, b, c| {
        let target = match factor {
            Factor::First => a,
            Factor::Second => b,
        };
        c.scale(&int(target.multiplicity(1) as i64 - 1))
    })
}

/// A polynomial in `x, y` with `TPoly` coefficients: the image of [`rk_hom`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankPoly {
    coeffs: BTreeMap<(usize, usize), TPoly>,
}

impl RankPoly {
    pub fn coeff(&self, i: usize, j: usize) -> TPoly {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: TPoly) {
        let e = self.coeffs.entry((i, j)).or_default();
        *e += &c;
        if e.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &TPoly)> {
        self.coeffs.iter()
    }

    /// Product keeping only total degree `≤ max_total`.
    pub fn mul_truncated(&self, other: &RankPoly, max_total: usize) -> RankPoly {
        let mut out = RankPoly::default();
        for (&(i, j), a) in &self.coeffs {
            for (&(k, l), b) in &other.coeffs {
                if i + j + k + l <= max_total {
                    out.add_term(i + k, j + l, a * b);
                }
            }
        }
        out
    }
}

/// The rank homomorphism: `p_1^(1) ↦ x`, `p_1^(2) ↦ y`, `p_n^(i) ↦ 0` for `n > 1`.
pub fn rk_hom(f: &BiSymFunc) -> RankPoly {
    let mut out = RankPoly::default();
    for ((a, b), c) in f.terms() {
        let ones = |p: &Partition| p.parts().iter().all(|&x| x == 1);
        if ones(a) && ones(b) {
            out.add_term(a.len(), b.len(), c.clone());
        }
    }
    out
}

/// `m! n!` times the coefficient of `x^m y^n` in `rk(f)`: the signed
/// Poincaré polynomial `Σ (−t)^i dim H^i` of the module `f` describes.
pub fn poincare_from(f: &BiSymFunc, m: usize, n: usize) -> TPoly {
    let c = rk_hom(f).coeff(m, n);
    c.scale(&int((factorial(m) * factorial(n)) as i64))
}

/// `log(1 + x)` for `x` without constant term.
pub fn log_one_plus(x: &BiSymFunc) -> Result<BiSymFunc, Error> {
    if !x.constant_term().is_zero() {
        return Err(Error::BadConstantTerm);
    }
    let mut out = BiSymFunc::zero(x.truncation());
    let mut power = x.clone();
    let mut k = 1i64;
    while !power.is_zero() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = &out + &power.scale_rational(&crate::tpoly::rat(sign, k));
        power = &power * x;
        k += 1;
    }
    out.truncated |= power.truncated;
    Ok(out)
}

/// `exp(y)` for `y` without constant term.
pub fn exp(y: &BiSymFunc) -> Result<BiSymFunc, Error> {
    if !y.constant_term().is_zero() {
        return Err(Error::BadConstantTerm);
    }
    let mut out = BiSymFunc::one(y.truncation());
    let mut term = BiSymFunc::one(y.truncation());
    let mut k = 1i64;
    loop {
        term = (&term * y).scale_rational(&crate::tpoly::rat(1, k));
        if term.is_zero() {
            break;
        }
        out = &out + &term;
        k += 1;
    }
    out.truncated |= term.truncated;
    Ok(out)
}

/// `base^exponent = exp(exponent · log(base))` for `base` with constant term 1
/// and an exponent in `Q[t, t^-1]`.
///
/// The logarithm is computed in a `t`-window widened by the exponent's range,
/// so multiplying by a Laurent exponent does not lose terms that land back
/// inside the target window.
pub fn series_pow(base: &BiSymFunc, exponent: &TPoly) -> Result<BiSymFunc, Error> {
    if !base.constant_term().is_one() {
        return Err(Error::BadConstantTerm);
    }
    let trunc = base.truncation();
    if exponent.is_zero() {
        return Ok(BiSymFunc::one(trunc));
    }
    let lo_shift = exponent.max_exponent().unwrap_or(0).max(0);
    let hi_shift = -exponent.min_exponent().unwrap_or(0).min(0);
    let wide = trunc.with_t_window(trunc.t_lo - lo_shift, trunc.t_hi + hi_shift);
    let x = &base.with_truncation(wide) - &BiSymFunc::one(wide);
    let log = log_one_plus(&x)?;
    let y = log.scale(exponent).with_truncation(trunc);
    exp(&y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{irr_dimension, part, partitions_up_to};
    use crate::tpoly::rat;

    fn t6() -> Truncation {
        Truncation::weight(6)
    }

    fn p1(parts: &[u32]) -> BiSymFunc {
        BiSymFunc::monomial(part(parts), Partition::empty(), TPoly::one(), t6())
    }

    fn s1(parts: &[u32]) -> BiSymFunc {
        schur(&part(parts), Factor::First, t6()).unwrap()
    }

    #[test]
    fn products_merge_partitions() {
        assert_eq!(&p1(&[1]) * &p1(&[1]), p1(&[1, 1]));
        let mixed = &p1(&[2]) * &BiSymFunc::power_sum(3, Factor::Second, t6());
        assert_eq!(mixed.coeff(&part(&[2]), &part(&[3])), TPoly::one());
    }

    #[test]
    fn products_respect_truncation() {
        let tr = Truncation::weight(3);
        let a = BiSymFunc::power_sum(2, Factor::First, tr);
        let prod = &a * &a;
        assert!(prod.is_zero());
        assert!(prod.was_truncated());
    }

    #[test]
    fn pieri_s2_s1() {
        let lhs = &s1(&[2]) * &s1(&[1]);
        let rhs = &s1(&[3]) + &s1(&[2, 1]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn schur_examples() {
        let half = TPoly::constant(rat(1, 2));
        let expect = BiSymFunc::from_terms(
            [
                ((part(&[1, 1]), Partition::empty()), half.clone()),
                ((part(&[2]), Partition::empty()), -&half),
            ],
            t6(),
        );
        assert_eq!(s1(&[1, 1]), expect);
        assert_eq!(elementary(2, Factor::First, t6()).unwrap(), expect);
        let third = TPoly::constant(rat(1, 3));
        let s21 = BiSymFunc::from_terms(
            [
                ((part(&[1, 1, 1]), Partition::empty()), third.clone()),
                ((part(&[3]), Partition::empty()), -&third),
            ],
            t6(),
        );
        assert_eq!(s1(&[2, 1]), s21);
        let h3 = complete(3, Factor::First, t6()).unwrap();
        assert_eq!(h3.coeff(&part(&[1, 1, 1]), &Partition::empty()), TPoly::constant(rat(1, 6)));
        assert_eq!(h3.coeff(&part(&[2, 1]), &Partition::empty()), TPoly::constant(rat(1, 2)));
        assert_eq!(h3.coeff(&part(&[3]), &Partition::empty()), TPoly::constant(rat(1, 3)));
    }

    #[test]
    fn schur_degree_overflow() {
        let r = schur(&part(&[4, 3]), Factor::First, t6());
        assert!(matches!(r, Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn power_sums_in_schur_basis() {
        let sb = to_schur_basis(&p1(&[2]));
        assert_eq!(sb.len(), 2);
        assert_eq!(sb[&(part(&[2]), Partition::empty())], TPoly::one());
        assert_eq!(sb[&(part(&[1, 1]), Partition::empty())], TPoly::from_int(-1));
        let sb = to_schur_basis(&p1(&[1, 1]));
        assert_eq!(sb[&(part(&[2]), Partition::empty())], TPoly::one());
        assert_eq!(sb[&(part(&[1, 1]), Partition::empty())], TPoly::one());
    }

    #[test]
    fn schur_round_trip_up_to_six() {
        let tr = Truncation::weight(12);
        for l1 in partitions_up_to(6) {
            let s = schur(&l1, Factor::First, tr).unwrap();
            let sb = to_schur_basis(&s);
            assert_eq!(sb.len(), 1);
            assert_eq!(sb[&(l1.clone(), Partition::empty())], TPoly::one());
        }
        for l1 in partitions_up_to(3) {
            for l2 in partitions_up_to(3) {
                let s = schur_pair(&l1, &l2, tr).unwrap();
                let back = from_schur_basis(&to_schur_basis(&s), tr).unwrap();
                assert_eq!(back, s);
            }
        }
    }

    #[test]
    fn d_op_examples() {
        assert_eq!(d_op(&s1(&[2]), Factor::First), s1(&[1, 1]));
        assert_eq!(d_op(&p1(&[1, 1]), Factor::First), p1(&[1, 1]));
        assert_eq!(d_op(&p1(&[2]), Factor::First), -&p1(&[2]));
        for n in 2..=6u32 {
            let hn = schur(&Partition::row(n), Factor::First, t6()).unwrap();
            let std_rep = schur(&Partition::hook(n - 1, 1), Factor::First, t6()).unwrap();
            assert_eq!(d_op(&hn, Factor::First), std_rep);
        }
    }

    #[test]
    fn d_op_matches_character_tensor_product() {
        // ch(V_λ ⊗ V_(n-1,1)) computed from pointwise character products
        let tr = Truncation::weight(6);
        for n in 2..=5u32 {
            let std_rep = Partition::hook(n - 1, 1);
            for l in partitions_of(n as usize) {
                let mut expect = BiSymFunc::zero(tr);
                for rho in partitions_of(n as usize) {
                    let v = character(&l, &rho) * character(&std_rep, &rho);
                    let c = int(v) / int(z_of(&rho) as i64);
                    expect.add_term(rho, Partition::empty(), TPoly::constant(c));
                }
                let s = schur(&l, Factor::First, tr).unwrap();
                assert_eq!(d_op(&s, Factor::First), expect);
            }
        }
    }

    #[test]
    fn rank_examples() {
        let tr = t6();
        let s2 = s1(&[2]);
        assert_eq!(rk_hom(&s2).coeff(2, 0), TPoly::constant(rat(1, 2)));
        assert_eq!(rk_hom(&p1(&[2])), RankPoly::default());
        let s22 = schur_pair(&part(&[2]), &part(&[2]), tr).unwrap();
        let f = s22.scale(&TPoly::from_pairs([(0, int(1)), (2, int(1))]));
        let r = rk_hom(&f);
        assert_eq!(r.coeff(2, 2), TPoly::from_pairs([(0, rat(1, 4)), (2, rat(1, 4))]));
        for l in partitions_of(4) {
            let s = schur(&l, Factor::First, tr).unwrap();
            assert_eq!(poincare_from(&s, 4, 0), TPoly::from_int(irr_dimension(&l) as i64));
        }
    }

    #[test]
    fn series_pow_examples() {
        let tr = Truncation::univariate(4);
        let t_p1 = BiSymFunc::monomial(part(&[1]), Partition::empty(), TPoly::t_pow(1), tr);
        let base = &BiSymFunc::one(tr) + &t_p1;
        let sq = series_pow(&base, &TPoly::from_int(2)).unwrap();
        assert_eq!(sq, &base * &base);
        assert_eq!(series_pow(&base, &TPoly::zero()).unwrap(), BiSymFunc::one(tr));

        // exp((1/t) log(1 + t p1)) = exp(p1 - (t/2) p1^2 + ...) = 1 + p1 + ((1 - t)/2) p1^2 + ...
        let r = series_pow(&base, &TPoly::t_pow(-1)).unwrap();
        assert_eq!(r.coeff(&part(&[1]), &Partition::empty()), TPoly::one());
        assert_eq!(
            r.coeff(&part(&[1, 1]), &Partition::empty()),
            TPoly::from_pairs([(0, rat(1, 2)), (1, rat(-1, 2))])
        );
        // (1+tx)^{1/t} = Σ_k C(1/t, k) t^k x^k; k = 3 gives (1-t)(1-2t)/6
        assert_eq!(
            r.coeff(&part(&[1, 1, 1]), &Partition::empty()),
            TPoly::from_pairs([(0, rat(1, 6)), (1, rat(-1, 2)), (2, rat(1, 3))])
        );

        let bad = &base + &BiSymFunc::one(tr);
        assert!(matches!(series_pow(&bad, &TPoly::one()), Err(Error::BadConstantTerm)));
    }

    #[test]
    fn exp_log_inverse() {
        let tr = Truncation::univariate(5);
        let x = &BiSymFunc::monomial(part(&[1]), Partition::empty(), TPoly::t_pow(1), tr)
            + &BiSymFunc::monomial(part(&[2]), Partition::empty(), TPoly::from_int(3), tr);
        let back = exp(&log_one_plus(&x).unwrap()).unwrap();
        assert_eq!(back, &BiSymFunc::one(tr) + &x);
    }

    #[test]
    fn derivative() {
        let f = p1(&[2, 1, 1]);
        let d = f.derivative_p1(Factor::First);
        assert_eq!(d.coeff(&part(&[2, 1]), &Partition::empty()), TPoly::from_int(2));
    }
}
