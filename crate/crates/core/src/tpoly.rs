//! Laurent polynomials in `t` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse Laurent polynomial `Σ c_e t^e`; never stores a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: BTreeMap<i32, Rational>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(int(c))
    }

    /// `c t^e`.
    pub fn monomial(e: i32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        TPoly { coeffs }
    }

    /// `t^e`.
    pub fn t_pow(e: i32) -> Self {
        Self::monomial(e, Rational::one())
    }

    /// `(-t)^e` for `e >= 0`.
    pub fn neg_t_pow(e: u32) -> Self {
        let sign = if e.is_multiple_of(2) { 1 } else { -1 };
        Self::monomial(e as i32, int(sign))
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_pairs<I: IntoIterator<Item = (i32, Rational)>>(pairs: I) -> Self {
        let mut p = TPoly::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    /// Integer coefficients listed from `t^0` upward.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_pairs(coeffs.iter().enumerate().map(|(e, &c)| (e as i32, int(c))))
    }

    pub fn add_term(&mut self, e: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// The coefficient of `t^0` if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> TPoly {
        if c.is_zero() {
            return TPoly::zero();
        }
        TPoly {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i32) -> TPoly {
        TPoly {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Substitutes `t ↦ t^k` (for `k` possibly negative).
    pub fn substitute_power(&self, k: i32) -> TPoly {
        TPoly {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e * k, v.clone())).collect(),
        }
    }

    /// Substitutes `t ↦ -t`.
    pub fn negate_variable(&self) -> TPoly {
        TPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, v)| (e, if e % 2 == 0 { v.clone() } else { -v }))
                .collect(),
        }
    }

    /// Keeps only exponents inside `[lo, hi]`; the flag reports whether
    /// anything was dropped.
    pub fn window(&self, lo: i32, hi: i32) -> (TPoly, bool) {
        let mut dropped = false;
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&e, _)| {
                let keep = e >= lo && e <= hi;
                dropped |= !keep;
                keep
            })
            .map(|(&e, v)| (e, v.clone()))
            .collect();
        (TPoly { coeffs }, dropped)
    }

    /// Product restricted to exponents in `[lo, hi]`.
    pub fn mul_window(&self, other: &TPoly, lo: i32, hi: i32) -> (TPoly, bool) {
        let mut out = TPoly::zero();
        let mut dropped = false;
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                let e = ea + eb;
                if e < lo || e > hi {
                    dropped = true;
                    continue;
                }
                out.add_term(e, ca * cb);
            }
        }
        (out, dropped)
    }

    pub fn pow(&self, k: u32) -> TPoly {
        let mut acc = TPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a rational point (Laurent terms need a nonzero point).
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&e, c) in &self.coeffs {
            let xe = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            };
            acc += c * xe;
        }
        acc
    }

    /// Integer coefficients `[c_0, ..., c_max]` for a polynomial with
    /// nonnegative exponents, or `None` otherwise.
    pub fn to_int_vec(&self) -> Option<Vec<i64>> {
        if self.min_exponent().is_some_and(|e| e < 0) || !self.has_integer_coeffs() {
            return None;
        }
        let top = self.max_exponent().unwrap_or(-1);
        let mut v = vec![0i64; (top + 1) as usize];
        for (&e, c) in &self.coeffs {
            v[e as usize] = i64::try_from(c.numer()).ok()?;
        }
        Some(v)
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&TPoly> for TPoly {
    fn add_assign(&mut self, rhs: &TPoly) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c.clone());
        }
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&TPoly> for TPoly {
    fn sub_assign(&mut self, rhs: &TPoly) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, -c);
        }
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        self.mul_window(rhs, i32::MIN, i32::MAX).0
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let unit = abs.is_one();
            if !unit || e == 0 {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "({}/{})", abs.numer(), abs.denom())?;
                }
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}
