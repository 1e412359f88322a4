//! Integer partitions and characters of the symmetric groups.
//!
//! Partitions are ordered by size first and then reverse-lexicographically,
//! so `(3) < (2,1) < (1,1,1) < (4) < ...`. Every sparse map in the crate is
//! keyed by partitions and iterates in this order, which keeps serialized
//! output deterministic.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition of zero.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from arbitrary positive parts, sorting them.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(parts));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Builds a partition from parts that must already be weakly decreasing.
    pub fn from_sorted(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// `(n)`, or the empty partition for `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
        }
    }

    /// The hook `(a, 1^b)`; `a` must be positive unless `b = 0`.
    pub fn hook(a: u32, b: u32) -> Self {
        let mut parts = Vec::with_capacity(b as usize + 1);
        if a > 0 {
            parts.push(a);
        }
        parts.extend(std::iter::repeat_n(1, b as usize));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Multiplicity vector `m_1, ..., m_{max part}`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let top = self.parts.first().copied().unwrap_or(0) as usize;
        let mut m = vec![0; top];
        for &p in &self.parts {
            m[p as usize - 1] += 1;
        }
        m
    }

    /// Union of the parts of both partitions (the index of `p_λ p_μ`).
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            if self.parts[i] >= other.parts[j] {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        Partition { parts }
    }

    /// Every part multiplied by `k`.
    pub fn scale(&self, k: u32) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| p * k).collect(),
        }
    }

    /// Drops one copy of the part `part`, if present.
    pub fn remove_part(&self, part: u32) -> Option<Partition> {
        let idx = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(idx);
        Some(Partition { parts })
    }

    pub fn conjugate(&self) -> Partition {
        let top = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=top)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Sign of a permutation of this cycle type.
    pub fn sign(&self) -> i64 {
        // each even-length cycle is an odd permutation
        let even_cycles = self.parts.iter().filter(|&&p| p % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::from_sorted(parts).map_err(serde::de::Error::custom)
    }
}

/// Convenience constructor for literals in tests and tables: `part(&[2, 1])`.
///
/// Panics on a zero part.
pub fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("parts must be positive")
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, in canonical order.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Order of the centralizer of a permutation of cycle type `λ`: `∏ i^{m_i} m_i!`.
pub fn z_of(lambda: &Partition) -> u128 {
    lambda
        .multiplicities()
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let i = (i + 1) as u128;
            let fact: u128 = (1..=m as u128).product();
            i.pow(m as u32) * fact
        })
        .product()
}

/// The number-theoretic Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Dimension of the irreducible representation `V_λ`, by the hook-length formula.
pub fn irr_dimension(lambda: &Partition) -> u128 {
    let conj = lambda.conjugate();
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.parts()[j] as usize - i - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    factorial(lambda.size()) / hooks
}

type CharKey = (Partition, Partition);

fn char_cache() -> &'static RwLock<HashMap<CharKey, i64>> {
    static CACHE: OnceLock<RwLock<HashMap<CharKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The character value `χ^λ(ρ)` by the Murnaghan–Nakayama rule.
///
/// Results are memoized in a process-wide table shared by all threads.
/// Panics if `|λ| != |ρ|`.
pub fn character(lambda: &Partition, rho: &Partition) -> i64 {
    assert_eq!(
        lambda.size(),
        rho.size(),
        "character needs partitions of the same size"
    );
    let key = (lambda.clone(), rho.clone());
    if let Some(&v) = char_cache().read().unwrap().get(&key) {
        return v;
    }
    let value = murnaghan_nakayama(lambda, rho);
    char_cache().write().unwrap().insert(key, value);
    value
}

// Border strips are removed on the beta-set (abacus) of λ: a strip of length r
// moves one bead from position b to the free position b - r, with sign
// (-1)^(beads strictly between).
fn murnaghan_nakayama(lambda: &Partition, rho: &Partition) -> i64 {
    let Some((&r, rest)) = rho.parts().split_first() else {
        return 1;
    };
    let rest = Partition {
        parts: rest.to_vec(),
    };
    let len = lambda.len();
    let beta: Vec<u32> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (len - 1 - i) as u32)
        .collect();
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        let smaller = from_beta(&moved);
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * character(&smaller, &rest);
    }
    total
}

fn from_beta(beta: &[u32]) -> Partition {
    let mut b = beta.to_vec();
    b.sort_unstable_by(|x, y| y.cmp(x));
    let len = b.len();
    let parts = b
        .iter()
        .enumerate()
        .map(|(i, &x)| x - (len - 1 - i) as u32)
        .filter(|&p| p > 0)
        .collect();
    Partition { parts }
}

/// Fills the character memo for every pair of partitions of size `≤ n`.
pub fn prepopulate_characters(n: usize) {
    for k in 0..=n {
        let ps = partitions_of(k);
        for l in &ps {
            for r in &ps {
                character(l, r);
            }
        }
    }
}
