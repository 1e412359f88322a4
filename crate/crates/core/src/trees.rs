//! Stable dual trees of `M̄_{0,m|n}` and the oracles built on them.
//!
//! Leaves are labelled `0..m+n`; labels below `m` are heavy (colour 1) and
//! the rest light (colour 2). A vertex is stored as the sorted list of its
//! flags, each flag recorded by the set of leaves behind it (a bitmask). A
//! singleton mask is a leaf; a larger mask is half of an edge whose other
//! half, at the neighbouring vertex, carries the complementary mask. Edges
//! are colour 1. This encoding is canonical, so structural equality of
//! sorted vertex lists is equality of labelled trees.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{check_weight_data, Error};
use crate::interior::component_truncation;
use crate::partition::{partitions_of, z_of, Partition};
use crate::symfunc::BiSymFunc;
use crate::tpoly::{int, TPoly};

type Mask = u32;

/// A flag: vertex index and position in that vertex's flag list.
pub type Flag = (usize, usize);

/// A leaf-labelled `(m, n)`-stable tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableTree {
    m: usize,
    n: usize,
    vertices: Vec<Vec<Mask>>,
}

impl StableTree {
    fn from_vertices(m: usize, n: usize, mut vertices: Vec<Vec<Mask>>) -> Self {
        for v in &mut vertices {
            v.sort_unstable();
        }
        vertices.sort();
        StableTree { m, n, vertices }
    }

    fn full_mask(&self) -> Mask {
        full_mask(self.m + self.n)
    }

    pub fn weight_data(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Flag masks per vertex.
    pub fn vertices(&self) -> &[Vec<Mask>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn flags(&self) -> impl Iterator<Item = Flag> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .flat_map(|(v, fl)| (0..fl.len()).map(move |i| (v, i)))
    }

    fn mask(&self, f: Flag) -> Mask {
        self.vertices[f.0][f.1]
    }

    /// The leaf label of a leaf flag.
    pub fn leaf_label(&self, f: Flag) -> Option<usize> {
        let b = self.mask(f);
        (b.count_ones() == 1).then(|| b.trailing_zeros() as usize)
    }

    /// `σ(f)`: the other half of an edge, or `f` itself for a leaf.
    pub fn involution(&self, f: Flag) -> Flag {
        let b = self.mask(f);
        if b.count_ones() == 1 {
            return f;
        }
        let target = self.full_mask() ^ b;
        for (v, fl) in self.vertices.iter().enumerate() {
            if v == f.0 {
                continue;
            }
            if let Ok(i) = fl.binary_search(&target) {
                return (v, i);
            }
        }
        unreachable!("every edge flag has a partner")
    }

    /// Colour 2 for light leaves, colour 1 for heavy leaves and edges.
    pub fn colour(&self, f: Flag) -> u8 {
        flag_colour(self.mask(f), self.m)
    }

    /// `(|F_1(v)|, |F_2(v)|)`.
    pub fn vertex_type(&self, v: usize) -> (usize, usize) {
        vertex_type(&self.vertices[v], self.m)
    }

    /// Image under a permutation of the labels.
    fn permuted(&self, perm: &[usize]) -> StableTree {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|&b| permute_mask(b, perm)).collect())
            .collect();
        StableTree::from_vertices(self.m, self.n, vertices)
    }
}

fn full_mask(k: usize) -> Mask {
    if k == 32 {
        Mask::MAX
    } else {
        (1 << k) - 1
    }
}

fn flag_colour(b: Mask, m: usize) -> u8 {
    if b.count_ones() == 1 && b.trailing_zeros() as usize >= m {
        2
    } else {
        1
    }
}

fn vertex_type(flags: &[Mask], m: usize) -> (usize, usize) {
    let light = flags.iter().filter(|&&b| flag_colour(b, m) == 2).count();
    (flags.len() - light, light)
}

fn permute_mask(b: Mask, perm: &[usize]) -> Mask {
    let mut out = 0;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        out |= 1 << perm[i];
        rest &= rest - 1;
    }
    out
}

/// All set partitions of the bits of `mask`.
fn set_partitions(mask: Mask) -> Vec<Vec<Mask>> {
    if mask == 0 {
        return vec![vec![]];
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask ^ low;
    let mut out = Vec::new();
    // the block containing the lowest bit: low ∪ any subset of rest
    let mut sub = rest;
    loop {
        let block = low | sub;
        for mut tail in set_partitions(rest ^ sub) {
            tail.push(block);
            out.push(tail);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

/// Vertex lists of every subtree hanging off an edge whose far side carries
/// the leaves `block`; the first vertex is the one incident to that edge.
fn planted(block: Mask, full: Mask, m: usize, memo: &mut HashMap<Mask, Vec<Vec<Vec<Mask>>>>) -> Vec<Vec<Vec<Mask>>> {
    if let Some(v) = memo.get(&block) {
        return v.clone();
    }
    let mut out = Vec::new();
    for parts in set_partitions(block) {
        if parts.len() < 2 {
            continue;
        }
        let mut flags = parts.clone();
        flags.push(full ^ block);
        if !is_stable(&flags, m) {
            continue;
        }
        for rest in children(&parts, full, m, memo) {
            let mut vs = vec![flags.clone()];
            vs.extend(rest);
            out.push(vs);
        }
    }
    memo.insert(block, out.clone());
    out
}

/// All ways of growing subtrees on the non-singleton blocks.
fn children(
    parts: &[Mask],
    full: Mask,
    m: usize,
    memo: &mut HashMap<Mask, Vec<Vec<Vec<Mask>>>>,
) -> Vec<Vec<Vec<Mask>>> {
    let mut acc: Vec<Vec<Vec<Mask>>> = vec![vec![]];
    for &b in parts {
        if b.count_ones() == 1 {
            continue;
        }
        let options = planted(b, full, m, memo);
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for opt in &options {
                let mut v = prefix.clone();
                v.extend(opt.iter().cloned());
                next.push(v);
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

fn is_stable(flags: &[Mask], m: usize) -> bool {
    let (a, b) = vertex_type(flags, m);
    a >= 2 && a + b >= 3
}

/// Every `(m, n)`-stable leaf-labelled tree exactly once, sorted.
pub fn enumerate_stable_trees(m: usize, n: usize) -> Result<Vec<StableTree>, Error> {
    check_weight_data(m, n)?;
    if m + n > 24 {
        return Err(Error::Range(format!("m+n = {} is too large to enumerate", m + n)));
    }
    let full = full_mask(m + n);
    let mut memo = HashMap::new();
    let mut out = Vec::new();
    // root at the vertex carrying leaf 0
    for parts in set_partitions(full ^ 1) {
        let mut flags = parts.clone();
        flags.push(1);
        if flags.len() < 3 || !is_stable(&flags, m) {
            continue;
        }
        for rest in children(&parts, full, m, &mut memo) {
            let mut vs = vec![flags.clone()];
            vs.extend(rest);
            out.push(StableTree::from_vertices(m, n, vs));
        }
    }
    out.sort();
    Ok(out)
}

/// The point count of `M_{0,a|b}` over `F_q` as a polynomial in `q`.
pub fn epoly_interior(a: usize, b: usize) -> Result<TPoly, Error> {
    check_weight_data(a, b)?;
    let q_minus = |k: i64| TPoly::from_ints(&[-k, 1]);
    if a == 2 {
        return Ok(q_minus(1).pow(b as u32 - 1));
    }
    let mut p = q_minus(a as i64 - 1).pow(b as u32);
    for k in 2..=(a as i64 - 2) {
        p = &p * &q_minus(k);
    }
    Ok(p)
}

/// `Σ_T ∏_v epoly(|F_1(v)|, |F_2(v)|)` at `q = t²`: the Poincaré polynomial
/// of `M̄_{0,m|n}`.
pub fn poincare_oracle(m: usize, n: usize) -> Result<TPoly, Error> {
    let trees = enumerate_stable_trees(m, n)?;
    poincare_of_trees(&trees)
}

fn poincare_of_trees(trees: &[StableTree]) -> Result<TPoly, Error> {
    let mut cache: BTreeMap<(usize, usize), TPoly> = BTreeMap::new();
    let mut total = TPoly::zero();
    for tree in trees {
        let mut p = TPoly::one();
        for v in 0..tree.num_vertices() {
            let ty = tree.vertex_type(v);
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(ty) {
                e.insert(epoly_interior(ty.0, ty.1)?);
            }
            p = &p * &cache[&ty];
        }
        total += &p;
    }
    Ok(total.substitute_power(2))
}

/// Strata counts by codimension and the oracle Poincaré polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub m: usize,
    pub n: usize,
    /// Entry `c` counts the strata of codimension `c` (trees with `c` edges).
    pub strata_by_codim: Vec<u64>,
    /// Coefficients of the Poincaré polynomial, indexed by the power of `t`.
    pub poincare: Vec<i64>,
}

pub fn census(m: usize, n: usize) -> Result<Census, Error> {
    let trees = enumerate_stable_trees(m, n)?;
    let mut strata_by_codim = vec![0u64; m + n - 2];
    for t in &trees {
        strata_by_codim[t.num_edges()] += 1;
    }
    let poincare = poincare_of_trees(&trees)?
        .to_int_vec()
        .ok_or_else(|| Error::Range("non-integral oracle polynomial".into()))?;
    Ok(Census { m, n, strata_by_codim, poincare })
}

/// A permutation of `0..m+n` with cycle type `ρ_1` on the heavy labels and
/// `ρ_2` on the light ones.
fn representative(rho1: &Partition, rho2: &Partition) -> Vec<usize> {
    let mut perm = Vec::with_capacity(rho1.size() + rho2.size());
    let mut start = 0;
    for &k in rho1.parts().iter().chain(rho2.parts()) {
        let k = k as usize;
        for i in 0..k {
            perm.push(start + (i + 1) % k);
        }
        start += k;
    }
    perm
}

fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0u32;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts).expect("cycle lengths are positive")
}

/// Graded trace of `W(a, b)` at the class `(μ_1, μ_2)`, with `t ↦ t^k`.
fn class_value(w: &BiSymFunc, mu1: &Partition, mu2: &Partition, k: u32) -> TPoly {
    let z = int((z_of(mu1) * z_of(mu2)) as i64);
    w.coeff(mu1, mu2).scale(&z).substitute_power(k as i32)
}

/// `ch(⊕_T W(T))` for the `(m, n)` component of the tree construction, with
/// `W(T) = ⊗_v W(F(v))`.
///
/// For each class `(ρ_1, ρ_2)` a representative `π` is fixed, and each tree
/// with `π(T) = T` contributes the product over cycles `(v, πv, …, π^{k−1}v)`
/// of the trace of `π^k` on `W(F(v))` with `t ↦ t^k`.
pub fn equivariant_treesum(
    w: &BTreeMap<(usize, usize), BiSymFunc>,
    m: usize,
    n: usize,
) -> Result<BiSymFunc, Error> {
    let trees = enumerate_stable_trees(m, n)?;
    let trunc = component_truncation(m, n);
    let mut out = BiSymFunc::zero(trunc);
    for rho1 in partitions_of(m) {
        for rho2 in partitions_of(n) {
            let perm = representative(&rho1, &rho2);
            let mut trace = TPoly::zero();
            for tree in &trees {
                if tree.permuted(&perm) != *tree {
                    continue;
                }
                trace += &fixed_tree_trace(tree, &perm, w)?;
            }
            let z = int((z_of(&rho1) * z_of(&rho2)) as i64);
            out.add_term(rho1.clone(), rho2, trace.scale(&z.recip()));
        }
    }
    Ok(out)
}

fn fixed_tree_trace(
    tree: &StableTree,
    perm: &[usize],
    w: &BTreeMap<(usize, usize), BiSymFunc>,
) -> Result<TPoly, Error> {
    let index: HashMap<&Vec<Mask>, usize> =
        tree.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let image = |v: usize| -> usize {
        let mut flags: Vec<Mask> = tree.vertices[v].iter().map(|&b| permute_mask(b, perm)).collect();
        flags.sort_unstable();
        index[&flags]
    };
    let mut seen = vec![false; tree.num_vertices()];
    let mut trace = TPoly::one();
    for v in 0..tree.num_vertices() {
        if seen[v] {
            continue;
        }
        let mut k = 0u32;
        let mut u = v;
        while !seen[u] {
            seen[u] = true;
            u = image(u);
            k += 1;
        }
        // π^k restricted to the flags of v
        let flags = &tree.vertices[v];
        let mut power: Vec<usize> = (0..perm.len()).collect();
        for _ in 0..k {
            power = power.iter().map(|&i| perm[i]).collect();
        }
        let (heavy, light): (Vec<Mask>, Vec<Mask>) =
            flags.iter().partition(|&&b| flag_colour(b, tree.m) == 1);
        let action = |set: &[Mask]| -> Partition {
            let pos: HashMap<Mask, usize> = set.iter().enumerate().map(|(i, &b)| (b, i)).collect();
            let p: Vec<usize> = set.iter().map(|&b| pos[&permute_mask(b, &power)]).collect();
            cycle_type(&p)
        };
        let ty = (heavy.len(), light.len());
        let wv = w.get(&ty).ok_or(Error::MissingComponent(ty.0, ty.1))?;
        trace = &trace * &class_value(wv, &action(&heavy), &action(&light), k);
        if trace.is_zero() {
            break;
        }
    }
    Ok(trace)
}
