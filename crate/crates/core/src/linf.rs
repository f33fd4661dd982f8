//! Morphisms of evenly graded L-infinity algebras over the rationals.
//!
//! In the evenly graded setting every bracket vanishes and all Koszul signs
//! disappear, so a morphism `Φ: V -> W` is just a family of symmetric
//! multilinear maps `Φ^k: ⊙^k V -> W` of degree zero. Each `Φ^k` is stored as
//! a table from sorted tuples of basis indices to sparse output vectors.
//!
//! Spaces are truncated to the basis indices `1..=dim`. Anything landing on
//! a larger index is dropped, which is consistent as long as the morphisms
//! involved never lower indices (true for the ellipsoid morphisms below).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{compositions, multiplicities, set_partitions};
use crate::error::{domain, Error, Result};
use crate::lattice::{sum_points, AspectRatio, AspectVector, LatticePoint, TieRule};
use crate::numerics::{factorial, Rational};
use crate::superpotential::InnerSum;
use crate::trees::{enumerate_ordered_trees, OrderedTree};

/// Sparse vector over a based space: basis index to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element(BTreeMap<usize, Rational>);

impl Element {
    pub fn zero() -> Self {
        Element(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        Element::term(i, Rational::one())
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut e = Element::zero();
        e.add_term(i, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        for (i, x) in other.terms() {
            self.add_term(i, x * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    fn truncated(mut self, dim: usize) -> Element {
        self.0.retain(|i, _| *i <= dim);
        self
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})e{i}")?;
        }
        Ok(())
    }
}

/// Evenly graded vector space with basis `e_1, ..., e_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasedSpace {
    name: String,
    degrees: Vec<i64>,
}

impl BasedSpace {
    /// `degrees[i - 1]` is the degree of basis element `i`.
    pub fn new(name: impl Into<String>, degrees: Vec<i64>) -> Result<Self> {
        if let Some(pos) = degrees.iter().position(|d| d % 2 != 0) {
            return Err(domain(format!(
                "basis element {} has odd degree {}",
                pos + 1,
                degrees[pos]
            )));
        }
        Ok(BasedSpace {
            name: name.into(),
            degrees,
        })
    }

    /// Reeb orbit space `C_a`: `o_i` in degree `-2 - 2i`.
    pub fn orbits(dim: usize) -> Self {
        Self::tower("C_a", dim)
    }

    /// Descendant space `C_o`: `q_i` in degree `-2 - 2i`.
    pub fn descendants(dim: usize) -> Self {
        Self::tower("C_o", dim)
    }

    fn tower(name: &str, dim: usize) -> Self {
        let degrees = (1..=dim as i64).map(|i| -2 - 2 * i).collect();
        BasedSpace::new(name, degrees).expect("even by construction")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i - 1]
    }

    fn degree_set(&self) -> BTreeSet<i64> {
        self.degrees.iter().copied().collect()
    }
}

/// A degree-zero L-infinity morphism, known through arity `max_arity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinfMorphism {
    source: BasedSpace,
    target: BasedSpace,
    tables: Vec<BTreeMap<Vec<usize>, Element>>,
}

impl LinfMorphism {
    /// The zero morphism.
    pub fn new(source: BasedSpace, target: BasedSpace, max_arity: usize) -> Self {
        LinfMorphism {
            source,
            target,
            tables: vec![BTreeMap::new(); max_arity],
        }
    }

    pub fn identity(space: BasedSpace, max_arity: usize) -> Self {
        let mut id = LinfMorphism::new(space.clone(), space.clone(), max_arity.max(1));
        for i in 1..=space.dim() {
            id.set(&[i], Element::basis(i))
                .expect("identity is degree zero");
        }
        id
    }

    pub fn source(&self) -> &BasedSpace {
        &self.source
    }

    pub fn target(&self) -> &BasedSpace {
        &self.target
    }

    pub fn max_arity(&self) -> usize {
        self.tables.len()
    }

    /// Sets `Φ^k(e_{i_1}, ..., e_{i_k})`. Inputs may be in any order. Every
    /// output term must have the degree of the inputs combined.
    pub fn set(&mut self, inputs: &[usize], value: Element) -> Result<()> {
        let k = inputs.len();
        if k == 0 || k > self.max_arity() {
            return Err(domain(format!(
                "arity {k} outside 1..={}",
                self.max_arity()
            )));
        }
        if let Some(&bad) = inputs.iter().find(|&&i| i == 0 || i > self.source.dim()) {
            return Err(domain(format!(
                "input index {bad} outside the source basis"
            )));
        }
        let in_degree: i64 = inputs.iter().map(|&i| self.source.degree(i)).sum();
        for (t, _) in value.terms() {
            if t == 0 || t > self.target.dim() {
                return Err(domain(format!("output index {t} outside the target basis")));
            }
            if self.target.degree(t) != in_degree {
                return Err(domain(format!(
                    "entry {inputs:?} -> e{t} has degree {} but inputs have {in_degree}",
                    self.target.degree(t)
                )));
            }
        }
        let mut key = inputs.to_vec();
        key.sort_unstable();
        if value.is_zero() {
            self.tables[k - 1].remove(&key);
        } else {
            self.tables[k - 1].insert(key, value);
        }
        Ok(())
    }

    /// Value on basis inputs (zero when absent).
    pub fn get(&self, inputs: &[usize]) -> Element {
        let k = inputs.len();
        if k == 0 || k > self.max_arity() {
            return Element::zero();
        }
        let mut key = inputs.to_vec();
        key.sort_unstable();
        self.tables[k - 1].get(&key).cloned().unwrap_or_default()
    }

    /// Nonzero entries of arity `k`.
    pub fn entries(&self, k: usize) -> impl Iterator<Item = (&[usize], &Element)> {
        self.tables
            .get(k.wrapping_sub(1))
            .into_iter()
            .flat_map(|t| t.iter().map(|(k, v)| (k.as_slice(), v)))
    }

    /// `Φ^k(x_1, ..., x_k)` extended multilinearly.
    pub fn apply(&self, args: &[&Element]) -> Element {
        let k = args.len();
        let mut out = Element::zero();
        if k == 0 || k > self.max_arity() || self.tables[k - 1].is_empty() {
            return out;
        }
        let mut idx = Vec::with_capacity(k);
        self.expand(args, &mut idx, Rational::one(), &mut out);
        out
    }

    fn expand(&self, args: &[&Element], idx: &mut Vec<usize>, coeff: Rational, out: &mut Element) {
        let Some((first, rest)) = args.split_first() else {
            let mut key = idx.clone();
            key.sort_unstable();
            if let Some(v) = self.tables[key.len() - 1].get(&key) {
                out.add_scaled(v, &coeff);
            }
            return;
        };
        for (i, c) in first.terms() {
            idx.push(i);
            self.expand(rest, idx, &coeff * c, out);
            idx.pop();
        }
    }

    fn check_degrees(&self) -> Result<()> {
        for k in 1..=self.max_arity() {
            for (inputs, value) in self.entries(k) {
                let d: i64 = inputs.iter().map(|&i| self.source.degree(i)).sum();
                if value.terms().any(|(t, _)| self.target.degree(t) != d) {
                    return Err(domain(format!("entry {inputs:?} is not of degree zero")));
                }
            }
        }
        Ok(())
    }

    /// Serializable view of all tables.
    pub fn dump(&self) -> MorphismDump {
        let mut entries = Vec::new();
        for k in 1..=self.max_arity() {
            for (inputs, value) in self.entries(k) {
                entries.push(EntryDump {
                    inputs: inputs.to_vec(),
                    output: value.terms().map(|(i, c)| (i, c.to_string())).collect(),
                });
            }
        }
        MorphismDump {
            source: self.source.name.clone(),
            target: self.target.name.clone(),
            dim: (self.source.dim(), self.target.dim()),
            max_arity: self.max_arity(),
            entries,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismDump {
    pub source: String,
    pub target: String,
    pub dim: (usize, usize),
    pub max_arity: usize,
    pub entries: Vec<EntryDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryDump {
    pub inputs: Vec<usize>,
    pub output: BTreeMap<usize, String>,
}

/// Sorted `k`-tuples of source indices whose total degree can be hit by some
/// target basis element.
fn relevant_inputs(source: &BasedSpace, k: usize, targets: &BTreeSet<i64>) -> Vec<Vec<usize>> {
    let (Some(&tmin), Some(&tmax)) = (targets.first(), targets.last()) else {
        return Vec::new();
    };
    if source.dim() == 0 {
        return Vec::new();
    }
    let dmin = *source.degrees.iter().min().unwrap();
    let dmax = *source.degrees.iter().max().unwrap();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    #[allow(clippy::too_many_arguments)]
    fn go(
        source: &BasedSpace,
        k: usize,
        start: usize,
        partial: i64,
        bounds: (i64, i64, i64, i64),
        targets: &BTreeSet<i64>,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let (dmin, dmax, tmin, tmax) = bounds;
        let r = (k - prefix.len()) as i64;
        if partial + r * dmin > tmax || partial + r * dmax < tmin {
            return;
        }
        if r == 0 {
            if targets.contains(&partial) {
                out.push(prefix.clone());
            }
            return;
        }
        for i in start..=source.dim() {
            prefix.push(i);
            go(
                source,
                k,
                i,
                partial + source.degree(i),
                bounds,
                targets,
                prefix,
                out,
            );
            prefix.pop();
        }
    }
    go(
        source,
        k,
        1,
        0,
        (dmin, dmax, tmin, tmax),
        targets,
        &mut prefix,
        &mut out,
    );
    out
}

/// `Ψ ∘ Φ`, characterized by `hat(Ψ ∘ Φ) = hat(Ψ) ∘ hat(Φ)`:
/// `(Ψ∘Φ)^k(v_1..v_k)` sums `Ψ^s(Φ^{|B_1|}(v_{B_1}), ..., Φ^{|B_s|}(v_{B_s}))`
/// over all set partitions `{B_1, ..., B_s}` of the inputs.
pub fn compose(psi: &LinfMorphism, phi: &LinfMorphism) -> Result<LinfMorphism> {
    if phi.target != psi.source {
        return Err(Error::SpaceMismatch(format!(
            "cannot compose {}->{} after {}->{}",
            psi.source.name, psi.target.name, phi.source.name, phi.target.name
        )));
    }
    let arity = psi.max_arity().min(phi.max_arity());
    let mut out = LinfMorphism::new(phi.source.clone(), psi.target.clone(), arity);
    let targets = psi.target.degree_set();
    for k in 1..=arity {
        let positions: Vec<usize> = (0..k).collect();
        let partitions = set_partitions(&positions);
        let inputs = relevant_inputs(&phi.source, k, &targets);
        let values: Vec<(Vec<usize>, Element)> = inputs
            .into_par_iter()
            .map(|inp| {
                let mut acc = Element::zero();
                for blocks in &partitions {
                    let images: Vec<Element> = blocks
                        .iter()
                        .map(|b| {
                            let sub: Vec<usize> = b.iter().map(|&p| inp[p]).collect();
                            phi.get(&sub)
                        })
                        .collect();
                    if images.iter().any(Element::is_zero) {
                        continue;
                    }
                    let refs: Vec<&Element> = images.iter().collect();
                    acc.add_scaled(&psi.apply(&refs), &Rational::one());
                }
                (inp, acc.truncated(psi.target.dim()))
            })
            .collect();
        for (inp, v) in values {
            out.set(&inp, v)?;
        }
    }
    Ok(out)
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
fn invert_matrix(mut m: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for c in 0..n {
            m[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..n {
                    let a = &m[col][c] * &f;
                    m[r][c] -= a;
                    let b = &inv[col][c] * &f;
                    inv[r][c] -= b;
                }
            }
        }
    }
    Some(inv)
}

/// How [`invert_with`] evaluates the signed sum over ordered trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TreeSum {
    /// Sum the tree terms grouped by the leaf set of each subtree: the
    /// signed sum over trees on a label set `S` is
    /// `-sum over splittings of S into >= 2 blocks of Ψ^1 Φ^j(sums on blocks)`.
    #[default]
    Factored,
    /// Enumerate every tree with ordered leaves and label it separately.
    PerTree,
}

/// Inverse morphism `Ψ` with `Ψ ∘ Φ = 1` and `Φ ∘ Ψ = 1` through arity
/// `max_arity`.
///
/// `Ψ^1` is the linear inverse of `Φ^1`. For `k >= 2`, `Ψ^k` is the signed
/// sum over trees with `k` ordered leaves: leaf `i` is labeled `Ψ^1(w_i)`, a
/// vertex with `j` incoming labels emits `Ψ^1 Φ^j` of them, and each tree
/// carries the sign `(-1)^{#internal vertices}`.
pub fn invert(phi: &LinfMorphism, max_arity: usize) -> Result<LinfMorphism> {
    invert_with(phi, max_arity, TreeSum::Factored)
}

pub fn invert_with(phi: &LinfMorphism, max_arity: usize, method: TreeSum) -> Result<LinfMorphism> {
    if max_arity == 0 {
        return Err(domain("max_arity must be at least 1"));
    }
    if phi.max_arity() < max_arity {
        return Err(domain(format!(
            "morphism is only known through arity {}, inverse requested through {max_arity}",
            phi.max_arity()
        )));
    }
    let n = phi.source.dim();
    if phi.target.dim() != n {
        return Err(Error::NotInvertible(format!(
            "source has {n} generators, target has {}",
            phi.target.dim()
        )));
    }
    // matrix[t][s] = coefficient of e_t in Φ^1(e_s)
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    for (inp, v) in phi.entries(1) {
        for (t, c) in v.terms() {
            matrix[t - 1][inp[0] - 1] = c.clone();
        }
    }
    let inv = invert_matrix(matrix)
        .ok_or_else(|| Error::NotInvertible("linear part is singular".to_string()))?;
    let mut psi = LinfMorphism::new(phi.target.clone(), phi.source.clone(), max_arity);
    for t in 1..=n {
        let mut col = Element::zero();
        for s in 1..=n {
            col.add_term(s, inv[s - 1][t - 1].clone());
        }
        psi.set(&[t], col)?;
    }
    let targets = phi.source.degree_set();
    for k in 2..=max_arity {
        let trees = match method {
            TreeSum::PerTree => enumerate_ordered_trees(k)?,
            TreeSum::Factored => Vec::new(),
        };
        let splittings = match method {
            TreeSum::Factored => subset_splittings(k),
            TreeSum::PerTree => Vec::new(),
        };
        let inputs = relevant_inputs(&phi.target, k, &targets);
        let linear = &psi;
        let values: Vec<(Vec<usize>, Element)> = inputs
            .into_par_iter()
            .map(|w| {
                let leaves: Vec<Element> = w.iter().map(|&i| linear.get(&[i])).collect();
                let value = match method {
                    TreeSum::PerTree => {
                        let mut acc = Element::zero();
                        for t in &trees {
                            let sign = if t.internal_count() % 2 == 0 {
                                Rational::one()
                            } else {
                                -Rational::one()
                            };
                            acc.add_scaled(&tree_label(t, &leaves, phi, linear), &sign);
                        }
                        acc
                    }
                    TreeSum::Factored => factored_tree_sum(&w, &leaves, &splittings, phi, linear),
                };
                (w, value)
            })
            .collect();
        for (w, v) in values {
            psi.set(&w, v)?;
        }
    }
    Ok(psi)
}

/// For every subset mask of `0..k` with at least two elements, its set
/// partitions into at least two blocks (as masks).
fn subset_splittings(k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = vec![Vec::new(); 1 << k];
    for (mask, slot) in out.iter_mut().enumerate() {
        if (mask as u32).count_ones() < 2 {
            continue;
        }
        let members: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).collect();
        *slot = set_partitions(&members)
            .into_iter()
            .filter(|p| p.len() >= 2)
            .map(|p| {
                p.iter()
                    .map(|b| b.iter().fold(0u32, |m, &i| m | 1 << i))
                    .collect()
            })
            .collect();
    }
    out
}

fn factored_tree_sum(
    w: &[usize],
    leaves: &[Element],
    splittings: &[Vec<Vec<u32>>],
    phi: &LinfMorphism,
    linear: &LinfMorphism,
) -> Element {
    let k = w.len();
    let full = (1usize << k) - 1;
    // Subsets are canonicalized by the multiset of input indices they carry,
    // since the signed sum only depends on that.
    let mut by_content: HashMap<Vec<usize>, Element> = HashMap::new();
    let mut sums: Vec<Element> = vec![Element::zero(); full + 1];
    for mask in 1..=full {
        let mut content: Vec<usize> = (0..k)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| w[b])
            .collect();
        content.sort_unstable();
        if let Some(v) = by_content.get(&content) {
            sums[mask] = v.clone();
            continue;
        }
        let value = if content.len() == 1 {
            leaves[mask.trailing_zeros() as usize].clone()
        } else {
            let mut acc = Element::zero();
            for blocks in &splittings[mask] {
                if blocks.iter().any(|&b| sums[b as usize].is_zero()) {
                    continue;
                }
                let refs: Vec<&Element> = blocks.iter().map(|&b| &sums[b as usize]).collect();
                let image = phi.apply(&refs).truncated(phi.target.dim());
                acc.add_scaled(&linear.apply(&[&image]), &-Rational::one());
            }
            acc
        };
        by_content.insert(content, value.clone());
        sums[mask] = value;
    }
    std::mem::take(&mut sums[full])
}

/// Label on the root edge of `tree` for `Ψ^T`.
fn tree_label(
    tree: &OrderedTree,
    leaves: &[Element],
    phi: &LinfMorphism,
    linear: &LinfMorphism,
) -> Element {
    match tree {
        OrderedTree::Leaf(l) => leaves[*l].clone(),
        OrderedTree::Node(kids) => {
            let labels: Vec<Element> = kids
                .iter()
                .map(|c| tree_label(c, leaves, phi, linear))
                .collect();
            if labels.iter().any(Element::is_zero) {
                return Element::zero();
            }
            let refs: Vec<&Element> = labels.iter().collect();
            let image = phi.apply(&refs).truncated(phi.target.dim());
            linear.apply(&[&image])
        }
    }
}

/// The ellipsoid morphism `ε: C_a -> C_o` for a given lattice path:
/// `ε^k(o_{i_1}, ..., o_{i_k}) = q_{i_1+...+i_k+k-1} / (Γ_{i_1}+...+Γ_{i_k})!`.
/// Both spaces are truncated to `path.len() - 1` generators.
pub fn ellipsoid_morphism(path: &[LatticePoint], max_arity: usize) -> Result<LinfMorphism> {
    let dim = path.len().saturating_sub(1);
    if dim == 0 {
        return Err(domain("the lattice path must reach index 1"));
    }
    let pdim = path[0].dim();
    let mut eps = LinfMorphism::new(
        BasedSpace::orbits(dim),
        BasedSpace::descendants(dim),
        max_arity,
    );
    for k in 1..=max_arity {
        for inputs in bounded_tuples(k, dim) {
            let out = inputs.iter().sum::<usize>() + k - 1;
            let total = sum_points(pdim, inputs.iter().map(|&i| &path[i]));
            let c = Rational::new(BigInt::one(), total.factorial());
            eps.set(&inputs, Element::term(out, c))?;
        }
    }
    Ok(eps)
}

/// Nondecreasing `k`-tuples of positive integers with `sum + k - 1 <= dim`.
fn bounded_tuples(k: usize, dim: usize) -> Vec<Vec<usize>> {
    fn go(
        start: usize,
        budget: usize,
        k: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let left = k - prefix.len();
        let mut i = start;
        while i * left <= budget {
            prefix.push(i);
            go(i, budget - i, k, prefix, out);
            prefix.pop();
            i += 1;
        }
    }
    let mut out = Vec::new();
    if dim + 1 >= k {
        go(1, dim + 1 - k, k, &mut Vec::new(), &mut out);
    }
    out
}

/// `ε_a` for a planar aspect ratio, truncated to `dim` generators.
pub fn ellipsoid_morphism_planar(
    a: AspectRatio,
    dim: usize,
    max_arity: usize,
) -> Result<LinfMorphism> {
    ellipsoid_morphism(&a.gamma_path(dim as u64), max_arity)
}

/// `ε_ā` for an aspect vector; ties in the path follow `ties`.
pub fn ellipsoid_morphism_vec(
    a: &AspectVector,
    dim: usize,
    max_arity: usize,
    ties: TieRule,
) -> Result<LinfMorphism> {
    let path = (0..=dim as u64)
        .map(|k| a.gamma_point(k, ties).map(|g| g.point))
        .collect::<Result<Vec<_>>>()?;
    ellipsoid_morphism(&path, max_arity)
}

/// Largest degree handled by [`linf_wt_t`] unless the caller overrides it.
pub const DEFAULT_LINF_BOUND: usize = 6;

/// `wtT_d^a` read off from the inverse `η_a = ε_a^{-1}`:
/// the coefficient of `o_{3d-1}` in
/// `sum over (d_1..d_k) of η_a^k(q_{3d_1-1}, ..., q_{3d_k-1}) / (k! prod (d_s!)^3)`.
pub fn linf_wt_t(d: usize, a: AspectRatio, inner: InnerSum) -> Result<Rational> {
    if d == 0 {
        return Err(domain("degree must be at least 1"));
    }
    let dim = 3 * d - 1;
    let eps = ellipsoid_morphism_planar(a, dim, d)?;
    eps.check_degrees()?;
    let eta = invert(&eps, d)?;
    Ok(linf_sum(d, &eta, inner))
}

/// Evaluates the degree-`d` sum given an already inverted `η`.
pub fn linf_sum(d: usize, eta: &LinfMorphism, inner: InnerSum) -> Rational {
    let cube = |x: usize| {
        let f = factorial(x);
        &f * &f * &f
    };
    let out_index = 3 * d - 1;
    let mut total = Rational::zero();
    match inner {
        InnerSum::Ordered => {
            for parts in compositions(d) {
                let k = parts.len();
                let denom = parts.iter().fold(factorial(k), |acc, &p| acc * cube(p));
                let inputs: Vec<usize> = parts.iter().map(|&p| 3 * p - 1).collect();
                let c = eta.get(&inputs).coeff(out_index);
                total += c / Rational::from_integer(denom);
            }
        }
        InnerSum::Multiset => {
            for parts in crate::combinat::partitions(d) {
                // ordered tuples per multiset = k! / prod m!, cancelling the k!
                let denom = multiplicities(&parts)
                    .into_iter()
                    .fold(BigInt::one(), |acc, m| acc * factorial(m));
                let denom = parts.iter().fold(denom, |acc, &p| acc * cube(p));
                let inputs: Vec<usize> = parts.iter().map(|&p| 3 * p - 1).collect();
                let c = eta.get(&inputs).coeff(out_index);
                total += c / Rational::from_integer(denom);
            }
        }
    }
    total
}
