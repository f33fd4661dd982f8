//! `wtT_d^a` and `T_d^a` by three routes, plus reconciliation and scans.
//!
//! `wtT_d^a = mult_a(Γ_{3d-1}) · T_d^a`. Every formula depends on `a` only
//! through the path prefix `Γ_0, ..., Γ_{3d-1}`, so the recursion memo is
//! keyed by that prefix.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{compositions, multiplicities, partitions};
use crate::error::{domain, Error, Result};
use crate::lattice::{sum_points, AspectRatio, LatticePoint};
use crate::linf::{linf_wt_t, DEFAULT_LINF_BOUND};
use crate::numerics::{binomial, factorial, is_nonnegative_integer, serde_rational, Rational};
use crate::trees::{enumerate_trees, Tree};

/// How to sum over splittings `d = d_1 + ... + d_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InnerSum {
    /// Ordered tuples, weighted by `1/k!`.
    #[default]
    Ordered,
    /// Multisets, weighted by `1/prod(m_i!)`.
    Multiset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Recursion,
    Tree,
    /// Closed tree formula specialized to `a = ∞`.
    TreeInf,
    Linf,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Recursion,
        Method::Tree,
        Method::TreeInf,
        Method::Linf,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Recursion => "recursion",
            Method::Tree => "tree",
            Method::TreeInf => "tree-inf",
            Method::Linf => "linf",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "method",
                input: s.to_string(),
            })
    }
}

/// `Γ_0, ..., Γ_{3d-1}`.
pub fn path_prefix(a: AspectRatio, d: usize) -> Vec<LatticePoint> {
    a.gamma_path(3 * d as u64 - 1)
}

type PrefixMemo = RwLock<HashMap<(usize, Vec<LatticePoint>), Rational>>;

fn memo() -> &'static PrefixMemo {
    static MEMO: OnceLock<PrefixMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cube(n: usize) -> BigInt {
    let f = factorial(n);
    &f * &f * &f
}

/// Recursion over splittings of `d`.
///
/// `wtT_d = Γ_{3d-1}! ((d!)^{-3} - sum_{k>=2} wtT_{d_1}...wtT_{d_k} / (k! (Γ_{3d_1-1}+...+Γ_{3d_k-1})!))`
pub fn recursion_wt_t(d: usize, a: AspectRatio, inner: InnerSum) -> Result<Rational> {
    if d == 0 {
        return Err(domain("degree must be at least 1"));
    }
    let path = path_prefix(a, d);
    Ok(recursion_on_path(&path, d, inner))
}

/// Same as [`recursion_wt_t`] for an explicit path reaching at least `3d-1`.
pub fn recursion_on_path(path: &[LatticePoint], d: usize, inner: InnerSum) -> Rational {
    assert!(path.len() >= 3 * d, "path too short for degree {d}");
    let mut values: Vec<Rational> = vec![Rational::zero()];
    for e in 1..=d {
        let key = (e, path[..3 * e].to_vec());
        let cached = memo().read().expect("memo poisoned").get(&key).cloned();
        // Only the ordered route feeds the shared memo, so the multiset route
        // stays an independent evaluation.
        let v = match (cached, inner) {
            (Some(v), InnerSum::Ordered) => v,
            (_, InnerSum::Ordered) => {
                let v = recursion_step(path, e, &values, inner);
                memo()
                    .write()
                    .expect("memo poisoned")
                    .entry(key)
                    .or_insert_with(|| v.clone());
                v
            }
            (_, InnerSum::Multiset) => recursion_step(path, e, &values, inner),
        };
        values.push(v);
    }
    values.pop().unwrap()
}

fn recursion_step(
    path: &[LatticePoint],
    d: usize,
    lower: &[Rational],
    inner: InnerSum,
) -> Rational {
    let dim = path[0].dim();
    let gamma = |e: usize| &path[3 * e - 1];
    let mut correction = Rational::zero();
    let splits: Vec<(Vec<usize>, BigInt)> = match inner {
        InnerSum::Ordered => compositions(d)
            .into_iter()
            .filter(|c| c.len() >= 2)
            .map(|c| {
                let w = factorial(c.len());
                (c, w)
            })
            .collect(),
        InnerSum::Multiset => partitions(d)
            .into_iter()
            .filter(|p| p.len() >= 2)
            .map(|p| {
                let w = multiplicities(&p)
                    .into_iter()
                    .fold(BigInt::one(), |acc, m| acc * factorial(m));
                (p, w)
            })
            .collect(),
    };
    for (parts, weight) in splits {
        let numer = parts
            .iter()
            .fold(Rational::one(), |acc, &p| acc * &lower[p]);
        let total = sum_points(dim, parts.iter().map(|&p| gamma(p)));
        correction += numer / Rational::from_integer(weight * total.factorial());
    }
    let base = Rational::new(BigInt::one(), cube(d));
    Rational::from_integer(gamma(d).factorial()) * (base - correction)
}

/// One summand of the closed tree formula, before the `(Γ_2!)^d` prefactor.
#[derive(Clone, Debug)]
pub struct TreeTerm {
    pub tree: Tree,
    /// `(-1)^{#unmovable internal vertices}`.
    pub sign: i8,
    pub value: Rational,
}

/// Summands of the tree formula over all trees with `d` leaves, in
/// canonical tree order.
pub fn tree_terms(d: usize, a: AspectRatio) -> Result<Vec<TreeTerm>> {
    let trees = enumerate_trees(d)?;
    let path = path_prefix(a, d);
    let dim = path[0].dim();
    let g = |l: usize| &path[3 * l - 1];
    let g2 = path[2].clone();
    let g2_fact = Rational::from_integer(g2.factorial());
    let terms = trees
        .par_iter()
        .map(|t| {
            let mut value = Rational::new(BigInt::one(), t.aut_order().clone());
            let mut unmovable = 0usize;
            for v in t.vertex_data() {
                let below = sum_points(dim, v.child_leaf_numbers.iter().map(|&l| g(l)));
                value *= Rational::new(g(v.leaf_number).factorial(), below.factorial());
                if v.movable {
                    let l = v.leaf_number;
                    let lf = Rational::from_integer(factorial(l));
                    let scaled = Rational::from_integer(g2.scale(l as u64).factorial());
                    value *= scaled / (&lf * &lf) / num_traits::pow(g2_fact.clone(), l)
                        - Rational::one();
                } else {
                    unmovable += 1;
                }
            }
            let sign: i8 = if unmovable.is_even() { 1 } else { -1 };
            if sign < 0 {
                value = -value;
            }
            TreeTerm {
                tree: t.clone(),
                sign,
                value,
            }
        })
        .collect();
    Ok(terms)
}

/// Closed sum over trees with `d` unordered leaves.
pub fn tree_wt_t(d: usize, a: AspectRatio) -> Result<Rational> {
    if d == 0 {
        return Err(domain("degree must be at least 1"));
    }
    let g2_fact = Rational::from_integer(a.gamma_point(2).factorial());
    let sum = tree_terms(d, a)?
        .into_iter()
        .fold(Rational::zero(), |acc, t| acc + t.value);
    Ok(num_traits::pow(g2_fact, d) * sum)
}

/// Tree formula at `a = ∞`, where `Γ_k = (k, 0)`: each internal vertex
/// contributes `(3ℓ-1)!/(3ℓ-|v|+1)!` and each movable one
/// `2^{-ℓ} binom(2ℓ, ℓ) - 1`.
pub fn tree_wt_t_infinity(d: usize) -> Result<Rational> {
    let trees = enumerate_trees(d)?;
    let terms: Vec<Rational> = trees
        .par_iter()
        .map(|t| {
            let mut value = Rational::new(BigInt::one(), t.aut_order().clone());
            let mut unmovable = 0usize;
            for v in t.vertex_data() {
                let l = v.leaf_number;
                value *= Rational::new(factorial(3 * l - 1), factorial(3 * l + 1 - v.valency));
                if v.movable {
                    value *= movable_factor_infinity(l);
                } else {
                    unmovable += 1;
                }
            }
            if unmovable.is_odd() {
                -value
            } else {
                value
            }
        })
        .collect();
    let sum = terms.into_iter().fold(Rational::zero(), |acc, x| acc + x);
    Ok(Rational::from_integer(BigInt::from(2).pow(d as u32)) * sum)
}

/// `2^{-ℓ} binom(2ℓ, ℓ) - 1`.
pub fn movable_factor_infinity(l: usize) -> Rational {
    let b = binomial(2 * l, l).expect("l <= 2l");
    Rational::new(b, BigInt::from(2).pow(l as u32)) - Rational::one()
}

/// Computed superpotential value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperpotentialResult {
    pub d: usize,
    pub a: AspectRatio,
    #[serde(rename = "wtT", with = "serde_rational")]
    pub wt_t: Rational,
    pub mult: u64,
    #[serde(rename = "T", with = "serde_rational")]
    pub t: Rational,
    pub method: Method,
}

/// `wtT_d^a` by the chosen method.
pub fn wt_t(d: usize, a: AspectRatio, method: Method, linf_bound: usize) -> Result<Rational> {
    if d == 0 {
        return Err(domain("degree must be at least 1"));
    }
    match method {
        Method::Recursion => recursion_wt_t(d, a, InnerSum::Ordered),
        Method::Tree => tree_wt_t(d, a),
        Method::TreeInf => {
            if a != AspectRatio::Infinity {
                return Err(Error::Refused(format!(
                    "method tree-inf only applies to a = inf, got {a}; use --method tree"
                )));
            }
            tree_wt_t_infinity(d)
        }
        Method::Linf => {
            if d > linf_bound {
                return Err(Error::Refused(format!(
                    "linf is limited to d <= {linf_bound}; raise the bound or use --method tree"
                )));
            }
            linf_wt_t(d, a, InnerSum::Ordered)
        }
    }
}

/// `mult_a(Γ_{3d-1})`.
pub fn multiplier(d: usize, a: AspectRatio) -> Result<u64> {
    if d == 0 {
        return Err(domain("degree must be at least 1"));
    }
    a.mult(&a.gamma_point(3 * d as u64 - 1))
}

pub fn superpotential(
    d: usize,
    a: AspectRatio,
    method: Method,
    linf_bound: usize,
) -> Result<SuperpotentialResult> {
    let wt_t = wt_t(d, a, method, linf_bound)?;
    let mult = multiplier(d, a)?;
    let t = &wt_t / Rational::from_integer(BigInt::from(mult));
    Ok(SuperpotentialResult {
        d,
        a,
        wt_t,
        mult,
        t,
        method,
    })
}

/// `T_d^a` by the default (tree) method.
pub fn t_value(d: usize, a: AspectRatio) -> Result<Rational> {
    Ok(superpotential(d, a, Method::Tree, DEFAULT_LINF_BOUND)?.t)
}

/// Per-method outcome of [`cross_validate`].
#[derive(Clone, Debug, Serialize)]
pub struct MethodRun {
    pub method: Method,
    #[serde(rename = "wtT", with = "serde_rational")]
    pub wt_t: Rational,
    #[serde(skip)]
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossReport {
    pub d: usize,
    pub a: AspectRatio,
    #[serde(rename = "wtT", with = "serde_rational")]
    pub wt_t: Rational,
    pub mult: u64,
    #[serde(rename = "T", with = "serde_rational")]
    pub t: Rational,
    pub runs: Vec<MethodRun>,
}

/// Runs every applicable method and requires exact agreement.
pub fn cross_validate(d: usize, a: AspectRatio, linf_bound: usize) -> Result<CrossReport> {
    let mut methods = vec![Method::Recursion, Method::Tree];
    if a == AspectRatio::Infinity {
        methods.push(Method::TreeInf);
    }
    if d <= linf_bound {
        methods.push(Method::Linf);
    }
    let mut runs = Vec::new();
    for m in methods {
        let start = Instant::now();
        let v = wt_t(d, a, m, linf_bound)?;
        runs.push(MethodRun {
            method: m,
            wt_t: v,
            millis: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    let reference = runs[0].wt_t.clone();
    if runs.iter().any(|r| r.wt_t != reference) {
        let dump: Vec<String> = runs
            .iter()
            .map(|r| format!("{}={}", r.method, r.wt_t))
            .collect();
        let prefix: Vec<String> = path_prefix(a, d).iter().map(|p| p.to_string()).collect();
        return Err(Error::Disagreement(format!(
            "d={d} a={a}: {}; path prefix {}",
            dump.join(", "),
            prefix.join(" ")
        )));
    }
    let mult = multiplier(d, a)?;
    let t = &reference / Rational::from_integer(BigInt::from(mult));
    Ok(CrossReport {
        d,
        a,
        wt_t: reference,
        mult,
        t,
        runs,
    })
}

/// Reduced fractions `p/q > 1` with `p + q <= bound`, ascending.
pub fn breakpoints(bound: u64) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = (1..bound)
        .flat_map(|q| (q + 1..=bound.saturating_sub(q)).map(move |p| (p, q)))
        .filter(|&(p, q)| p.gcd(&q) == 1)
        .collect();
    out.sort_by(|&(p1, q1), &(p2, q2)| (p1 * q2).cmp(&(p2 * q1)));
    out
}

/// One interval of constant path prefix.
#[derive(Clone, Debug, Serialize)]
pub struct ScanInterval {
    /// Left endpoint; the interval is open on both sides.
    pub from: String,
    /// Right endpoint, or `"inf"`.
    pub to: String,
    pub representative: AspectRatio,
    #[serde(rename = "wtT", with = "serde_rational")]
    pub wt_t: Rational,
    pub mult: u64,
    #[serde(rename = "T", with = "serde_rational")]
    pub t: Rational,
    /// The interior probe has the same path prefix and value.
    pub probe_agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    pub d: usize,
    pub intervals: Vec<ScanInterval>,
    pub nondecreasing: bool,
    /// Adjacent intervals where `T` drops, as indices into `intervals`.
    pub drops: Vec<usize>,
}

/// Piecewise-constant profile of `a -> T_d^a` on `a > 1`.
///
/// The prefix `Γ_0..Γ_{3d-1}` is decided by comparing `i + 1` with
/// `a (j + 1)` where `(i + 1) + (j + 1) <= 3d`, so it is constant between
/// consecutive fractions `p/q` with `p + q <= 3d`.
pub fn scan_monotonicity(d: usize) -> Result<MonotonicityReport> {
    if d == 0 {
        return Err(domain("degree must be at least 1"));
    }
    let points = breakpoints(3 * d as u64);
    let mut intervals = Vec::new();
    let mut left = (1u64, 1u64);
    for right in points.iter().copied().map(Some).chain([None]) {
        let rep = AspectRatio::plus_delta(left.0, left.1)?;
        let probe = match right {
            Some((p, q)) => AspectRatio::plus_delta(left.0 * q + p * left.1, 2 * left.1 * q)?,
            None => AspectRatio::Infinity,
        };
        let r = superpotential(d, rep, Method::Tree, 0)?;
        let probe_agrees = path_prefix(rep, d) == path_prefix(probe, d)
            && superpotential(d, probe, Method::Tree, 0)?.t == r.t;
        intervals.push(ScanInterval {
            from: fraction(left),
            to: right.map(fraction).unwrap_or_else(|| "inf".to_string()),
            representative: rep,
            wt_t: r.wt_t,
            mult: r.mult,
            t: r.t,
            probe_agrees,
        });
        if let Some(r) = right {
            left = r;
        }
    }
    let drops: Vec<usize> = (1..intervals.len())
        .filter(|&i| intervals[i].t < intervals[i - 1].t)
        .collect();
    for &i in &drops {
        for iv in &intervals[i - 1..=i] {
            cross_validate(d, iv.representative, 0)?;
        }
    }
    Ok(MonotonicityReport {
        d,
        nondecreasing: drops.is_empty(),
        drops,
        intervals,
    })
}

fn fraction((p, q): (u64, u64)) -> String {
    if q == 1 {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityRow {
    pub p: u64,
    pub q: u64,
    #[serde(rename = "wtT", with = "serde_rational")]
    pub wt_t: Rational,
    pub mult: u64,
    #[serde(rename = "T", with = "serde_rational")]
    pub t: Rational,
    pub nonnegative_integer: bool,
    /// `(p-1)(q-1) <= (d-1)(d-2)`.
    pub adjunction_allows: bool,
    pub nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityReport {
    pub d: usize,
    pub rows: Vec<IntegralityRow>,
    pub all_nonnegative_integers: bool,
}

/// `T_d^{p/q}` for every reduced `p/q > 1` with `p + q = 3d`.
pub fn integrality_scan(d: usize) -> Result<IntegralityReport> {
    if d == 0 {
        return Err(domain("degree must be at least 1"));
    }
    let sum = 3 * d as u64;
    let mut rows = Vec::new();
    for q in 1..sum {
        let p = sum - q;
        if p <= q || p.gcd(&q) != 1 {
            continue;
        }
        let r = superpotential(d, AspectRatio::plus_delta(p, q)?, Method::Tree, 0)?;
        let dd = d as u64;
        rows.push(IntegralityRow {
            p,
            q,
            nonnegative_integer: is_nonnegative_integer(&r.t),
            adjunction_allows: (p - 1) * (q - 1) <= (dd - 1) * dd.saturating_sub(2),
            nonzero: !r.t.is_zero(),
            wt_t: r.wt_t,
            mult: r.mult,
            t: r.t,
        });
    }
    let all = rows.iter().all(|r| r.nonnegative_integer);
    Ok(IntegralityReport {
        d,
        rows,
        all_nonnegative_integers: all,
    })
}
