//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.
#![allow(dead_code)]

pub mod expansions;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Argmin of `max{i, (p/q + δ) j}` over `i + j = k`, with `δ` replaced by a
/// concrete rational small enough not to reorder distinct values.
pub fn gamma_argmin(p: u64, qq: u64, k: u64) -> (u64, u64) {
    let r = |n: u64, d: u64| Ratio::<i128>::new(n as i128, d as i128);
    let a = r(p, qq) + r(1, 2 * qq * (k + 1));
    let mut best: Option<(Ratio<i128>, u64)> = None;
    for i in 0..=k {
        let j = k - i;
        let v = std::cmp::max(r(i, 1), a * r(j, 1));
        match &best {
            Some((b, _)) if *b <= v => {}
            _ => best = Some((v, i)),
        }
    }
    let i = best.unwrap().1;
    (i, k - i)
}

/// Weight of an aspect vector component: `(p/q, plus δ?)` or infinite.
#[derive(Clone, Copy, Debug)]
pub enum Weight {
    Exact(u64, u64),
    PlusDelta(u64, u64),
    Infinite,
}

/// All minimizers of `max_s a_s i_s` over compositions of `k` into
/// `weights.len()` nonnegative parts, with a concrete small `δ`.
pub fn vec_gamma_minimizers(weights: &[Weight], k: u64) -> Vec<Vec<u64>> {
    let n = weights.len();
    let big = q(1_000_000_000, 1);
    let delta = q(1, 1_000_000);
    let val = |w: &Weight, m: u64| -> BigRational {
        let m = q(m as i64, 1);
        match *w {
            Weight::Exact(p, d) => q(p as i64, d as i64) * m,
            Weight::PlusDelta(p, d) => (q(p as i64, d as i64) + &delta) * m,
            Weight::Infinite if m.is_zero() => BigRational::zero(),
            Weight::Infinite => &big * m,
        }
    };
    let mut all = Vec::new();
    let mut cur = vec![0u64; n];
    fn comps(pos: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[pos] = x;
            comps(pos + 1, left - x, cur, out);
        }
    }
    comps(0, k, &mut cur, &mut all);
    let score = |c: &Vec<u64>| {
        c.iter()
            .zip(weights)
            .map(|(&m, w)| val(w, m))
            .max()
            .unwrap()
    };
    let best = all.iter().map(score).min().unwrap();
    all.into_iter().filter(|c| score(c) == best).collect()
}

/// Unlabeled tree as a sorted list of children; a leaf has none.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Shape(pub Vec<Shape>);

impl Shape {
    pub fn leaves(&self) -> usize {
        if self.0.is_empty() {
            1
        } else {
            self.0.iter().map(Shape::leaves).sum()
        }
    }

    pub fn encode(&self) -> String {
        if self.0.is_empty() {
            "L".into()
        } else {
            let mut kids: Vec<String> = self.0.iter().map(Shape::encode).collect();
            kids.sort();
            format!("({})", kids.concat())
        }
    }
}

fn int_partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in int_partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Trees with `1..=max` leaves and no bivalent vertices, built as cartesian
/// products over integer partitions and deduplicated after sorting.
pub fn shapes_up_to(max: usize) -> Vec<Vec<Shape>> {
    let mut by_size: Vec<Vec<Shape>> = vec![vec![], vec![Shape(vec![])]];
    for n in 2..=max {
        let mut seen = BTreeSet::new();
        for parts in int_partitions(n, n).into_iter().filter(|p| p.len() >= 2) {
            let mut combos: Vec<Vec<Shape>> = vec![vec![]];
            for &part in &parts {
                let mut next = Vec::new();
                for c in &combos {
                    for s in &by_size[part] {
                        let mut v = c.clone();
                        v.push(s.clone());
                        next.push(v);
                    }
                }
                combos = next;
            }
            for mut kids in combos {
                kids.sort();
                seen.insert(Shape(kids));
            }
        }
        by_size.push(seen.into_iter().collect());
    }
    by_size
}

/// Number of series-reduced rooted trees with `n` unlabeled leaves, by
/// counting multisets of smaller trees (Euler transform).
pub fn series_reduced_counts(max: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(), BigInt::one()];
    for n in 2..=max {
        // coefficient of x^n in prod_{m<n} (1 - x^m)^{-a(m)}
        let mut poly = vec![BigInt::zero(); n + 1];
        poly[0] = BigInt::one();
        for m in 1..n {
            for _ in 0..usize::try_from(&a[m]).unwrap() {
                for e in m..=n {
                    let add = poly[e - m].clone();
                    poly[e] += add;
                }
            }
        }
        a.push(poly[n].clone());
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Labeled {
    Leaf(usize),
    Node(Vec<Labeled>),
}

fn label(shape: &Shape, labels: &mut impl Iterator<Item = usize>) -> Labeled {
    if shape.0.is_empty() {
        Labeled::Leaf(labels.next().unwrap())
    } else {
        let mut kids: Vec<Labeled> = shape.0.iter().map(|c| label(c, labels)).collect();
        kids.sort();
        Labeled::Node(kids)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `|T^or_d|` by labeling every shape in every possible way and counting
/// distinct labeled trees up to reordering children.
pub fn ordered_count_bruteforce(d: usize, shapes: &[Shape]) -> usize {
    let perms = permutations(d);
    let mut total = 0;
    for s in shapes {
        let mut seen = BTreeSet::new();
        for p in &perms {
            seen.insert(label(s, &mut p.iter().copied()));
        }
        total += seen.len();
    }
    total
}

/// `n!` by repeated multiplication.
pub fn fact(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The 25 aspect ratios (as `p/q`) used for path checks.
pub const TEST_FRACTIONS: [(u64, u64); 25] = [
    (1, 1),
    (3, 2),
    (2, 1),
    (5, 2),
    (7, 2),
    (5, 1),
    (100, 1),
    (1, 2),
    (1, 3),
    (2, 3),
    (4, 3),
    (5, 3),
    (7, 3),
    (8, 3),
    (5, 4),
    (7, 4),
    (13, 5),
    (21, 13),
    (34, 21),
    (13, 8),
    (17, 6),
    (9, 7),
    (22, 7),
    (355, 113),
    (61, 60),
];
