//! Staircase lattice paths `Γ^a_k` and the multiplicity `mult_a`.
//!
//! A finite aspect ratio `p/q` always means `p/q + δ` for an infinitesimal
//! `δ > 0`. Every comparison below is decided from `p` and `q` alone by
//! ordering first on the value at `δ = 0` and then on the coefficient of `δ`.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numerics::factorial;

/// A point of `Z_{>=0}^n`. The plane pipeline uses `n = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<u64>);

impl LatticePoint {
    pub fn new(coords: Vec<u64>) -> Self {
        LatticePoint(coords)
    }

    pub fn pair(i: u64, j: u64) -> Self {
        LatticePoint(vec![i, j])
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Sum of the coordinates.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `(i, j)` for a planar point; panics on other dimensions.
    pub fn as_pair(&self) -> (u64, u64) {
        assert_eq!(self.0.len(), 2, "not a planar lattice point");
        (self.0[0], self.0[1])
    }

    pub fn scale(&self, m: u64) -> Self {
        LatticePoint(self.0.iter().map(|c| c * m).collect())
    }

    /// Product of the factorials of the coordinates, `(i, j)! = i! j!`.
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, &c| acc * factorial(c as usize))
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;

    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;

    fn add(self, rhs: LatticePoint) -> LatticePoint {
        &self + &rhs
    }
}

/// Sum of a family of points of dimension `dim`.
pub fn sum_points<'a>(dim: usize, pts: impl IntoIterator<Item = &'a LatticePoint>) -> LatticePoint {
    pts.into_iter()
        .fold(LatticePoint::zero(dim), |acc, p| &acc + p)
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, c) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Aspect ratio `a` of the ellipsoid `E(1, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AspectRatio {
    /// `a >> d`; the path is `Γ_k = (k, 0)`.
    Infinity,
    /// `p/q + δ`, with `gcd(p, q) = 1`.
    PlusDelta { p: u64, q: u64 },
}

impl AspectRatio {
    pub fn plus_delta(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(domain(format!("aspect ratio {p}/{q} must be positive")));
        }
        let g = p.gcd(&q);
        Ok(AspectRatio::PlusDelta { p: p / g, q: q / g })
    }

    /// Whether `a > 1`, the range in which all published evaluations live.
    pub fn above_one(&self) -> bool {
        match *self {
            AspectRatio::Infinity => true,
            AspectRatio::PlusDelta { p, q } => p >= q,
        }
    }

    /// `Γ^a_k`: the `(i, j)` with `i + j = k` minimizing `max{i, a j}`.
    pub fn gamma_point(&self, k: u64) -> LatticePoint {
        match *self {
            AspectRatio::Infinity => LatticePoint::pair(k, 0),
            AspectRatio::PlusDelta { p, q } => {
                // max{i, (p/q + δ) j} scaled by q, then the δ-slope of the max.
                let key = |i: u64, j: u64| {
                    let (iq, pj) = (i as u128 * q as u128, p as u128 * j as u128);
                    let slope = if iq > pj { 0 } else { j };
                    (iq.max(pj), slope)
                };
                let i = (0..=k)
                    .min_by_key(|&i| key(i, k - i))
                    .expect("range is nonempty");
                LatticePoint::pair(i, k - i)
            }
        }
    }

    /// `[Γ_0, ..., Γ_{k_max}]`, built one unit step at a time.
    pub fn gamma_path(&self, k_max: u64) -> Vec<LatticePoint> {
        let mut out = Vec::with_capacity(k_max as usize + 1);
        let (mut i, mut j) = (0u64, 0u64);
        out.push(LatticePoint::pair(0, 0));
        for _ in 0..k_max {
            match *self {
                AspectRatio::Infinity => i += 1,
                AspectRatio::PlusDelta { p, q } => {
                    // i + 1 <= (p/q + δ)(j + 1); equality goes to i.
                    if (i + 1) as u128 * q as u128 <= p as u128 * (j + 1) as u128 {
                        i += 1;
                    } else {
                        j += 1;
                    }
                }
            }
            out.push(LatticePoint::pair(i, j));
        }
        out
    }

    /// `mult_a(i, j)`: `i` if `i > a j`, otherwise `j`.
    pub fn mult(&self, pt: &LatticePoint) -> Result<u64> {
        if pt.dim() != 2 {
            return Err(domain(format!("mult needs a planar point, got {pt}")));
        }
        let (i, j) = pt.as_pair();
        if i + j == 0 {
            return Err(domain("mult is undefined at (0,0)"));
        }
        let i_wins = match *self {
            AspectRatio::Infinity => j == 0,
            AspectRatio::PlusDelta { p, q } => i as u128 * q as u128 > p as u128 * j as u128,
        };
        Ok(if i_wins { i } else { j })
    }

    /// The two-component aspect vector `(1, a)`.
    pub fn as_vector(&self) -> AspectVector {
        let second = match *self {
            AspectRatio::Infinity => AspectComponent::Infinity,
            AspectRatio::PlusDelta { p, q } => AspectComponent::PlusDelta(p, q),
        };
        AspectVector::new(vec![AspectComponent::Exact(1, 1), second]).expect("valid components")
    }
}

impl fmt::Display for AspectRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AspectRatio::Infinity => write!(f, "inf"),
            AspectRatio::PlusDelta { p, q: 1 } => write!(f, "{p}+delta"),
            AspectRatio::PlusDelta { p, q } => write!(f, "{p}/{q}+delta"),
        }
    }
}

impl FromStr for AspectRatio {
    type Err = Error;

    /// Accepts `inf`, `p`, `p/q`, each optionally suffixed by `+delta`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "aspect ratio",
            input: s.to_string(),
        };
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(AspectRatio::Infinity);
        }
        let t = t.strip_suffix("+delta").unwrap_or(t);
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p, q),
            None => (t, "1"),
        };
        let p: u64 = p.parse().map_err(|_| err())?;
        let q: u64 = q.parse().map_err(|_| err())?;
        AspectRatio::plus_delta(p, q).map_err(|_| err())
    }
}

impl Serialize for AspectRatio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AspectRatio {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One weight `a_s` of an aspect vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AspectComponent {
    /// Exactly `p/q`.
    Exact(u64, u64),
    /// `p/q + δ`.
    PlusDelta(u64, u64),
    Infinity,
}

/// Value of `a_s * m`, ordered as (infinite?, value at δ = 0, δ-coefficient).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Level(bool, Ratio<u128>, u128);

impl AspectComponent {
    fn level(&self, m: u64) -> Level {
        let m128 = m as u128;
        match *self {
            AspectComponent::Exact(p, q) => {
                Level(false, Ratio::new(p as u128 * m128, q as u128), 0)
            }
            AspectComponent::PlusDelta(p, q) => {
                Level(false, Ratio::new(p as u128 * m128, q as u128), m128)
            }
            AspectComponent::Infinity if m == 0 => Level(false, Ratio::from_integer(0), 0),
            AspectComponent::Infinity => Level(true, Ratio::from_integer(0), 0),
        }
    }
}

/// Tuple `(a_1, ..., a_n)` of positive weights, `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AspectVector(Vec<AspectComponent>);

/// How to break ties between equally good compositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieRule {
    /// Put as much mass as possible on the lowest coordinate index.
    #[default]
    Lexicographic,
    /// Report the tie as [`Error::Ambiguous`].
    Reject,
}

/// Result of [`AspectVector::gamma_point`]: the point and whether a tie was
/// broken to obtain it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecGamma {
    pub point: LatticePoint,
    pub tied: bool,
}

impl AspectVector {
    pub fn new(components: Vec<AspectComponent>) -> Result<Self> {
        if components.len() < 2 {
            return Err(domain("aspect vectors need at least two components"));
        }
        for c in &components {
            if let AspectComponent::Exact(p, q) | AspectComponent::PlusDelta(p, q) = *c {
                if p == 0 || q == 0 {
                    return Err(domain(format!("component {p}/{q} must be positive")));
                }
            }
        }
        Ok(AspectVector(components))
    }

    pub fn components(&self) -> &[AspectComponent] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `Γ^ā_k`: the composition of `k` into `n` parts minimizing
    /// `max_s a_s i_s`.
    pub fn gamma_point(&self, k: u64, ties: TieRule) -> Result<VecGamma> {
        let n = self.dim();
        if k == 0 {
            return Ok(VecGamma {
                point: LatticePoint::zero(n),
                tied: false,
            });
        }
        let cap = |c: &AspectComponent, v: &Level| -> u64 {
            (0..=k)
                .take_while(|&m| c.level(m) <= *v)
                .last()
                .unwrap_or(0)
        };
        let mut candidates: Vec<Level> = self
            .0
            .iter()
            .flat_map(|c| (1..=k).map(move |m| c.level(m)))
            .collect();
        candidates.sort();
        candidates.dedup();
        let (best, caps) = candidates
            .iter()
            .find_map(|v| {
                let caps: Vec<u64> = self.0.iter().map(|c| cap(c, v)).collect();
                (caps.iter().sum::<u64>() >= k).then_some((*v, caps))
            })
            .expect("the largest candidate level is always feasible");
        let slack: u64 = caps.iter().sum::<u64>() - k;
        if slack > 0 && ties == TieRule::Reject {
            return Err(Error::Ambiguous(format!(
                "capacity exceeds k = {k} by {slack} at the minimal max {best:?}"
            )));
        }
        let mut remaining = k;
        let coords = caps
            .iter()
            .map(|&c| {
                let take = c.min(remaining);
                remaining -= take;
                take
            })
            .collect();
        Ok(VecGamma {
            point: LatticePoint::new(coords),
            tied: slack > 0,
        })
    }
}
