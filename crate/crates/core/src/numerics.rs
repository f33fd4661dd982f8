//! Exact integer and rational arithmetic.
//!
//! Rationals are [`num_rational::BigRational`], which is always kept in lowest
//! terms with a positive denominator, so structural equality is value
//! equality. Factorials are served from a process-wide cache that only grows.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

fn cache() -> &'static RwLock<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `n!`, memoized.
pub fn factorial(n: usize) -> BigInt {
    {
        let table = cache().read().expect("factorial cache poisoned");
        if let Some(v) = table.get(n) {
            return v.clone();
        }
    }
    let mut table = cache().write().expect("factorial cache poisoned");
    while table.len() <= n {
        let next = table.last().unwrap() * BigInt::from(table.len());
        table.push(next);
    }
    table[n].clone()
}

/// Number of cached factorial entries; exposed for tests.
pub fn factorial_cache_len() -> usize {
    cache().read().expect("factorial cache poisoned").len()
}

/// `n choose k`.
pub fn binomial(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(domain(format!("binomial({n}, {k}) needs k <= n")));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    Ok(acc)
}

/// Multinomial coefficient `(sum parts)! / prod(parts!)`.
pub fn multinomial(parts: &[usize]) -> BigInt {
    let total: usize = parts.iter().sum();
    let denom = parts
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * factorial(p));
    factorial(total) / denom
}

/// Shorthand for building a rational from machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"p/q"` or `"p"` into a rational. Whitespace around the parts is
/// not accepted; the format matches what [`Rational`]'s `Display` produces.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// True when `x` is an integer that is at least zero.
pub fn is_nonnegative_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
