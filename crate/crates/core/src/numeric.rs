//! Exact integer and rational arithmetic used throughout the crate.
//!
//! Big integers and reduced rationals come from `num-bigint`/`num-rational`;
//! this module adds the elementary counting functions on top of them.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Falling factorial `n (n-1) ... (n-m+1)`.
pub fn falling(n: u64, m: u64) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    (n - m + 1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(n, r)`, zero outside `0 <= r <= n`.
pub fn binomial(n: u64, r: i64) -> BigUint {
    if r < 0 || r as u64 > n {
        return BigUint::zero();
    }
    let r = (r as u64).min(n - r as u64);
    let mut acc = BigUint::one();
    for i in 0..r {
        // exact at every step: acc = C(n-r+i+1, i+1)
        acc = acc * (n - r + i + 1) / (i + 1);
    }
    acc
}

/// Multiset coefficient: the number of size-`j` multisets over `i` symbols.
pub fn multichoose(i: u64, j: u64) -> BigUint {
    match (i, j) {
        (_, 0) => BigUint::one(),
        (0, _) => BigUint::zero(),
        _ => binomial(i + j - 1, j as i64),
    }
}

/// Harmonic number `H_m = 1 + 1/2 + ... + 1/m`; `H_0 = 0`.
pub fn harmonic(m: u64) -> Rational {
    (1..=m).fold(Rational::zero(), |acc, i| {
        acc + Rational::new(BigInt::one(), BigInt::from(i))
    })
}

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_nat(v: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats as `num/den`, or just `num` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `num/den` or a bare integer; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(int(s.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

/// Serde adapter writing a [`Rational`] as its exact `num/den` string.
pub mod rational_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}
