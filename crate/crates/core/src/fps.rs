//! Truncated formal power series over exact rationals.
//!
//! A [`Series`] of order `N` holds `c_0 .. c_N` and all arithmetic is exact
//! modulo `x^{N+1}`. Operands of different orders are rejected rather than
//! re-truncated.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, int, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Builds a series of order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        Ok(Series { coeffs })
    }

    /// Pads with zeros (or truncates) to the requested order.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Series { coeffs }
    }

    pub fn from_ints(values: &[i64], order: usize) -> Self {
        Self::from_coeffs(values.iter().map(|&v| int(v)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::from_coeffs(vec![c], order)
    }

    /// The series `x` (or zero when `order == 0`).
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[x^n]`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Series { coeffs: out })
    }

    /// Multiplication by `x`, dropping the term that falls off the end.
    pub fn shift(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        Series { coeffs }
    }

    pub fn pow(&self, a: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..a {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    fn derivative_coeff(&self, n: usize) -> Rational {
        self.coeff(n + 1) * int(n as i64 + 1)
    }

    /// Logarithm of a series with constant term 1, via `L' = f'/f`.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm {
                op: "log",
                expected: 1,
            });
        }
        let order = self.order();
        // h = f'/f up to x^{order-1}, using f_0 = 1
        let mut h: Vec<Rational> = Vec::with_capacity(order);
        for n in 0..order {
            let mut v = self.derivative_coeff(n);
            for j in 1..=n {
                v -= &self.coeffs[j] * &h[n - j];
            }
            h.push(v);
        }
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(
            h.into_iter()
                .enumerate()
                .map(|(i, v)| v / int(i as i64 + 1)),
        );
        Ok(Series { coeffs })
    }

    /// Exponential of a series with constant term 0, via `E' = L' E`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                op: "exp",
                expected: 0,
            });
        }
        let order = self.order();
        let mut e: Vec<Rational> = vec![Rational::one()];
        for n in 1..=order {
            let mut v = Rational::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    v += &self.coeffs[j] * int(j as i64) * &e[n - j];
                }
            }
            e.push(v / int(n as i64));
        }
        Ok(Series { coeffs: e })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Series> {
        let coeffs = items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Series::new(coeffs)
    }
}

/// The generalized Catalan series: the unique `G` with `G(0) = 1` and
/// `G = 1 + x G^k` modulo `x^{order+1}`.
pub fn gk_series(k: u32, order: usize) -> Series {
    let one = Series::one(order);
    let mut g = one.clone();
    // each round fixes at least one more coefficient
    for _ in 0..=order {
        let next = one.add(&g.pow(k).shift()).expect("same order");
        if next == g {
            break;
        }
        g = next;
    }
    g
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{n}")?,
            }
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}
