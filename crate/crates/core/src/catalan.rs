//! Closed-form coefficients: generalized Catalan numbers, the coefficients of
//! `log^a G_k`, return counts, composition sums and the harmonic-number
//! forms of the squared logarithm.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fps::gk_series;
use crate::numeric::{binomial, factorial, falling, from_nat, harmonic, int, rational_string, Rational};

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg()))
    }
}

/// `(1/n) C(kn, n-1)`; the constant term 1 for `n = 0`.
pub fn gen_catalan(k: u64, n: u64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let (q, r) = binomial(k * n, n as i64 - 1).div_rem(&BigUint::from(n));
    debug_assert!(r.is_zero());
    q
}

/// `[x^n] log G_k = (kn-1)! / ((kn-n)! n!)`, valid for `k >= 1`.
pub fn coeff_log(k: u64, n: u64) -> Result<Rational> {
    require(k >= 1, || format!("k must be at least 1, got {k}"))?;
    if n == 0 {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(
        BigInt::from(falling(k * n - 1, n - 1)),
        BigInt::from(factorial(n)),
    ))
}

/// Number of unlabeled k-good paths of size `n` touching the diagonal at
/// exactly `p` heights below the endpoint: `((k-1)p / (kn-p)) C(kn-p, n-p)`.
pub fn returns_count(k: u64, n: u64, p: u64) -> Result<BigUint> {
    require(k >= 2, || format!("k must be at least 2, got {k}"))?;
    require(p >= 1 && p <= n, || format!("p must lie in 1..={n}, got {p}"))?;
    let num = BigUint::from((k - 1) * p) * binomial(k * n - p, (n - p) as i64);
    let (q, r) = num.div_rem(&BigUint::from(k * n - p));
    debug_assert!(r.is_zero(), "c^({p})_{{{k},{n}}} not integral");
    Ok(q)
}

/// `[x^n] log G_k` as the sum over return counts `c^(p) / p`.
pub fn coeff_log_return_sum(k: u64, n: u64) -> Result<Rational> {
    (1..=n).try_fold(Rational::zero(), |acc, p| {
        Ok(acc + from_nat(returns_count(k, n, p)?) / int(p))
    })
}

/// `[x^n] log G_k` as `sum_p (k-1)/(kn-p) C(kn-p, n-p)`.
pub fn coeff_log_ratio_sum(k: u64, n: u64) -> Result<Rational> {
    require(k >= 2, || format!("k must be at least 2, got {k}"))?;
    Ok((1..=n)
        .map(|p| {
            Rational::new(
                BigInt::from(k - 1) * BigInt::from(binomial(k * n - p, (n - p) as i64)),
                BigInt::from(k * n - p),
            )
        })
        .sum())
}

/// Table `t[s][j]` = sum over compositions of `s` into `j` positive parts of
/// `1 / prod(parts)`, for `s <= p_max`, `j <= a_max`.
fn composition_table(p_max: u64, a_max: u64) -> Vec<Vec<Rational>> {
    let (p_max, a_max) = (p_max as usize, a_max as usize);
    let mut t = vec![vec![Rational::zero(); a_max + 1]; p_max + 1];
    t[0][0] = Rational::one();
    for j in 1..=a_max {
        for s in j..=p_max {
            let mut acc = Rational::zero();
            for last in 1..=s - (j - 1) {
                let rest = &t[s - last][j - 1];
                if !rest.is_zero() {
                    acc += rest / int(last as u64);
                }
            }
            t[s][j] = acc;
        }
    }
    t
}

/// `N_{p,a}`: sum over compositions `q_1 + ... + q_a = p` of `1 / prod q_i`.
/// Zero when `a > p`.
pub fn composition_sum(p: u64, a: u64) -> Result<Rational> {
    require(p >= 1 && a >= 1, || format!("p and a must be positive, got p={p}, a={a}"))?;
    if a > p {
        return Ok(Rational::zero());
    }
    Ok(composition_table(p, a)[p as usize][a as usize].clone())
}

/// `[x^n] log^a G_k = sum_{p=a}^{n} c^(p)_{k,n} N_{p,a}`; zero for `n < a`.
pub fn coeff_log_power(k: u64, n: u64, a: u64) -> Result<Rational> {
    require(k >= 2, || format!("k must be at least 2, got {k}"))?;
    require(a >= 1, || "the power a must be at least 1".into())?;
    if n < a {
        return Ok(Rational::zero());
    }
    let table = composition_table(n, a);
    (a..=n).try_fold(Rational::zero(), |acc, p| {
        Ok(acc + from_nat(returns_count(k, n, p)?) * &table[p as usize][a as usize])
    })
}

/// `(1/n) C(2n, n) (H_{2n-1} - H_n)`, the coefficient of `log^2 G_2`.
pub fn knuth_log2_coeff(n: u64) -> Result<Rational> {
    require(n >= 1, || "n must be at least 1".into())?;
    Ok(from_nat(binomial(2 * n, n as i64)) * (harmonic(2 * n - 1) - harmonic(n)) / int(n))
}

/// `2 sum_{p=2}^{n} (k-1)/(kn-p) C(kn-p, n-p) H_{p-1}`.
pub fn knuth_general_log2(k: u64, n: u64) -> Result<Rational> {
    require(k >= 2, || format!("k must be at least 2, got {k}"))?;
    require(n >= 1, || "n must be at least 1".into())?;
    let sum: Rational = (2..=n)
        .map(|p| {
            Rational::new(
                BigInt::from(k - 1) * BigInt::from(binomial(k * n - p, (n - p) as i64)),
                BigInt::from(k * n - p),
            ) * harmonic(p - 1)
        })
        .sum();
    Ok(sum * int(2))
}

/// Ornaments (equivalently label-minimal paths, root-minimal trees,
/// cycle-rooted trees) on `n` labels: `(kn-1)! / (kn-n)!`.
pub fn count_ornaments(k: u64, n: u64) -> Result<BigUint> {
    require(k >= 2 && n >= 1, || format!("need k >= 2 and n >= 1, got k={k}, n={n}"))?;
    Ok(falling(k * n - 1, n - 1))
}

/// Labeled k-good paths on `n` labels: `(n-1)! C(kn, n-1)`.
pub fn count_paths(k: u64, n: u64) -> Result<BigUint> {
    require(k >= 2 && n >= 1, || format!("need k >= 2 and n >= 1, got k={k}, n={n}"))?;
    Ok(factorial(n - 1) * binomial(k * n, n as i64 - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub n: u64,
    #[serde(with = "rational_string")]
    pub closed_form: Rational,
    #[serde(with = "rational_string")]
    pub series_value: Rational,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Closed-form coefficients of `log^power G_k` next to the series oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub k: u64,
    pub power: u64,
    pub rows: Vec<CoeffRow>,
}

impl CoeffTable {
    /// Rows `n = 1..=max_n`. Power 1 accepts `k >= 1`; higher powers need
    /// `k >= 2`.
    pub fn build(k: u64, max_n: u64, power: u64) -> Result<Self> {
        require(max_n >= 1, || "max_n must be at least 1".into())?;
        require(power >= 1, || "power must be at least 1".into())?;
        if power > 1 {
            require(k >= 2, || format!("powers above 1 need k >= 2, got k={k}"))?;
        }
        let k32 = u32::try_from(k).map_err(|_| Error::InvalidArgument("k too large".into()))?;
        let power32 =
            u32::try_from(power).map_err(|_| Error::InvalidArgument("power too large".into()))?;
        let oracle = gk_series(k32, max_n as usize).log()?.pow(power32);
        let rows = (1..=max_n)
            .map(|n| {
                let closed_form = if power == 1 {
                    coeff_log(k, n)?
                } else {
                    coeff_log_power(k, n, power)?
                };
                let series_value = oracle.coeff(n as usize);
                Ok(CoeffRow {
                    n,
                    matches: closed_form == series_value,
                    closed_form,
                    series_value,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoeffTable { k, power, rows })
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,closed_form,series_value,match\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.n, r.closed_form, r.series_value, r.matches
            ));
        }
        out
    }
}
