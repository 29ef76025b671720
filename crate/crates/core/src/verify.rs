//! Verification suites over a grid of `(k, n)` points: closed forms against
//! series arithmetic, counts against exhaustive enumeration, bijection
//! roundtrips, and statistic preservation.

use std::collections::BTreeSet;
use std::fmt::{self, Write};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalan::{
    coeff_log, coeff_log_power, coeff_log_ratio_sum, coeff_log_return_sum, count_ornaments,
    count_paths, knuth_general_log2, knuth_log2_coeff, returns_count,
};
use crate::error::{Error, Result};
use crate::fps::{gk_series, Series};
use crate::multisets::{
    count_multisets, enumerate_multisets, ornament_to_cycle_tree, pi_decode, pi_encode,
    root_vertices, tau_decode, tau_encode,
};
use crate::numeric::{factorial, from_nat, int, Rational};
use crate::paths::{
    decompose, enumerate_fields, enumerate_minimal_paths, enumerate_ornaments, enumerate_paths,
    recompose, touch_distribution,
};
use crate::trees::{
    cycle_length_distribution, cycle_to_min, enumerate_cycle_rooted, enumerate_minimal_trees,
    enumerate_trees, forest_to_tree, min_to_cycle, tree_to_forest,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Series,
    Counts,
    Bijections,
    Statistics,
    All,
}

impl Suite {
    const PARTS: [Suite; 4] = [Suite::Series, Suite::Counts, Suite::Bijections, Suite::Statistics];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Series => "series",
            Suite::Counts => "counts",
            Suite::Bijections => "bijections",
            Suite::Statistics => "statistics",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::PARTS
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Enumeration cap; `None` disables it.
    pub cap: Option<u64>,
    /// Perturbs every closed form by one, for testing the failure path.
    pub inject_fault: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointStatus {
    pub suite: Suite,
    pub k: u32,
    pub n: u32,
    pub checks: usize,
    pub pass: bool,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub points: Vec<PointStatus>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for p in &self.points {
            writeln!(
                out,
                "{:<10} k={} n={:<3} {} ({} checks){}",
                p.suite.name(),
                p.k,
                p.n,
                if p.pass { "pass" } else { "FAIL" },
                p.checks,
                if p.pass { String::new() } else { format!(": {}", p.message) }
            )
            .unwrap();
        }
        writeln!(out, "overall: {}", if self.overall { "pass" } else { "FAIL" }).unwrap();
        out
    }
}

#[derive(Default)]
struct Checks {
    total: usize,
    failed: Vec<String>,
}

impl Checks {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.total += 1;
        if !ok {
            self.failed.push(name.into());
        }
    }

    fn into_status(self, suite: Suite, k: u32, n: u32) -> PointStatus {
        PointStatus {
            suite,
            k,
            n,
            checks: self.total,
            pass: self.failed.is_empty(),
            message: if self.failed.is_empty() {
                "ok".into()
            } else {
                format!("failed: {}", self.failed.join("; "))
            },
        }
    }
}

struct Ctx<'a> {
    opts: &'a VerifyOptions,
}

impl Ctx<'_> {
    fn nat(&self, x: BigUint) -> BigUint {
        if self.opts.inject_fault {
            x + 1u32
        } else {
            x
        }
    }

    fn rat(&self, x: Rational) -> Rational {
        if self.opts.inject_fault {
            x + Rational::one()
        } else {
            x
        }
    }
}

fn big(len: usize) -> BigUint {
    BigUint::from(len)
}

fn series_point(ctx: &Ctx, k: u32, n: u32, log: &Series, closure: &Series) -> Result<Checks> {
    let (ku, nu) = (k as u64, n as u64);
    let mut c = Checks::default();
    let target = log.coeff(n as usize);
    c.check("coeff_log", ctx.rat(coeff_log(ku, nu)?) == target);
    c.check("functional equation", closure.coeff(n as usize).is_zero());
    if k >= 2 {
        c.check("return-count sum", coeff_log_return_sum(ku, nu)? == target);
        c.check("ratio sum", coeff_log_ratio_sum(ku, nu)? == target);
        for a in 2..=3u32 {
            let power = log.pow(a);
            c.check(
                format!("coeff_log_power a={a}"),
                ctx.rat(coeff_log_power(ku, nu, a as u64)?) == power.coeff(n as usize),
            );
        }
        if n >= 2 {
            let square = log.pow(2);
            c.check("general log^2", knuth_general_log2(ku, nu)? == square.coeff(n as usize));
            if k == 2 {
                c.check("k=2 log^2", knuth_log2_coeff(nu)? == square.coeff(n as usize));
            }
        }
    }
    Ok(c)
}

fn counts_point(ctx: &Ctx, k: u32, n: u32) -> Result<Checks> {
    let (ku, nu) = (k as u64, n as u64);
    let cap = ctx.opts.cap;
    let labels: Vec<u32> = (1..=n).collect();
    let mut c = Checks::default();
    let ornaments = ctx.nat(count_ornaments(ku, nu)?);
    let multisets = count_multisets(ku, nu)?;
    c.check("paths", big(enumerate_paths(k, &labels, cap)?.len()) == ctx.nat(count_paths(ku, nu)?));
    c.check("label-minimal paths", big(enumerate_minimal_paths(k, &labels, cap)?.len()) == ornaments);
    c.check("ornaments", big(enumerate_ornaments(k, n, cap)?.len()) == ornaments);
    c.check("root-minimal trees", big(enumerate_minimal_trees(k, &labels, cap)?.len()) == ornaments);
    c.check("cycle-rooted trees", big(enumerate_cycle_rooted(k, n, cap)?.len()) == ornaments);
    let rooted = enumerate_multisets(k, n, true, cap)?.len();
    let all = enumerate_multisets(k, n, false, cap)?.len();
    c.check("rooted multisets", big(rooted) == ornaments);
    c.check("multisets", big(all) == ctx.nat(multisets));
    c.check("(k-1)|M| = |M°|", (k as usize - 1) * rooted == all);
    Ok(c)
}

fn injective_onto<T: Ord>(images: Vec<T>, range: BTreeSet<T>) -> bool {
    let len = images.len();
    let set: BTreeSet<T> = images.into_iter().collect();
    set.len() == len && set == range
}

fn bijections_point(ctx: &Ctx, k: u32, n: u32) -> Result<Checks> {
    let cap = ctx.opts.cap;
    let labels: Vec<u32> = (1..=n).collect();
    let mut c = Checks::default();
    let expected = ctx.nat(count_ornaments(k as u64, n as u64)?);

    let paths = enumerate_paths(k, &labels, cap)?;
    let fields: Vec<_> = paths.iter().map(decompose).collect();
    c.check("recompose∘decompose", paths.iter().zip(&fields).all(|(p, f)| recompose(f) == *p));
    let all_fields = (1..=n)
        .map(|a| enumerate_fields(k, n, a, cap))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    c.check("decompose onto minimal fields", injective_onto(fields, all_fields));

    let trees = enumerate_trees(k, &labels, cap)?;
    let forests: Vec<_> = trees.iter().map(tree_to_forest).collect();
    c.check("forest_to_tree∘tree_to_forest", trees.iter().zip(&forests).all(|(t, f)| forest_to_tree(f) == *t));
    c.check("tree_to_forest injective", forests.iter().collect::<BTreeSet<_>>().len() == forests.len());

    let cycle_trees: BTreeSet<_> = enumerate_cycle_rooted(k, n, cap)?.into_iter().collect();
    let minimal = enumerate_minimal_trees(k, &labels, cap)?;
    let cycles = minimal.iter().map(min_to_cycle).collect::<Result<Vec<_>>>()?;
    c.check("cycle_to_min∘min_to_cycle", minimal.iter().zip(&cycles).all(|(t, y)| cycle_to_min(y) == *t));
    c.check("min_to_cycle onto cycle-rooted trees", injective_onto(cycles, cycle_trees.clone()));

    let rooted: BTreeSet<_> = enumerate_multisets(k, n, true, cap)?.into_iter().collect();
    c.check("|M(k,n)|", big(rooted.len()) == expected);
    let ornaments = enumerate_ornaments(k, n, cap)?;
    let pi: Vec<_> = ornaments.iter().map(pi_encode).collect();
    c.check("pi_decode∘pi_encode", ornaments.iter().zip(&pi).all(|(o, m)| pi_decode(m).as_ref() == Ok(o)));
    c.check("pi onto M(k,n)", injective_onto(pi, rooted.clone()));
    let tau: Vec<_> = cycle_trees.iter().map(tau_encode).collect();
    c.check("tau_decode∘tau_encode", cycle_trees.iter().zip(&tau).all(|(t, m)| tau_decode(m).as_ref() == Ok(t)));
    c.check("tau onto M(k,n)", injective_onto(tau, rooted));
    Ok(c)
}

fn statistics_point(ctx: &Ctx, k: u32, n: u32) -> Result<Checks> {
    let (ku, nu) = (k as u64, n as u64);
    let cap = ctx.opts.cap;
    let mut c = Checks::default();
    let ornaments = enumerate_ornaments(k, n, cap)?;
    c.check(
        "touch labels = cycle labels",
        ornaments.iter().all(|o| {
            let touches: BTreeSet<_> = o.touch_labels().into_iter().collect();
            let cycle: BTreeSet<_> = ornament_to_cycle_tree(o).cycle().iter().copied().collect();
            touches == cycle && root_vertices(&pi_encode(o)) == touches
        }),
    );
    let touches = touch_distribution(&ornaments);
    let cycles = cycle_length_distribution(&enumerate_cycle_rooted(k, n, cap)?);
    c.check("touch distribution = cycle distribution", touches == cycles);
    let formula = (1..=nu)
        .map(|p| Ok(ctx.nat(factorial(nu) * returns_count(ku, nu, p)? / BigUint::from(p))))
        .collect::<Result<Vec<_>>>()?;
    c.check(
        "distribution = n! c^(p) / p",
        touches.len() == formula.len() + 1 && touches[1..].iter().zip(&formula).all(|(&t, f)| BigUint::from(t) == *f),
    );
    for a in 1..=n.min(3) {
        let fields = enumerate_fields(k, n, a, cap)?.len();
        let value = from_nat(BigUint::from(fields) * factorial(a as u64)) / from_nat(factorial(nu));
        c.check(format!("fields a={a}"), value == ctx.rat(coeff_log_power(ku, nu, a as u64)?));
    }
    Ok(c)
}

/// Runs `suite` for every `k` in `ks` and `1 <= n <= max_n`. Points are
/// evaluated in parallel and reported in `(suite, k, n)` order. Errors
/// (bad arguments, enumeration cap) abort the whole run.
pub fn verify(suite: Suite, ks: &[u32], max_n: u32, opts: &VerifyOptions) -> Result<VerificationReport> {
    if ks.is_empty() {
        return Err(Error::InvalidArgument("no k values given".into()));
    }
    if max_n < 1 {
        return Err(Error::InvalidArgument(format!("max-n must be at least 1, got {max_n}")));
    }
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::PARTS.to_vec(),
        s => vec![s],
    };
    for &k in ks {
        let min_k = if suites == [Suite::Series] { 1 } else { 2 };
        if k < min_k {
            return Err(Error::InvalidArgument(format!("suite {suite} needs k >= {min_k}, got {k}")));
        }
    }
    let ctx = Ctx { opts };
    // series data depends only on k
    let series: Vec<(Series, Series)> = ks
        .par_iter()
        .map(|&k| {
            let f = gk_series(k, max_n as usize).log()?;
            let closure = f.exp()?.sub(&Series::one(f.order()))?.sub(&f.scale(&int(k as i64)).exp()?.shift())?;
            Ok((f, closure))
        })
        .collect::<Result<_>>()?;
    let jobs: Vec<(Suite, usize, u32)> = suites
        .iter()
        .flat_map(|&s| (0..ks.len()).flat_map(move |i| (1..=max_n).map(move |n| (s, i, n))))
        .collect();
    let points = jobs
        .into_par_iter()
        .map(|(s, i, n)| {
            let k = ks[i];
            let checks = match s {
                Suite::Series => series_point(&ctx, k, n, &series[i].0, &series[i].1),
                Suite::Counts => counts_point(&ctx, k, n),
                Suite::Bijections => bijections_point(&ctx, k, n),
                Suite::Statistics => statistics_point(&ctx, k, n),
                Suite::All => unreachable!(),
            }?;
            Ok(checks.into_status(s, k, n))
        })
        .collect::<Result<Vec<_>>>()?;
    let overall = points.iter().all(|p| p.pass);
    Ok(VerificationReport { suite, points, overall })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        let opts = VerifyOptions { cap: Some(crate::DEFAULT_CAP), inject_fault: false };
        let r = verify(Suite::Series, &[1, 2, 3], 8, &opts).unwrap();
        assert!(r.overall, "{}", r.to_text());
        assert_eq!(r.points.len(), 24);
        let r = verify(Suite::All, &[2, 3], 3, &opts).unwrap();
        assert!(r.overall, "{}", r.to_text());
        assert_eq!(r.points.len(), 4 * 2 * 3);
        assert_eq!(r.points[0].suite, Suite::Series);
        assert_eq!((r.points[5].k, r.points[5].n), (3, 3));
    }

    #[test]
    fn injected_fault_fails_every_suite() {
        let opts = VerifyOptions { cap: None, inject_fault: true };
        for s in Suite::PARTS {
            let r = verify(s, &[2], 2, &opts).unwrap();
            assert!(!r.overall);
            assert!(r.points.iter().all(|p| !p.pass && p.message.starts_with("failed")));
        }
    }

    #[test]
    fn argument_errors() {
        let opts = VerifyOptions::default();
        assert!(verify(Suite::Counts, &[2], 0, &opts).is_err());
        assert!(verify(Suite::Counts, &[1], 2, &opts).is_err());
        assert!(verify(Suite::Series, &[1], 2, &opts).is_ok());
        assert!(verify(Suite::Series, &[], 2, &opts).is_err());
        let capped = VerifyOptions { cap: Some(5), inject_fault: false };
        assert!(matches!(verify(Suite::Counts, &[2], 4, &capped), Err(Error::ResourceCap { .. })));
        assert_eq!("bijections".parse::<Suite>().unwrap(), Suite::Bijections);
        assert!("nope".parse::<Suite>().is_err());
    }
}
