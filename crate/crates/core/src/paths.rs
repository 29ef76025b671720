//! Labeled k-good lattice paths, label-minimal paths, minimal fields and
//! ornaments.
//!
//! A path of size `n` runs from `(0, 0)` to `(n, (k-1)n)` with unit steps
//! `R = (1, 0)` and `U = (0, 1)` and never rises above `y = (k-1)x`. The
//! heights `(k-1)j`, `0 <= j < n`, carry distinct labels. A *touch* is a
//! lattice point `(j, (k-1)j)` on the path with `j < n`; the endpoint is
//! identified with the start and never listed.

use std::collections::BTreeSet;
use std::fmt;

use crate::catalan::{coeff_log_power, count_paths};
use crate::enumerate::{check_cap, label_set, permutations, set_partitions, Label};
use crate::error::{Error, Result};
use crate::numeric::{factorial, from_nat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    R,
    U,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::R => 'R',
            Step::U => 'U',
        }
    }
}

pub fn parse_steps(word: &str) -> Result<Vec<Step>> {
    word.chars()
        .map(|c| match c {
            'R' => Ok(Step::R),
            'U' => Ok(Step::U),
            other => Err(Error::Parse(format!("step {other:?} is not R or U"))),
        })
        .collect()
}

/// Checks the k-good condition for a step word: every prefix with `r` right
/// steps and `u` up steps has `u <= (k-1) r`, and the totals are
/// `(n, (k-1)n)` for some `n >= 1`.
pub fn is_good(k: u32, word: &str) -> bool {
    match parse_steps(word) {
        Ok(steps) => check_steps(k, &steps).is_ok(),
        Err(_) => false,
    }
}

fn check_steps(k: u32, steps: &[Step]) -> Result<usize> {
    if k < 2 {
        return Err(Error::invariant("path", format!("k must be at least 2, got {k}")));
    }
    let slope = (k - 1) as usize;
    let (mut r, mut u) = (0usize, 0usize);
    for (i, s) in steps.iter().enumerate() {
        match s {
            Step::R => r += 1,
            Step::U => u += 1,
        }
        if u > slope * r {
            return Err(Error::invariant(
                "path",
                format!("rises above the diagonal y=(k-1)x at step {}", i + 1),
            ));
        }
    }
    if r == 0 {
        return Err(Error::invariant("path", "needs at least one R step"));
    }
    if u != slope * r {
        return Err(Error::invariant(
            "path",
            format!("ends at ({r},{u}), expected ({r},{})", slope * r),
        ));
    }
    Ok(r)
}

/// A labeled k-good path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoodPath {
    k: u32,
    steps: Vec<Step>,
    labels: Vec<Label>,
}

impl GoodPath {
    pub fn new(k: u32, steps: Vec<Step>, labels: Vec<Label>) -> Result<Self> {
        let n = check_steps(k, &steps)?;
        if labels.len() != n {
            return Err(Error::invariant(
                "path",
                format!("{n} labeled heights but {} labels", labels.len()),
            ));
        }
        label_set(&labels).map_err(|e| Error::invariant("path", e.to_string()))?;
        Ok(GoodPath { k, steps, labels })
    }

    pub fn parse(k: u32, word: &str, labels: Vec<Label>) -> Result<Self> {
        Self::new(k, parse_steps(word)?, labels)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn word(&self) -> String {
        self.steps.iter().map(|s| s.as_char()).collect()
    }

    /// `labels()[j]` labels the height `(k-1) j`.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn start_label(&self) -> Label {
        self.labels[0]
    }

    fn slope(&self) -> usize {
        (self.k - 1) as usize
    }

    /// `(j, step index)` for every touch `(j, (k-1)j)`, `j < n`; the step
    /// index is the position in the word at which the path sits there.
    fn touch_positions(&self) -> Vec<(usize, usize)> {
        let slope = self.slope();
        let mut out = vec![(0, 0)];
        let (mut r, mut u) = (0, 0);
        for (i, s) in self.steps.iter().enumerate() {
            match s {
                Step::R => r += 1,
                Step::U => u += 1,
            }
            if u == slope * r && r < self.n() && *s == Step::U {
                out.push((r, i + 1));
            }
        }
        out
    }

    /// Rotation of the periodized path so that touch `j` sits at the origin.
    fn rotate_at(&self, j: usize, pos: usize) -> GoodPath {
        let mut steps = self.steps[pos..].to_vec();
        steps.extend_from_slice(&self.steps[..pos]);
        let mut labels = self.labels[j..].to_vec();
        labels.extend_from_slice(&self.labels[..j]);
        GoodPath {
            k: self.k,
            steps,
            labels,
        }
    }

    /// Number of right steps taken at each height `0 .. (k-1)n`.
    pub fn right_steps_per_height(&self) -> Vec<u32> {
        let mut out = vec![0; self.slope() * self.n()];
        let mut height = 0;
        for s in &self.steps {
            match s {
                Step::R => out[height] += 1,
                Step::U => height += 1,
            }
        }
        out
    }
}

impl fmt::Display for GoodPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.word(), self.labels)
    }
}

/// `(height, label)` for every touch, in increasing height.
pub fn diagonal_touches(path: &GoodPath) -> Vec<(usize, Label)> {
    let slope = path.slope();
    path.touch_positions()
        .into_iter()
        .map(|(j, _)| (slope * j, path.labels[j]))
        .collect()
}

pub fn is_label_minimal(path: &GoodPath) -> bool {
    diagonal_touches(path)
        .iter()
        .all(|&(_, label)| label >= path.start_label())
}

fn enumerate_words(k: u32, n: usize) -> Vec<Vec<Step>> {
    fn go(slope: usize, n: usize, r: usize, u: usize, cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if r == n && u == slope * n {
            out.push(cur.clone());
            return;
        }
        if r < n {
            cur.push(Step::R);
            go(slope, n, r + 1, u, cur, out);
            cur.pop();
        }
        if u < slope * r {
            cur.push(Step::U);
            go(slope, n, r, u + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go((k - 1) as usize, n, 0, 0, &mut Vec::new(), &mut out);
    out
}

fn require_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// Every V-labeled k-good path, step words in lexicographic order and
/// labelings lexicographic within each word.
pub fn enumerate_paths(k: u32, labels: &[Label], cap: Option<u64>) -> Result<Vec<GoodPath>> {
    require_k(k)?;
    let labels = label_set(labels)?;
    check_cap(&count_paths(k as u64, labels.len() as u64)?, cap)?;
    let words = enumerate_words(k, labels.len());
    let mut out = Vec::new();
    for word in &words {
        for labeling in permutations(&labels) {
            out.push(GoodPath {
                k,
                steps: word.clone(),
                labels: labeling,
            });
        }
    }
    Ok(out)
}

/// The label-minimal subset of [`enumerate_paths`], same order.
pub fn enumerate_minimal_paths(k: u32, labels: &[Label], cap: Option<u64>) -> Result<Vec<GoodPath>> {
    Ok(enumerate_paths(k, labels, cap)?
        .into_iter()
        .filter(is_label_minimal)
        .collect())
}

/// A set of label-minimal paths whose label sets partition the ground set.
/// Parts are kept sorted by decreasing start label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalField {
    parts: Vec<GoodPath>,
}

impl MinimalField {
    pub fn new(mut parts: Vec<GoodPath>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invariant("field", "has no parts"));
        }
        let k = parts[0].k;
        let mut seen = BTreeSet::new();
        for p in &parts {
            if p.k != k {
                return Err(Error::invariant("field", "parts have different k"));
            }
            if !is_label_minimal(p) {
                return Err(Error::invariant("field", format!("part {p} is not label-minimal")));
            }
            for &l in &p.labels {
                if !seen.insert(l) {
                    return Err(Error::invariant("field", format!("label {l} appears in two parts")));
                }
            }
        }
        parts.sort_by_key(|p| std::cmp::Reverse(p.start_label()));
        Ok(MinimalField { parts })
    }

    pub fn parts(&self) -> &[GoodPath] {
        &self.parts
    }

    pub fn k(&self) -> u32 {
        self.parts[0].k
    }
}

/// Splits a path into label-minimal pieces: repeatedly cut the current piece
/// at its lowest touch whose label is below the current start label.
pub fn decompose(path: &GoodPath) -> MinimalField {
    let mut parts = Vec::new();
    let mut current = path.clone();
    loop {
        let start = current.start_label();
        let cut = current
            .touch_positions()
            .into_iter()
            .find(|&(j, _)| current.labels[j] < start);
        match cut {
            None => {
                parts.push(current);
                break;
            }
            Some((j, pos)) => {
                parts.push(GoodPath {
                    k: current.k,
                    steps: current.steps[..pos].to_vec(),
                    labels: current.labels[..j].to_vec(),
                });
                current = GoodPath {
                    k: current.k,
                    steps: current.steps[pos..].to_vec(),
                    labels: current.labels[j..].to_vec(),
                };
            }
        }
    }
    // emitted with strictly decreasing start labels, already canonical
    MinimalField { parts }
}

/// Glues the parts in order of decreasing start label.
pub fn recompose(field: &MinimalField) -> GoodPath {
    let mut steps = Vec::new();
    let mut labels = Vec::new();
    for p in &field.parts {
        steps.extend_from_slice(&p.steps);
        labels.extend_from_slice(&p.labels);
    }
    GoodPath {
        k: field.k(),
        steps,
        labels,
    }
}

/// Rotation class of labeled good paths, represented by its unique
/// label-minimal member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ornament {
    rep: GoodPath,
}

impl Ornament {
    /// Wraps a representative, which must already be label-minimal.
    pub fn from_rep(rep: GoodPath) -> Result<Self> {
        if !is_label_minimal(&rep) {
            return Err(Error::invariant(
                "ornament",
                format!("representative {rep} is not label-minimal"),
            ));
        }
        Ok(Ornament { rep })
    }

    pub fn rep(&self) -> &GoodPath {
        &self.rep
    }

    pub fn k(&self) -> u32 {
        self.rep.k
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }

    /// Every labeled good path in the class, one per touch.
    pub fn members(&self) -> Vec<GoodPath> {
        self.rep
            .touch_positions()
            .into_iter()
            .map(|(j, pos)| self.rep.rotate_at(j, pos))
            .collect()
    }

    /// Labels of the touch heights, in order around the cycle.
    pub fn touch_labels(&self) -> Vec<Label> {
        diagonal_touches(&self.rep).into_iter().map(|(_, l)| l).collect()
    }
}

pub fn to_ornament(path: &GoodPath) -> Ornament {
    let (j, pos) = path
        .touch_positions()
        .into_iter()
        .min_by_key(|&(j, _)| path.labels[j])
        .expect("the origin is always a touch");
    Ornament {
        rep: path.rotate_at(j, pos),
    }
}

/// Number of touches, which is also the size of the rotation class.
pub fn touch_count(o: &Ornament) -> usize {
    o.rep.touch_positions().len()
}

/// All ornaments on `[n]`, obtained by canonicalizing every labeled path.
pub fn enumerate_ornaments(k: u32, n: u32, cap: Option<u64>) -> Result<Vec<Ornament>> {
    let labels: Vec<Label> = (1..=n).collect();
    let set: BTreeSet<Ornament> = enumerate_paths(k, &labels, cap)?
        .iter()
        .map(to_ornament)
        .collect();
    Ok(set.into_iter().collect())
}

/// Minimal fields on `[n]` with exactly `a` parts.
pub fn enumerate_fields(k: u32, n: u32, a: u32, cap: Option<u64>) -> Result<Vec<MinimalField>> {
    require_k(k)?;
    if a < 1 || a > n {
        return Err(Error::InvalidArgument(format!(
            "number of parts must lie in 1..={n}, got {a}"
        )));
    }
    let predicted = from_nat(factorial(n as u64)) * coeff_log_power(k as u64, n as u64, a as u64)?
        / from_nat(factorial(a as u64));
    check_cap(&predicted.to_integer().to_biguint().unwrap_or_default(), cap)?;
    let labels: Vec<Label> = (1..=n).collect();
    let mut out = Vec::new();
    for blocks in set_partitions(&labels, a as usize) {
        let per_block = blocks
            .iter()
            .map(|b| enumerate_minimal_paths(k, b, None))
            .collect::<Result<Vec<_>>>()?;
        let mut choice = vec![0usize; per_block.len()];
        'outer: loop {
            let parts = choice
                .iter()
                .zip(&per_block)
                .map(|(&i, options)| options[i].clone())
                .collect();
            out.push(MinimalField::new(parts)?);
            for slot in (0..choice.len()).rev() {
                choice[slot] += 1;
                if choice[slot] < per_block[slot].len() {
                    continue 'outer;
                }
                choice[slot] = 0;
            }
            break;
        }
    }
    Ok(out)
}

/// Number of ornaments per touch count, indexed by `p` (index 0 unused).
pub fn touch_distribution(ornaments: &[Ornament]) -> Vec<u64> {
    let n = ornaments.iter().map(Ornament::n).max().unwrap_or(0);
    let mut hist = vec![0u64; n + 1];
    for o in ornaments {
        hist[touch_count(o)] += 1;
    }
    hist
}
