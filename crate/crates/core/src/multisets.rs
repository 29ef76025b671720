//! Cyclically ordered multisets and the two encodings into them: `pi` for
//! ornaments and `tau` for cycle-rooted trees.
//!
//! A multiset `(sigma, f)` on `[n]` is a cyclic order of the labels plus a
//! vector `f(i)` of `k-1` nonnegative multiplicities per label, with total
//! `n`. Its cycle graph has nodes `(i, q)`, `q = 1..k-1`, visited in the order
//! `(i,1), ..., (i,k-1), (sigma(i),1), ...`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigUint;

use crate::catalan::count_ornaments;
use crate::enumerate::{check_cap, permutations, Label};
use crate::error::{Error, Result};
use crate::numeric::{factorial, multichoose};
use crate::paths::{GoodPath, Ornament, Step};
use crate::trees::{CycleRootedTree, Slots};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicMultiset {
    k: u32,
    cycle: Vec<Label>,
    f: BTreeMap<Label, Vec<u32>>,
}

fn rotate_to(cycle: &[Label], start: usize) -> Vec<Label> {
    cycle[start..].iter().chain(&cycle[..start]).copied().collect()
}

impl CyclicMultiset {
    /// Validates and stores the cycle starting at its minimal label.
    pub fn new(k: u32, cycle: Vec<Label>, f: BTreeMap<Label, Vec<u32>>) -> Result<Self> {
        let kind = "multiset";
        if k < 2 {
            return Err(Error::invariant(kind, format!("k must be at least 2, got {k}")));
        }
        if cycle.is_empty() {
            return Err(Error::invariant(kind, "cycle is empty"));
        }
        let labels: BTreeSet<Label> = cycle.iter().copied().collect();
        if labels.len() != cycle.len() || labels.contains(&0) {
            return Err(Error::invariant(kind, "cycle labels must be distinct and positive"));
        }
        if f.keys().copied().collect::<BTreeSet<_>>() != labels {
            return Err(Error::invariant(kind, "multiplicities must be given for exactly the cycle labels"));
        }
        if let Some((i, v)) = f.iter().find(|(_, v)| v.len() != k as usize - 1) {
            return Err(Error::invariant(
                kind,
                format!("label {i} has {} multiplicities, expected {}", v.len(), k - 1),
            ));
        }
        let total: u64 = f.values().flatten().map(|&x| x as u64).sum();
        if total != cycle.len() as u64 {
            return Err(Error::invariant(
                kind,
                format!("multiplicities sum to {total}, expected {}", cycle.len()),
            ));
        }
        let start = cycle.iter().position_min().unwrap();
        Ok(CyclicMultiset {
            k,
            cycle: rotate_to(&cycle, start),
            f,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.cycle.len()
    }

    /// The cyclic order, minimal label first.
    pub fn cycle(&self) -> &[Label] {
        &self.cycle
    }

    pub fn f(&self) -> &BTreeMap<Label, Vec<u32>> {
        &self.f
    }

    /// `f_q(i)` with `q` 1-based.
    pub fn multiplicity(&self, i: Label, q: usize) -> u32 {
        self.f[&i][q - 1]
    }

    fn position(&self, i: Label) -> Option<usize> {
        self.cycle.iter().position(|&x| x == i)
    }

    /// The cycle read starting at label `i`.
    fn cycle_from(&self, i: Label) -> Vec<Label> {
        rotate_to(&self.cycle, self.position(i).expect("label on cycle"))
    }
}

/// Node sequence of a simple, orientation-consistent path on the cycle graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    nodes: Vec<(Label, usize)>,
}

impl Segment {
    pub fn nodes(&self) -> &[(Label, usize)] {
        &self.nodes
    }
}

/// All `n(k-1)` segments starting at `(i, 1)`, shortest first.
pub fn segments_from(m: &CyclicMultiset, i: Label) -> Result<Vec<Segment>> {
    if m.position(i).is_none() {
        return Err(Error::InvalidArgument(format!("label {i} is not on the cycle")));
    }
    let walk: Vec<(Label, usize)> = m
        .cycle_from(i)
        .into_iter()
        .flat_map(|l| (1..m.k as usize).map(move |q| (l, q)))
        .collect();
    Ok((1..=walk.len())
        .map(|len| Segment {
            nodes: walk[..len].to_vec(),
        })
        .collect())
}

/// Number of distinct labels on the segment.
pub fn scope(s: &Segment) -> usize {
    s.nodes.iter().map(|&(i, _)| i).collect::<BTreeSet<_>>().len()
}

pub fn weight(m: &CyclicMultiset, s: &Segment) -> u64 {
    s.nodes.iter().map(|&(i, q)| m.multiplicity(i, q) as u64).sum()
}

/// Labels `i` such that every segment from `(i, 1)` weighs at least its scope.
pub fn root_vertices(m: &CyclicMultiset) -> BTreeSet<Label> {
    m.cycle
        .iter()
        .copied()
        .filter(|&i| {
            segments_from(m, i)
                .expect("label on cycle")
                .iter()
                .all(|s| weight(m, s) >= scope(s) as u64)
        })
        .collect()
}

/// Weak compositions of `total` into `parts` parts, lexicographically.
fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..=total)
        .flat_map(|first| {
            weak_compositions(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// `|M°_k(n)| = (n-1)! multichoose((k-1)n, n)`.
pub fn count_multisets(k: u64, n: u64) -> Result<BigUint> {
    if k < 2 || n < 1 {
        return Err(Error::InvalidArgument(format!("need k >= 2 and n >= 1, got k={k}, n={n}")));
    }
    Ok(factorial(n - 1) * multichoose((k - 1) * n, n))
}

/// All multisets on `[n]` (or only those with a root vertex). Cycles in
/// lexicographic order of their canonical rotation, then multiplicity
/// vectors lexicographically.
pub fn enumerate_multisets(k: u32, n: u32, rooted_only: bool, cap: Option<u64>) -> Result<Vec<CyclicMultiset>> {
    let predicted = if rooted_only {
        count_ornaments(k as u64, n as u64)?
    } else {
        count_multisets(k as u64, n as u64)?
    };
    check_cap(&predicted, cap)?;
    // the unrooted ones are generated and filtered out
    check_cap(&count_multisets(k as u64, n as u64)?, cap)?;
    let width = k as usize - 1;
    let tails: Vec<Label> = (2..=n).collect();
    let comps = weak_compositions(n, n as usize * width);
    let mut out = Vec::new();
    for tail in permutations(&tails) {
        let mut cycle = vec![1];
        cycle.extend(tail);
        for comp in &comps {
            let f = cycle
                .iter()
                .enumerate()
                .map(|(j, &l)| (l, comp[j * width..(j + 1) * width].to_vec()))
                .collect();
            let m = CyclicMultiset {
                k,
                cycle: cycle.clone(),
                f,
            };
            if !rooted_only || !root_vertices(&m).is_empty() {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Encodes an ornament: the labeling cycle plus, for label `i` at height
/// `y_i`, `f_q(i)` = right steps taken at height `y_i + q - 1`.
pub fn pi_encode(o: &Ornament) -> CyclicMultiset {
    let rep = o.rep();
    let width = rep.k() as usize - 1;
    let rights = rep.right_steps_per_height();
    let f = rep
        .labels()
        .iter()
        .enumerate()
        .map(|(j, &l)| (l, rights[j * width..(j + 1) * width].to_vec()))
        .collect();
    CyclicMultiset {
        k: rep.k(),
        cycle: rep.labels().to_vec(),
        f,
    }
    .canonical()
}

impl CyclicMultiset {
    fn canonical(mut self) -> Self {
        let start = self.cycle.iter().position_min().unwrap();
        self.cycle = rotate_to(&self.cycle, start);
        self
    }
}

/// Rebuilds the label-minimal representative, starting the word at the
/// smallest root vertex.
pub fn pi_decode(m: &CyclicMultiset) -> Result<Ornament> {
    let start = *root_vertices(m).iter().next().ok_or(Error::NoRootVertices)?;
    let labels = m.cycle_from(start);
    let mut steps = Vec::new();
    for &l in &labels {
        for &r in &m.f[&l] {
            steps.extend(std::iter::repeat_n(Step::R, r as usize));
            steps.push(Step::U);
        }
    }
    Ornament::from_rep(GoodPath::new(m.k, steps, labels)?)
}

/// Length of the chain below `v` following slot `q` (1-based), excluding `v`.
fn chain_len(slots: &Slots, mut v: Label, q: usize) -> u32 {
    let mut len = 0;
    while let Some(c) = slots[&v][q - 1] {
        v = c;
        len += 1;
    }
    len
}

/// Encodes a cycle-rooted tree, exploring from the minimal root.
pub fn tau_encode(c: &CycleRootedTree) -> CyclicMultiset {
    tau_encode_from(c, c.cycle()[0]).expect("minimal root is on the cycle")
}

/// Encodes a cycle-rooted tree with the exploration starting at root `r`.
/// Every root gives the same multiset.
pub fn tau_encode_from(c: &CycleRootedTree, r: Label) -> Result<CyclicMultiset> {
    let cycle = c.cycle();
    let start = cycle
        .iter()
        .position(|&x| x == r)
        .ok_or_else(|| Error::InvalidArgument(format!("{r} is not a root")))?;
    let k = c.k() as usize;
    let slots = c.slots();
    let mut parent_slot = BTreeMap::new();
    for arr in slots.values() {
        for (q, child) in arr.iter().enumerate() {
            if let Some(child) = child {
                parent_slot.insert(*child, q + 1);
            }
        }
    }
    let order: Vec<Label> = rotate_to(cycle, start)
        .into_iter()
        .flat_map(|root| c.hanging_preorder(root))
        .collect();
    let f = order
        .iter()
        .map(|&v| {
            let mult = match parent_slot.get(&v) {
                // a root: slots 1..k-1, plus one for the root itself in slot 1
                None => (1..k)
                    .map(|q| chain_len(slots, v, q) + u32::from(q == 1))
                    .collect(),
                Some(&p) => (1..=k)
                    .filter(|&q| q != p)
                    .map(|q| chain_len(slots, v, q))
                    .collect(),
            };
            (v, mult)
        })
        .collect();
    Ok(CyclicMultiset {
        k: c.k(),
        cycle: order,
        f,
    }
    .canonical())
}

/// Inverse of `tau`: the root vertices become the cycle, and the remaining
/// labels are hung off them depth-first, reading each vertex's
/// multiplicities as the lengths of its slot chains.
pub fn tau_decode(m: &CyclicMultiset) -> Result<CycleRootedTree> {
    let roots = root_vertices(m);
    let start = *roots.iter().next().ok_or(Error::NoRootVertices)?;
    let seq = m.cycle_from(start);
    let k = m.k as usize;
    let bad = |reason: String| Error::invariant("multiset", reason);

    struct Builder<'a> {
        m: &'a CyclicMultiset,
        roots: &'a BTreeSet<Label>,
        seq: Vec<Label>,
        pos: usize,
        slots: Slots,
    }

    impl Builder<'_> {
        fn take_child(&mut self) -> Result<Label> {
            let Some(&c) = self.seq.get(self.pos) else {
                return Err(Error::invariant("multiset", "chain budgets exceed the number of labels"));
            };
            if self.roots.contains(&c) {
                return Err(Error::invariant("multiset", format!("root vertex {c} reached as a child")));
            }
            self.pos += 1;
            Ok(c)
        }

        /// `budget[q]` is the remaining chain length below `v` in slot `q+1`.
        fn grow(&mut self, v: Label, budget: Vec<u32>) -> Result<()> {
            let k = budget.len();
            let mut arr = vec![None; k];
            for q in 0..k {
                if budget[q] == 0 {
                    continue;
                }
                let c = self.take_child()?;
                arr[q] = Some(c);
                let mut own = self.m.f[&c].iter().copied();
                let child_budget = (0..k)
                    .map(|p| if p == q { budget[q] - 1 } else { own.next().unwrap() })
                    .collect();
                self.grow(c, child_budget)?;
            }
            self.slots.insert(v, arr);
            Ok(())
        }
    }

    let mut b = Builder {
        m,
        roots: &roots,
        seq,
        pos: 0,
        slots: Slots::new(),
    };
    let mut cycle = Vec::new();
    while b.pos < b.seq.len() {
        let r = b.seq[b.pos];
        if !roots.contains(&r) {
            return Err(bad(format!("vertex {r} is not reachable from a root")));
        }
        b.pos += 1;
        cycle.push(r);
        let f = &m.f[&r];
        let mut budget: Vec<u32> = f.clone();
        budget[0] = budget[0]
            .checked_sub(1)
            .ok_or_else(|| bad(format!("root {r} has f_1 = 0")))?;
        budget.push(0);
        debug_assert_eq!(budget.len(), k);
        b.grow(r, budget)?;
    }
    CycleRootedTree::new(m.k, cycle, b.slots)
}

/// The composed bijection from ornaments to cycle-rooted trees.
pub fn ornament_to_cycle_tree(o: &Ornament) -> CycleRootedTree {
    tau_decode(&pi_encode(o)).expect("pi maps onto the rooted multisets")
}

pub fn cycle_tree_to_ornament(c: &CycleRootedTree) -> Ornament {
    pi_decode(&tau_encode(c)).expect("tau maps onto the rooted multisets")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{enumerate_ornaments, is_label_minimal, to_ornament};
    use crate::trees::enumerate_cycle_rooted;

    const GRID: [(u32, u32); 12] = [
        (2, 1), (2, 2), (2, 3), (2, 4), (2, 5),
        (3, 1), (3, 2), (3, 3), (3, 4),
        (4, 1), (4, 2), (4, 3),
    ];

    fn ms(k: u32, cycle: &[Label], f: &[(Label, &[u32])]) -> CyclicMultiset {
        CyclicMultiset::new(
            k,
            cycle.to_vec(),
            f.iter().map(|&(l, v)| (l, v.to_vec())).collect(),
        )
        .unwrap()
    }

    fn orn(k: u32, word: &str, labels: &[Label]) -> Ornament {
        Ornament::from_rep(GoodPath::parse(k, word, labels.to_vec()).unwrap()).unwrap()
    }

    fn cyc(k: u32, cycle: &[Label], entries: &[(Label, &[(usize, Label)])]) -> CycleRootedTree {
        let slots = entries
            .iter()
            .map(|&(v, kids)| {
                let mut arr = vec![None; k as usize];
                for &(q, c) in kids {
                    arr[q - 1] = Some(c);
                }
                (v, arr)
            })
            .collect();
        CycleRootedTree::new(k, cycle.to_vec(), slots).unwrap()
    }

    #[test]
    fn validation() {
        let f = |v: &[(Label, &[u32])]| v.iter().map(|&(l, x)| (l, x.to_vec())).collect();
        assert!(CyclicMultiset::new(2, vec![1, 2], f(&[(1, &[1]), (2, &[0])])).is_err());
        assert!(CyclicMultiset::new(2, vec![1, 2], f(&[(1, &[1])])).is_err());
        assert!(CyclicMultiset::new(3, vec![1], f(&[(1, &[1])])).is_err());
        assert!(CyclicMultiset::new(2, vec![1, 1], f(&[(1, &[2])])).is_err());
        let m = CyclicMultiset::new(2, vec![3, 1, 2], f(&[(1, &[1]), (2, &[1]), (3, &[1])])).unwrap();
        assert_eq!(m.cycle(), [1, 2, 3]);
    }

    #[test]
    fn segment_examples() {
        let one = ms(2, &[1], &[(1, &[1])]);
        assert_eq!(segments_from(&one, 1).unwrap(), [Segment { nodes: vec![(1, 1)] }]);
        let two = ms(2, &[1, 2], &[(1, &[2]), (2, &[0])]);
        let s = segments_from(&two, 1).unwrap();
        assert_eq!(s[0].nodes(), [(1, 1)]);
        assert_eq!(s[1].nodes(), [(1, 1), (2, 1)]);
        let k3 = ms(3, &[1, 2], &[(1, &[1, 0]), (2, &[1, 0])]);
        assert_eq!(segments_from(&k3, 1).unwrap().len(), 4);
        assert!(segments_from(&k3, 5).is_err());

        assert_eq!(scope(&Segment { nodes: vec![(1, 1)] }), 1);
        assert_eq!(scope(&Segment { nodes: vec![(1, 1), (1, 2)] }), 1);
        assert_eq!(scope(&Segment { nodes: vec![(1, 1), (2, 1)] }), 2);

        assert_eq!(weight(&two, &s[0]), 2);
        assert_eq!(weight(&two, &segments_from(&two, 2).unwrap()[0]), 0);
        for (k, n) in [(2, 3), (3, 2), (4, 2)] {
            for m in enumerate_multisets(k, n, false, None).unwrap() {
                for &i in m.cycle() {
                    let full = segments_from(&m, i).unwrap().pop().unwrap();
                    assert_eq!(weight(&m, &full), n as u64);
                    assert_eq!(scope(&full), n as usize);
                }
            }
        }
    }

    #[test]
    fn root_vertex_examples() {
        assert_eq!(root_vertices(&ms(2, &[1], &[(1, &[1])])), BTreeSet::from([1]));
        assert_eq!(
            root_vertices(&ms(2, &[1, 2], &[(1, &[2]), (2, &[0])])),
            BTreeSet::from([1])
        );
        assert_eq!(
            root_vertices(&ms(2, &[1, 2], &[(1, &[1]), (2, &[1])])),
            BTreeSet::from([1, 2])
        );
        assert!(root_vertices(&ms(3, &[1], &[(1, &[0, 1])])).is_empty());
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(enumerate_multisets(2, 2, false, None).unwrap().len(), 3);
        assert_eq!(enumerate_multisets(2, 2, true, None).unwrap().len(), 3);
        assert_eq!(enumerate_multisets(3, 2, false, None).unwrap().len(), 10);
        assert_eq!(enumerate_multisets(3, 2, true, None).unwrap().len(), 5);
        for (k, n) in GRID {
            let all = enumerate_multisets(k, n, false, None).unwrap();
            let rooted = enumerate_multisets(k, n, true, None).unwrap();
            assert_eq!(BigUint::from(all.len()), count_multisets(k as u64, n as u64).unwrap());
            assert_eq!(rooted.len() * (k as usize - 1), all.len());
            assert_eq!(BigUint::from(rooted.len()), count_ornaments(k as u64, n as u64).unwrap());
        }
        assert!(matches!(
            enumerate_multisets(2, 6, false, Some(10)),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn pi_examples() {
        assert_eq!(
            pi_encode(&orn(2, "RURU", &[1, 2])),
            ms(2, &[1, 2], &[(1, &[1]), (2, &[1])])
        );
        assert_eq!(
            pi_encode(&orn(2, "RRUU", &[1, 2])),
            ms(2, &[1, 2], &[(1, &[2]), (2, &[0])])
        );
        assert_eq!(
            pi_encode(&orn(2, "RRUU", &[2, 1])),
            ms(2, &[1, 2], &[(2, &[2]), (1, &[0])])
        );
        assert_eq!(
            pi_decode(&ms(2, &[1, 2], &[(1, &[1]), (2, &[1])])).unwrap(),
            orn(2, "RURU", &[1, 2])
        );
        assert_eq!(pi_decode(&ms(2, &[1], &[(1, &[1])])).unwrap(), orn(2, "RU", &[1]));
        assert_eq!(
            pi_decode(&ms(3, &[1], &[(1, &[0, 1])])),
            Err(Error::NoRootVertices)
        );
        // every member of the class encodes the same way
        let o = orn(3, "RUURUURUURUU", &[1, 2, 3, 4]);
        for member in o.members() {
            assert_eq!(pi_encode(&to_ornament(&member)), pi_encode(&o));
        }
    }

    #[test]
    fn tau_examples() {
        let single = cyc(2, &[1], &[(1, &[])]);
        assert_eq!(tau_encode(&single), ms(2, &[1], &[(1, &[1])]));
        let hanging = cyc(2, &[1], &[(1, &[(1, 2)]), (2, &[])]);
        let m = ms(2, &[1, 2], &[(1, &[2]), (2, &[0])]);
        assert_eq!(tau_encode(&hanging), m);
        assert_eq!(tau_decode(&m).unwrap(), hanging);
        let pair = cyc(2, &[1, 2], &[(1, &[]), (2, &[])]);
        assert_eq!(tau_encode(&pair), ms(2, &[1, 2], &[(1, &[1]), (2, &[1])]));
        assert_eq!(tau_decode(&ms(2, &[1], &[(1, &[1])])).unwrap(), single);
        assert_eq!(
            tau_decode(&ms(3, &[1], &[(1, &[0, 1])])),
            Err(Error::NoRootVertices)
        );
    }

    #[test]
    fn composed_examples() {
        assert_eq!(
            ornament_to_cycle_tree(&orn(2, "RU", &[1])),
            cyc(2, &[1], &[(1, &[])])
        );
        let c = ornament_to_cycle_tree(&orn(2, "RRUU", &[1, 2]));
        assert_eq!(c, cyc(2, &[1], &[(1, &[(1, 2)]), (2, &[])]));
        assert_eq!(cycle_tree_to_ornament(&c), orn(2, "RRUU", &[1, 2]));
    }

    #[test]
    fn encodings_share_their_range() {
        for (k, n) in GRID {
            let rooted: BTreeSet<_> = enumerate_multisets(k, n, true, None).unwrap().into_iter().collect();

            let ornaments = enumerate_ornaments(k, n, None).unwrap();
            let mut pi_image = BTreeSet::new();
            for o in &ornaments {
                let m = pi_encode(o);
                let touches: BTreeSet<Label> = o.touch_labels().into_iter().collect();
                assert_eq!(root_vertices(&m), touches);
                assert_eq!(&pi_decode(&m).unwrap(), o);
                assert!(pi_image.insert(m), "pi not injective at k={k} n={n}");
            }
            assert_eq!(pi_image, rooted);

            let trees = enumerate_cycle_rooted(k, n, None).unwrap();
            let mut tau_image = BTreeSet::new();
            for c in &trees {
                let m = tau_encode(c);
                let cycle: BTreeSet<Label> = c.cycle().iter().copied().collect();
                assert_eq!(root_vertices(&m), cycle);
                for &r in c.cycle() {
                    assert_eq!(tau_encode_from(c, r).unwrap(), m);
                }
                assert_eq!(&tau_decode(&m).unwrap(), c);
                assert!(tau_image.insert(m), "tau not injective at k={k} n={n}");
            }
            assert_eq!(tau_image, rooted);

            for m in &rooted {
                assert!(is_label_minimal(pi_decode(m).unwrap().rep()));
                assert_eq!(&pi_encode(&pi_decode(m).unwrap()), m);
                assert_eq!(&tau_encode(&tau_decode(m).unwrap()), m);
            }
        }
    }
}
