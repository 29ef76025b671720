//! Rooted plane k-ary trees, root-minimal forests and cycle-rooted trees.
//!
//! Every vertex owns `k` ordered slots, each vacant or holding one child.
//! Slot `k` is the rightmost; following it from the root traces the
//! rightmost branch.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::catalan::{count_ornaments, gen_catalan};
use crate::enumerate::{check_cap, label_set, permutations, Label};
use crate::error::{Error, Result};
use crate::numeric::factorial;

/// Slot table: vertex -> `k` entries, `None` for a vacant slot.
pub type Slots = BTreeMap<Label, Vec<Option<Label>>>;

/// Depth-first order from `start`, leftmost slot first.
pub(crate) fn preorder(slots: &Slots, start: Label) -> Vec<Label> {
    let mut out = Vec::new();
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        out.push(v);
        stack.extend(slots[&v].iter().rev().flatten());
    }
    out
}

/// Checks slot arrays and parent uniqueness; returns the child -> (parent,
/// slot index) map.
fn check_slots(kind: &'static str, k: u32, slots: &Slots) -> Result<BTreeMap<Label, (Label, usize)>> {
    if k < 2 {
        return Err(Error::invariant(kind, format!("k must be at least 2, got {k}")));
    }
    let mut parent = BTreeMap::new();
    for (&v, arr) in slots {
        if v == 0 {
            return Err(Error::invariant(kind, "labels must be positive"));
        }
        if arr.len() != k as usize {
            return Err(Error::invariant(
                kind,
                format!("vertex {v} has {} slots, expected {k}", arr.len()),
            ));
        }
        for (q, c) in arr.iter().enumerate() {
            if let Some(c) = *c {
                if !slots.contains_key(&c) {
                    return Err(Error::invariant(kind, format!("child {c} of {v} has no slot entry")));
                }
                if parent.insert(c, (v, q)).is_some() {
                    return Err(Error::invariant(kind, format!("vertex {c} has two parents")));
                }
            }
        }
    }
    Ok(parent)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneTree {
    k: u32,
    root: Label,
    slots: Slots,
}

impl PlaneTree {
    pub fn new(k: u32, root: Label, slots: Slots) -> Result<Self> {
        let parent = check_slots("tree", k, &slots)?;
        if !slots.contains_key(&root) {
            return Err(Error::invariant("tree", format!("root {root} has no slot entry")));
        }
        if parent.contains_key(&root) {
            return Err(Error::invariant("tree", format!("root {root} appears as a child")));
        }
        if parent.len() + 1 != slots.len() || preorder(&slots, root).len() != slots.len() {
            return Err(Error::invariant("tree", "not connected to the root"));
        }
        Ok(PlaneTree { k, root, slots })
    }

    /// A tree with a single vertex.
    pub fn leaf(k: u32, root: Label) -> Self {
        let mut slots = Slots::new();
        slots.insert(root, vec![None; k as usize]);
        PlaneTree { k, root, slots }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn root(&self) -> Label {
        self.root
    }

    pub fn slots(&self) -> &Slots {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Occupant of slot `q` (1-based) of `v`.
    pub fn child(&self, v: Label, q: usize) -> Option<Label> {
        self.slots.get(&v).and_then(|a| a.get(q - 1).copied().flatten())
    }

    pub fn preorder(&self) -> Vec<Label> {
        preorder(&self.slots, self.root)
    }

    /// Subtree rooted at `v` with its slot table.
    fn subtree(k: u32, slots: &Slots, v: Label) -> PlaneTree {
        let slots = preorder(slots, v)
            .into_iter()
            .map(|u| (u, slots[&u].clone()))
            .collect();
        PlaneTree { k, root: v, slots }
    }
}

pub fn rightmost_branch(t: &PlaneTree) -> Vec<Label> {
    let mut branch = vec![t.root];
    while let Some(next) = t.child(*branch.last().unwrap(), t.k as usize) {
        branch.push(next);
    }
    branch
}

pub fn is_root_minimal(t: &PlaneTree) -> bool {
    rightmost_branch(t).iter().all(|&v| v >= t.root)
}

/// Unlabeled plane k-ary tree shape.
#[derive(Clone, Debug)]
struct Shape {
    slots: Vec<Option<Shape>>,
}

fn shapes(k: usize, size: usize) -> Vec<Shape> {
    if size == 0 {
        return Vec::new();
    }
    ordered_forests(k, k, size - 1)
        .into_iter()
        .map(|slots| Shape { slots })
        .collect()
}

/// Sequences of `m` possibly-empty shapes with `size` vertices in total.
fn ordered_forests(k: usize, m: usize, size: usize) -> Vec<Vec<Option<Shape>>> {
    if m == 0 {
        return if size == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=size {
        let heads: Vec<Option<Shape>> = if first == 0 {
            vec![None]
        } else {
            shapes(k, first).into_iter().map(Some).collect()
        };
        let tails = ordered_forests(k, m - 1, size - first);
        for h in &heads {
            for t in &tails {
                let mut v = Vec::with_capacity(m);
                v.push(h.clone());
                v.extend(t.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

/// Writes `shape` into `slots` under vertex `v`, taking child labels in
/// preorder from `labels`.
fn place(k: usize, v: Label, children: &[Option<Shape>], labels: &mut impl Iterator<Item = Label>, slots: &mut Slots) {
    let mut arr = vec![None; k];
    for (q, c) in children.iter().enumerate() {
        if let Some(shape) = c {
            let u = labels.next().expect("enough labels");
            arr[q] = Some(u);
            // children of u are labeled before the next sibling of u
            place(k, u, &shape.slots, labels, slots);
        }
    }
    slots.insert(v, arr);
}

fn require_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// Every plane k-ary tree on the label set: shapes in generation order, then
/// preorder labelings lexicographically.
pub fn enumerate_trees(k: u32, labels: &[Label], cap: Option<u64>) -> Result<Vec<PlaneTree>> {
    require_k(k)?;
    let labels = label_set(labels)?;
    let n = labels.len() as u64;
    check_cap(&(factorial(n) * gen_catalan(k as u64, n)), cap)?;
    let mut out = Vec::new();
    for shape in shapes(k as usize, labels.len()) {
        for labeling in permutations(&labels) {
            let mut it = labeling.into_iter();
            let root = it.next().unwrap();
            let mut slots = Slots::new();
            place(k as usize, root, &shape.slots, &mut it, &mut slots);
            out.push(PlaneTree { k, root, slots });
        }
    }
    Ok(out)
}

pub fn enumerate_minimal_trees(k: u32, labels: &[Label], cap: Option<u64>) -> Result<Vec<PlaneTree>> {
    Ok(enumerate_trees(k, labels, cap)?
        .into_iter()
        .filter(is_root_minimal)
        .collect())
}

/// Root-minimal trees whose vertex sets partition the ground set, sorted by
/// decreasing root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootMinimalForest {
    parts: Vec<PlaneTree>,
}

impl RootMinimalForest {
    pub fn new(mut parts: Vec<PlaneTree>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invariant("forest", "has no parts"));
        }
        let k = parts[0].k;
        let mut seen = BTreeSet::new();
        for t in &parts {
            if t.k != k {
                return Err(Error::invariant("forest", "parts have different k"));
            }
            if !is_root_minimal(t) {
                return Err(Error::invariant(
                    "forest",
                    format!("part rooted at {} is not root-minimal", t.root),
                ));
            }
            for &v in t.slots.keys() {
                if !seen.insert(v) {
                    return Err(Error::invariant("forest", format!("vertex {v} appears in two parts")));
                }
            }
        }
        parts.sort_by_key(|t| std::cmp::Reverse(t.root));
        Ok(RootMinimalForest { parts })
    }

    pub fn parts(&self) -> &[PlaneTree] {
        &self.parts
    }

    pub fn k(&self) -> u32 {
        self.parts[0].k
    }
}

/// Walks the rightmost branch and cuts every rightmost edge whose lower end
/// is smaller than the root of the piece currently being built.
pub fn tree_to_forest(t: &PlaneTree) -> RootMinimalForest {
    let k = t.k as usize;
    let mut slots = t.slots.clone();
    let mut roots = vec![t.root];
    let mut piece_root = t.root;
    let mut at = t.root;
    while let Some(j) = slots[&at][k - 1] {
        if j < piece_root {
            slots.get_mut(&at).unwrap()[k - 1] = None;
            roots.push(j);
            piece_root = j;
        }
        at = j;
    }
    let parts = roots
        .into_iter()
        .map(|r| PlaneTree::subtree(t.k, &slots, r))
        .collect();
    RootMinimalForest { parts }
}

/// Hangs each part, in order of decreasing root, into the vacant rightmost
/// slot at the end of the rightmost branch built so far.
pub fn forest_to_tree(f: &RootMinimalForest) -> PlaneTree {
    let k = f.k();
    let mut tree = f.parts[0].clone();
    for part in &f.parts[1..] {
        let last = *rightmost_branch(&tree).last().unwrap();
        tree.slots.extend(part.slots.iter().map(|(v, a)| (*v, a.clone())));
        tree.slots.get_mut(&last).unwrap()[k as usize - 1] = Some(part.root);
    }
    tree
}

/// A clockwise cycle of roots, each with its rightmost slot vacant, carrying
/// hanging plane k-ary subtrees. The cycle is stored starting at its
/// minimal label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleRootedTree {
    k: u32,
    cycle: Vec<Label>,
    slots: Slots,
}

fn canonical_rotation(cycle: &[Label]) -> Vec<Label> {
    let start = cycle.iter().position_min().unwrap_or(0);
    cycle[start..].iter().chain(&cycle[..start]).copied().collect()
}

impl CycleRootedTree {
    /// Validates and stores the cycle in canonical rotation.
    pub fn new(k: u32, cycle: Vec<Label>, slots: Slots) -> Result<Self> {
        let kind = "cycle-tree";
        let parent = check_slots(kind, k, &slots)?;
        if cycle.is_empty() {
            return Err(Error::invariant(kind, "cycle is empty"));
        }
        let mut on_cycle = BTreeSet::new();
        for &r in &cycle {
            if !on_cycle.insert(r) {
                return Err(Error::invariant(kind, format!("cycle repeats vertex {r}")));
            }
            let Some(arr) = slots.get(&r) else {
                return Err(Error::invariant(kind, format!("cycle vertex {r} has no slot entry")));
            };
            if arr[k as usize - 1].is_some() {
                return Err(Error::invariant(kind, format!("rightmost slot of cycle vertex {r} is occupied")));
            }
            if parent.contains_key(&r) {
                return Err(Error::invariant(kind, format!("cycle vertex {r} appears as a child")));
            }
        }
        let reached: usize = cycle.iter().map(|&r| preorder(&slots, r).len()).sum();
        if parent.len() + cycle.len() != slots.len() || reached != slots.len() {
            return Err(Error::invariant(kind, "some vertex does not hang off the cycle"));
        }
        Ok(CycleRootedTree {
            k,
            cycle: canonical_rotation(&cycle),
            slots,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Cycle vertices in clockwise order, minimal label first.
    pub fn cycle(&self) -> &[Label] {
        &self.cycle
    }

    pub fn slots(&self) -> &Slots {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Vertices hanging off root `r`, in depth-first order starting at `r`.
    pub fn hanging_preorder(&self, r: Label) -> Vec<Label> {
        preorder(&self.slots, r)
    }

    pub(crate) fn from_parts_unchecked(k: u32, cycle: Vec<Label>, slots: Slots) -> Self {
        CycleRootedTree {
            k,
            cycle: canonical_rotation(&cycle),
            slots,
        }
    }
}

impl fmt::Display for CycleRootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle.iter().join(" → "))?;
        write!(f, " → ({})", self.cycle[0])
    }
}

/// Closes the rightmost branch of a root-minimal tree into the root cycle.
pub fn min_to_cycle(t: &PlaneTree) -> Result<CycleRootedTree> {
    if !is_root_minimal(t) {
        return Err(Error::invariant(
            "tree",
            format!("root {} is not minimal on its rightmost branch", t.root),
        ));
    }
    let branch = rightmost_branch(t);
    let mut slots = t.slots.clone();
    for v in &branch {
        slots.get_mut(v).unwrap()[t.k as usize - 1] = None;
    }
    Ok(CycleRootedTree {
        k: t.k,
        cycle: branch,
        slots,
    })
}

/// Opens the cycle at its minimal vertex; the cycle becomes the rightmost
/// branch of a root-minimal tree.
pub fn cycle_to_min(c: &CycleRootedTree) -> PlaneTree {
    let mut slots = c.slots.clone();
    for w in c.cycle.windows(2) {
        slots.get_mut(&w[0]).unwrap()[c.k as usize - 1] = Some(w[1]);
    }
    PlaneTree {
        k: c.k,
        root: c.cycle[0],
        slots,
    }
}

/// Every cycle-rooted tree on `[n]`, built directly: choose the cycle, then
/// an ordered forest in the `k-1` free slots of each cycle vertex.
pub fn enumerate_cycle_rooted(k: u32, n: u32, cap: Option<u64>) -> Result<Vec<CycleRootedTree>> {
    require_k(k)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    check_cap(&count_ornaments(k as u64, n as u64)?, cap)?;
    let ku = k as usize;
    let ground: Vec<Label> = (1..=n).collect();
    let mut out = Vec::new();
    for r in 1..=n as usize {
        for roots in ground.iter().copied().combinations(r) {
            let rest: Vec<Label> = ground.iter().copied().filter(|v| !roots.contains(v)).collect();
            let forests = ordered_forests(ku, r * (ku - 1), n as usize - r);
            for tail in permutations(&roots[1..]) {
                let mut cycle = vec![roots[0]];
                cycle.extend(tail);
                for forest in &forests {
                    for labeling in permutations(&rest) {
                        let mut it = labeling.into_iter();
                        let mut slots = Slots::new();
                        for (idx, &root) in cycle.iter().enumerate() {
                            let mut children: Vec<Option<Shape>> =
                                forest[idx * (ku - 1)..(idx + 1) * (ku - 1)].to_vec();
                            children.push(None);
                            place(ku, root, &children, &mut it, &mut slots);
                        }
                        out.push(CycleRootedTree::from_parts_unchecked(k, cycle.clone(), slots));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Number of cycle-rooted trees per cycle length (index 0 unused).
pub fn cycle_length_distribution(trees: &[CycleRootedTree]) -> Vec<u64> {
    let n = trees.iter().map(CycleRootedTree::len).max().unwrap_or(0);
    let mut hist = vec![0u64; n + 1];
    for t in trees {
        hist[t.cycle.len()] += 1;
    }
    hist
}
