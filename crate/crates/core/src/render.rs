//! Plain-text pictures of paths and trees.
//!
//! Path grids are drawn top row first. Each row is prefixed with the label of
//! its height (blank for unlabeled heights); cells are `#` for a touch, `o`
//! for any other path point, `/` for an unvisited diagonal point and `.`
//! otherwise. Trees are listed in preorder, one slot per line as `[q] child`
//! or `[q] -` when vacant.

use std::collections::BTreeSet;
use std::fmt::Write;

use itertools::Itertools;

use crate::enumerate::Label;
use crate::multisets::CyclicMultiset;
use crate::paths::{diagonal_touches, GoodPath, Step};
use crate::structure::Structure;
use crate::trees::{CycleRootedTree, PlaneTree, Slots};

/// `(k-1)n + 1` lines, one per height.
pub fn render_path(p: &GoodPath) -> String {
    let slope = p.k() as usize - 1;
    let n = p.n();
    let top = slope * n;
    let mut visited = BTreeSet::from([(0, 0)]);
    let (mut x, mut y) = (0, 0);
    for s in p.steps() {
        match s {
            Step::R => x += 1,
            Step::U => y += 1,
        }
        visited.insert((x, y));
    }
    let touches: BTreeSet<(usize, usize)> = diagonal_touches(p)
        .into_iter()
        .map(|(h, _)| (h / slope, h))
        .collect();
    let width = p.labels().iter().map(|l| l.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for y in (0..=top).rev() {
        let label = if y % slope == 0 && y < top {
            p.labels()[y / slope].to_string()
        } else {
            String::new()
        };
        let cells = (0..=n)
            .map(|x| {
                if touches.contains(&(x, y)) {
                    '#'
                } else if visited.contains(&(x, y)) {
                    'o'
                } else if y == slope * x {
                    '/'
                } else {
                    '.'
                }
            })
            .join(" ");
        writeln!(out, "{label:>width$} | {cells}").unwrap();
    }
    out
}

fn render_subtree(out: &mut String, slots: &Slots, v: Label, depth: usize, cycle_next: Option<Label>) {
    let pad = "  ".repeat(depth + 1);
    let k = slots[&v].len();
    for (q, child) in slots[&v].iter().enumerate() {
        match (child, cycle_next) {
            (Some(c), _) => {
                writeln!(out, "{pad}[{}] {c}", q + 1).unwrap();
                render_subtree(out, slots, *c, depth + 1, None);
            }
            (None, Some(next)) if q + 1 == k => writeln!(out, "{pad}[{}] → {next}", q + 1).unwrap(),
            (None, _) => writeln!(out, "{pad}[{}] -", q + 1).unwrap(),
        }
    }
}

pub fn render_tree(t: &PlaneTree) -> String {
    let mut out = format!("{}\n", t.root());
    render_subtree(&mut out, t.slots(), t.root(), 0, None);
    out
}

/// Header `1 → 3 → (1)`, then each root with its hanging subtree; the
/// `k`-th slot of a root points along the cycle.
pub fn render_cycle_tree(c: &CycleRootedTree) -> String {
    let mut out = format!("{c}\n");
    let cycle = c.cycle();
    for (i, &r) in cycle.iter().enumerate() {
        out.push_str(&format!("{r}\n"));
        render_subtree(&mut out, c.slots(), r, 0, Some(cycle[(i + 1) % cycle.len()]));
    }
    out
}

pub fn render_multiset(m: &CyclicMultiset) -> String {
    let mut out = format!("{} → ({})\n", m.cycle().iter().join(" → "), m.cycle()[0]);
    for &i in m.cycle() {
        writeln!(out, "  {i}: {}", m.f()[&i].iter().join(" ")).unwrap();
    }
    out
}

pub fn render(s: &Structure) -> String {
    match s {
        Structure::Path(p) => render_path(p),
        Structure::Ornament(o) => render_path(o.rep()),
        Structure::Field(f) => f.parts().iter().map(render_path).join("\n"),
        Structure::Tree(t) => render_tree(t),
        Structure::Forest(f) => f.parts().iter().map(render_tree).join("\n"),
        Structure::CycleTree(c) => render_cycle_tree(c),
        Structure::Multiset(m) => render_multiset(m),
    }
}
