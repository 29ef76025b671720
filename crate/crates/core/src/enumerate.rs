//! Shared helpers for the exhaustive enumerators.

use itertools::Itertools;
use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Vertex / height label. Labels are positive integers.
pub type Label = u32;

/// Enumerators refuse to materialize more structures than this unless the
/// caller passes `None` as the cap.
pub const DEFAULT_CAP: u64 = 10_000_000;

pub(crate) fn check_cap(predicted: &BigUint, cap: Option<u64>) -> Result<()> {
    match cap {
        Some(cap) if *predicted > BigUint::from(cap) => Err(Error::ResourceCap {
            predicted: predicted.to_string(),
            cap,
        }),
        _ => Ok(()),
    }
}

/// Sorted copy of a label set, rejecting zero and duplicates.
pub(crate) fn label_set(labels: &[Label]) -> Result<Vec<Label>> {
    if labels.is_empty() {
        return Err(Error::InvalidArgument("label set is empty".into()));
    }
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    if sorted[0] == 0 {
        return Err(Error::InvalidArgument("labels must be positive".into()));
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(format!("label {} repeated", w[0])));
    }
    Ok(sorted)
}

/// All orderings of `items` (assumed sorted), lexicographically.
pub(crate) fn permutations(items: &[Label]) -> impl Iterator<Item = Vec<Label>> + '_ {
    items.iter().copied().permutations(items.len())
}

/// Set partitions of `items` into exactly `blocks` nonempty blocks, in
/// restricted-growth order. Blocks are ordered by their first element.
pub(crate) fn set_partitions(items: &[Label], blocks: usize) -> Vec<Vec<Vec<Label>>> {
    fn go(
        items: &[Label],
        blocks: usize,
        idx: usize,
        current: &mut Vec<Vec<Label>>,
        out: &mut Vec<Vec<Vec<Label>>>,
    ) {
        let remaining = items.len() - idx;
        if current.len() + remaining < blocks {
            return;
        }
        if idx == items.len() {
            if current.len() == blocks {
                out.push(current.clone());
            }
            return;
        }
        for b in 0..current.len() {
            current[b].push(items[idx]);
            go(items, blocks, idx + 1, current, out);
            current[b].pop();
        }
        if current.len() < blocks {
            current.push(vec![items[idx]]);
            go(items, blocks, idx + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(items, blocks, 0, &mut Vec::new(), &mut out);
    out
}
