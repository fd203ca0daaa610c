//! Partition refinement by distance to a pivot, and the recursive refinement
//! that yields the copoint partition of a point sorted by proximity.

use std::collections::BTreeMap;
use std::rc::Rc;

use thiserror::Error;

use crate::space::{DissimilaritySpace, PointId, Row, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefineError {
    #[error("pivot {0} belongs to the set being refined")]
    PivotInSet(PointId),
    #[error("point {0} appears in more than one of the pivot pools and the refined set")]
    Overlap(PointId),
}

/// A sequence of disjoint nonempty blocks. The order of the blocks carries
/// meaning; the order of members inside a block does not.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderedPartition {
    blocks: Vec<Vec<PointId>>,
}

impl OrderedPartition {
    pub fn from_blocks(blocks: Vec<Vec<PointId>>) -> Self {
        debug_assert!(blocks.iter().all(|b| !b.is_empty()));
        OrderedPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<PointId>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<PointId>> {
        self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks with members sorted ascending, for display and comparison.
    pub fn normalized(&self) -> Vec<Vec<PointId>> {
        self.blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect()
    }
}

/// Splits `s` into buckets of equal distance to `q`, by increasing distance.
pub fn refine(space: &DissimilaritySpace, q: PointId, s: &[PointId]) -> Result<OrderedPartition, RefineError> {
    if s.contains(&q) {
        return Err(RefineError::PivotInSet(q));
    }
    Ok(OrderedPartition::from_blocks(refine_unchecked(space, q, s)))
}

pub(crate) fn refine_unchecked(space: &DissimilaritySpace, q: PointId, s: &[PointId]) -> Vec<Vec<PointId>> {
    let row = space.row(q);
    let Some(&first) = s.first() else {
        return Vec::new();
    };
    // Most calls deep in the recursion do not split; skip the map for them.
    let d0 = row.rank(first);
    if s.iter().all(|&x| row.rank(x) == d0) {
        return vec![s.to_vec()];
    }
    let mut buckets: BTreeMap<u32, Vec<PointId>> = BTreeMap::new();
    for &x in s {
        buckets.entry(row.rank(x)).or_default().push(x);
    }
    let parts: Vec<Vec<PointId>> = buckets.into_values().collect();
    debug_assert!(buckets_are_sorted_levels(row, &parts));
    parts
}

/// Constant distance to the pivot inside a block, strictly increasing
/// across blocks.
fn buckets_are_sorted_levels(row: Row<'_>, parts: &[Vec<PointId>]) -> bool {
    let keys: Vec<Value> = parts.iter().map(|b| row[b[0]]).collect();
    parts.iter().zip(&keys).all(|(b, &k)| b.iter().all(|&x| row[x] == k)) && keys.windows(2).all(|w| w[0] < w[1])
}

/// Work counters for one run of [`recursive_refine_with_stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RefineStats {
    /// Number of pivots consumed, one per call to `refine`.
    pub pivots: u64,
    /// Number of blocks produced by those calls.
    pub parts: u64,
    /// Pool links built while assembling the children's pivot pools.
    pub links: u64,
    /// Points read by `refine`, summed over calls.
    pub scanned: u64,
}

impl RefineStats {
    /// Steps spent outside `refine` itself.
    pub fn steps(&self) -> u64 {
        self.pivots + self.parts + self.links
    }
}

/// Persistent list of pivots: a chain of shared blocks, read from `start`
/// within the first block.
#[derive(Clone, Default)]
struct Pool {
    head: Option<Rc<Link>>,
    start: usize,
}

struct Link {
    block: Rc<[PointId]>,
    next: Pool,
}

impl Pool {
    fn cons(block: Rc<[PointId]>, next: Pool) -> Pool {
        if block.is_empty() {
            return next;
        }
        Pool { head: Some(Rc::new(Link { block, next })), start: 0 }
    }

    fn first(&self) -> Option<PointId> {
        self.head.as_ref().map(|l| l.block[self.start])
    }

    /// Drops the first pivot in place.
    fn advance(&mut self) {
        let Some(link) = &self.head else { return };
        if self.start + 1 < link.block.len() {
            self.start += 1;
        } else {
            let next = link.next.clone();
            *self = next;
        }
    }
}

impl Drop for Pool {
    fn drop(&mut self) {
        let mut cur = self.head.take();
        while let Some(rc) = cur {
            match Rc::try_unwrap(rc) {
                Ok(mut link) => cur = link.next.head.take(),
                Err(_) => break,
            }
        }
    }
}

struct Frame {
    inner: Pool,
    set: Rc<[PointId]>,
    outer: Pool,
}

/// Orders `s` into mmodules sorted by a proximity pre-order relative to `p`,
/// consuming inner pivots first and outer pivots after.
pub fn recursive_refine(
    space: &DissimilaritySpace,
    p: PointId,
    inner: &[PointId],
    s: &[PointId],
    outer: &[PointId],
) -> Result<OrderedPartition, RefineError> {
    recursive_refine_with_stats(space, p, inner, s, outer).map(|(part, _)| part)
}

pub fn recursive_refine_with_stats(
    space: &DissimilaritySpace,
    p: PointId,
    inner: &[PointId],
    s: &[PointId],
    outer: &[PointId],
) -> Result<(OrderedPartition, RefineStats), RefineError> {
    let mut owner = vec![0u8; space.len()];
    for (tag, xs) in [(1u8, s), (2, inner), (3, outer)] {
        for &x in xs {
            match owner[x] {
                0 => owner[x] = tag,
                1 => return Err(RefineError::PivotInSet(x)),
                _ => return Err(RefineError::Overlap(x)),
            }
        }
    }
    let mut stats = RefineStats::default();
    let blocks = run(space, p, inner, s, outer, &mut stats);
    Ok((OrderedPartition::from_blocks(blocks), stats))
}

pub(crate) fn run(
    space: &DissimilaritySpace,
    p: PointId,
    inner: &[PointId],
    s: &[PointId],
    outer: &[PointId],
    stats: &mut RefineStats,
) -> Vec<Vec<PointId>> {
    if s.is_empty() {
        return Vec::new();
    }
    let pool_of = |xs: &[PointId]| Pool::cons(Rc::from(xs), Pool::default());
    let mut out = Vec::new();
    let mut stack = vec![Frame { inner: pool_of(inner), set: Rc::from(s), outer: pool_of(outer) }];

    while let Some(mut f) = stack.pop() {
        // No pivot splits a single point.
        if f.set.len() == 1 {
            out.push(f.set.to_vec());
            continue;
        }
        loop {
            let (q, from_outer) = match (f.inner.first(), f.outer.first()) {
                (Some(q), _) => (q, false),
                (None, Some(q)) => (q, true),
                (None, None) => {
                    out.push(f.set.to_vec());
                    break;
                }
            };
            if from_outer {
                f.outer.advance();
            } else {
                f.inner.advance();
            }
            stats.pivots += 1;
            stats.scanned += f.set.len() as u64;

            // Read d(x,q) from the rows of the set: they stay cached across pivots.
            let d0 = space.rank(f.set[0], q);
            if f.set.iter().all(|&x| space.rank(x, q) == d0) {
                stats.parts += 1;
                continue;
            }
            let mut parts = refine_unchecked(space, q, &f.set);
            stats.parts += parts.len() as u64;
            if from_outer {
                let dpq = space.d(p, q);
                let alpha = parts.iter().position(|b| space.d(b[0], q) > dpq).unwrap_or(parts.len());
                parts[..alpha].reverse();
            }
            let parts: Vec<Rc<[PointId]>> = parts.into_iter().map(Rc::from).collect();
            let m = parts.len();

            // Out_i = S'_{i+1} ++ ... ++ S'_m ++ Out, built once from the back.
            let mut outs = Vec::with_capacity(m);
            let mut acc = f.outer.clone();
            for i in (0..m).rev() {
                outs.push(acc.clone());
                acc = Pool::cons(parts[i].clone(), acc);
                stats.links += 1;
            }
            outs.reverse();

            for (i, out_i) in outs.into_iter().enumerate().rev() {
                let mut in_i = f.inner.clone();
                for b in parts[..i].iter().rev() {
                    in_i = Pool::cons(b.clone(), in_i);
                    stats.links += 1;
                }
                stack.push(Frame { inner: in_i, set: parts[i].clone(), outer: out_i });
            }
            break;
        }
    }
    out
}

/// The copoints of `p`, in proximity order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopointDecomposition {
    pub p: PointId,
    pub copoints: OrderedPartition,
}

pub fn copoint_partition(space: &DissimilaritySpace, p: PointId) -> CopointDecomposition {
    let rest: Vec<PointId> = space.points().filter(|&x| x != p).collect();
    let blocks = run(space, p, &[p], &rest, &[], &mut RefineStats::default());
    CopointDecomposition { p, copoints: OrderedPartition::from_blocks(blocks) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space3() -> DissimilaritySpace {
        DissimilaritySpace::from_rows(&[[0, 1, 2], [1, 0, 1], [2, 1, 0]]).unwrap()
    }

    #[test]
    fn refine_rejects_pivot_in_set() {
        assert_eq!(refine(&space3(), 0, &[0, 1]), Err(RefineError::PivotInSet(0)));
    }

    #[test]
    fn refine_single_point() {
        assert_eq!(refine(&space3(), 0, &[2]).unwrap().blocks(), &[vec![2]]);
    }

    #[test]
    fn no_pivots_returns_the_set() {
        let part = recursive_refine(&space3(), 0, &[], &[1, 2], &[]).unwrap();
        assert_eq!(part.blocks(), &[vec![1, 2]]);
    }

    #[test]
    fn overlapping_pools_are_rejected() {
        assert_eq!(recursive_refine(&space3(), 0, &[0], &[1], &[0]), Err(RefineError::Overlap(0)));
        assert_eq!(recursive_refine(&space3(), 0, &[1], &[1, 2], &[]), Err(RefineError::PivotInSet(1)));
    }

    #[test]
    fn single_point_has_no_copoints() {
        let s = DissimilaritySpace::from_rows(&[[0]]).unwrap();
        assert!(copoint_partition(&s, 0).copoints.is_empty());
    }

    #[test]
    fn long_pool_chains_drop_without_overflow() {
        let mut pool = Pool::default();
        for i in 0..200_000 {
            pool = Pool::cons(Rc::from(&[i][..]), pool);
        }
        drop(pool);
    }
}
