//! Divide and conquer over copoint partitions.
//!
//! For a point `p` of the current set: split the rest into the copoints of
//! `p` in proximity order, order every copoint recursively, cut the
//! copoints whose end points are too far apart into two halves, sort the
//! representatives of the resulting blocks around `p`, and splice the blocks
//! in at their representatives. The result is checked in `O(n²)` before it
//! is reported as a compatible order.

use thiserror::Error;

use crate::bipartition::{sides, Side};
use crate::conical::{separate_counted, ConicalError, RepresentedBlock, Separation};
use crate::refinement::{self, CopointDecomposition, RefineStats};
use crate::rng::SplitMix;
use crate::space::{DissimilaritySpace, Order, PointId, SubsetView, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("no admissible hole in a copoint of {pivot}")]
    NoAdmissibleHole { pivot: PointId, copoint: Vec<PointId> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The candidate order has a decrease away from the diagonal.
    Violation { order: Order, violation: Violation },
    /// A copoint of `pivot`, listed in the order found for it, has no place
    /// where `pivot` fits.
    NoAdmissibleHole { pivot: PointId, copoint: Vec<PointId> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecognitionResult {
    Robinson(Order),
    NotRobinson(Witness),
}

impl RecognitionResult {
    pub fn is_robinson(&self) -> bool {
        matches!(self, RecognitionResult::Robinson(_))
    }

    pub fn order(&self) -> Option<&Order> {
        match self {
            RecognitionResult::Robinson(o) => Some(o),
            RecognitionResult::NotRobinson(_) => None,
        }
    }
}

/// How the point `p` is picked in each subproblem.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// The smallest point id of the set.
    #[default]
    Lowest,
    /// A uniformly drawn member, from a generator seeded once per run.
    Seeded(u64),
}

/// How the free side choices of the side assignment are made.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SideRule {
    #[default]
    AlwaysRight,
    Seeded(u64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub pivot: PivotRule,
    pub sides: SideRule,
}

/// Hooks into the recursion, for tests and diagnostics.
pub trait Observer {
    /// The copoints of `p` inside the current subproblem.
    fn copoints(&mut self, _p: PointId, _copoints: &[Vec<PointId>]) {}
    /// A copoint, sorted by the order found for it, and how it was cut.
    fn separated(&mut self, _p: PointId, _sorted: &[PointId], _result: &Separation) {}
}

impl Observer for () {}

/// Work counters for one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub refine: RefineStats,
    /// Subproblems with at least two points.
    pub frames: u64,
    /// Holes tested while cutting copoints.
    pub holes: u64,
    /// Points handled by the side assignments.
    pub side_points: u64,
}

impl Stats {
    pub fn steps(&self) -> u64 {
        self.refine.steps() + self.refine.scanned + self.frames + self.holes + self.side_points
    }
}

/// A compatible order of `space` if it is Robinson. The result is not
/// checked; see [`recognize`].
pub fn find_compatible_order(space: &DissimilaritySpace) -> Result<Order, RecognizeError> {
    find_compatible_order_with(space, Options::default(), &mut ()).map(|(o, _)| o)
}

struct Frame {
    p: PointId,
    copoints: Vec<Vec<PointId>>,
    /// Copoints `next..` are done.
    next: usize,
    /// Represented blocks of the finished copoints, last copoint first.
    blocks: Vec<RepresentedBlock>,
}

pub fn find_compatible_order_with(
    space: &DissimilaritySpace,
    options: Options,
    observer: &mut dyn Observer,
) -> Result<(Order, Stats), RecognizeError> {
    let mut stats = Stats::default();
    let mut pivot_rng = match options.pivot {
        PivotRule::Seeded(seed) => Some(SplitMix::new(seed)),
        PivotRule::Lowest => None,
    };
    let mut side_rng = match options.sides {
        SideRule::Seeded(seed) => Some(SplitMix::new(seed)),
        SideRule::AlwaysRight => None,
    };
    let mut slot = vec![usize::MAX; space.len()];
    let mut stack: Vec<Frame> = Vec::new();

    let all: Vec<PointId> = space.points().collect();
    let mut result = start(space, all, &mut pivot_rng, observer, &mut stack, &mut stats);

    while let Some(top) = stack.last_mut() {
        if let Some(sorted) = result.take() {
            let (sep, holes) = separate_counted(space, top.p, sorted.clone());
            stats.holes += holes as u64;
            let sep = sep.map_err(|e| match e {
                ConicalError::NoAdmissibleHole { .. } => RecognizeError::NoAdmissibleHole { pivot: top.p, copoint: sorted.clone() },
                other => unreachable!("copoints are nonempty and equidistant: {other}"),
            })?;
            observer.separated(top.p, &sorted, &sep);
            let mut pieces = sep.into_blocks();
            pieces.reverse();
            top.blocks.extend(pieces);
        }
        if top.next == 0 {
            let frame = stack.pop().unwrap();
            result = Some(splice(space, frame, &mut slot, &mut side_rng, &mut stats));
            continue;
        }
        top.next -= 1;
        let set = std::mem::take(&mut top.copoints[top.next]);
        result = start(space, set, &mut pivot_rng, observer, &mut stack, &mut stats);
    }
    let seq = result.unwrap_or_default();
    Ok((Order::from_vec_unchecked(seq), stats))
}

/// Orders sets of at most one point directly; otherwise opens a frame for
/// the set and returns `None`.
fn start(
    space: &DissimilaritySpace,
    set: Vec<PointId>,
    pivot_rng: &mut Option<SplitMix>,
    observer: &mut dyn Observer,
    stack: &mut Vec<Frame>,
    stats: &mut Stats,
) -> Option<Vec<PointId>> {
    if set.len() <= 1 {
        return Some(set);
    }
    stats.frames += 1;
    let p = match pivot_rng.as_mut() {
        None => *set.iter().min().unwrap(),
        Some(rng) => set[rng.below(set.len() as u64) as usize],
    };
    let rest: Vec<PointId> = set.into_iter().filter(|&x| x != p).collect();
    let copoints = refinement::run(space, p, &[p], &rest, &[], &mut stats.refine);
    observer.copoints(p, &copoints);
    stack.push(Frame { p, next: copoints.len(), copoints, blocks: Vec::new() });
    None
}

/// Sorts the representatives of a finished frame around `p` and lays out
/// its blocks.
fn splice(
    space: &DissimilaritySpace,
    mut frame: Frame,
    slot: &mut [usize],
    side_rng: &mut Option<SplitMix>,
    stats: &mut Stats,
) -> Vec<PointId> {
    frame.blocks.reverse();
    stats.side_points += frame.blocks.len() as u64;
    let choose = |_: usize| match side_rng.as_mut().map(SplitMix::coin) {
        Some(true) => Side::Left,
        _ => Side::Right,
    };
    lay_out(space, frame.p, &frame.blocks, slot, choose)
}

/// Orders `blocks` (listed in proximity order, each sorted compatibly and
/// facing away from `p` at its representative) around `p`. Left of `p` a
/// block starts at its representative, right of `p` it ends there.
/// `choose` decides the free sides as in [`crate::bipartition::sort_by_bipartition_with`].
pub fn merge(space: &DissimilaritySpace, p: PointId, blocks: &[RepresentedBlock], choose: impl FnMut(usize) -> Side) -> Order {
    let mut slot = vec![usize::MAX; space.len()];
    Order::from_vec_unchecked(lay_out(space, p, blocks, &mut slot, choose))
}

fn lay_out(
    space: &DissimilaritySpace,
    p: PointId,
    blocks: &[RepresentedBlock],
    slot: &mut [usize],
    choose: impl FnMut(usize) -> Side,
) -> Vec<PointId> {
    let reps: Vec<PointId> = blocks.iter().map(|b| b.rep).collect();
    for (i, &r) in reps.iter().enumerate() {
        slot[r] = i;
    }
    let assignment = sides(space, p, &reps, choose);

    let mut out = Vec::with_capacity(blocks.iter().map(|b| b.members.len()).sum::<usize>() + 1);
    for &r in assignment.left.iter().rev() {
        let b = &blocks[slot[r]].members;
        if b.first() == Some(&r) {
            out.extend_from_slice(b);
        } else {
            out.extend(b.iter().rev());
        }
    }
    out.push(p);
    for &r in &assignment.right {
        let b = &blocks[slot[r]].members;
        if b.last() == Some(&r) {
            out.extend_from_slice(b);
        } else {
            out.extend(b.iter().rev());
        }
    }
    out
}

/// Runs [`find_compatible_order`] and checks the result.
pub fn recognize(space: &DissimilaritySpace) -> RecognitionResult {
    recognize_with(space, Options::default())
}

pub fn recognize_with(space: &DissimilaritySpace, options: Options) -> RecognitionResult {
    match find_compatible_order_with(space, options, &mut ()) {
        Err(RecognizeError::NoAdmissibleHole { pivot, copoint }) => {
            RecognitionResult::NotRobinson(Witness::NoAdmissibleHole { pivot, copoint })
        }
        Ok((order, _)) => match space.first_violation(&order) {
            None => RecognitionResult::Robinson(order),
            Some(violation) => RecognitionResult::NotRobinson(Witness::Violation { order, violation }),
        },
    }
}

/// The space whose points are `{p}` followed by the copoints of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub classes: Vec<Vec<PointId>>,
    pub space: DissimilaritySpace,
}

pub fn quotient_space(space: &DissimilaritySpace, dec: &CopointDecomposition) -> Quotient {
    let mut classes = vec![vec![dec.p]];
    classes.extend(dec.copoints.blocks().iter().cloned());
    let reps: Vec<PointId> = classes.iter().map(|c| c[0]).collect();
    let view = SubsetView::new(reps, space.len()).expect("classes are disjoint");
    Quotient { space: space.restrict(&view), classes }
}

/// Copoints of `p` with every separable one replaced by its two halves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedQuotient {
    pub p: PointId,
    /// Blocks in proximity order, each with the index of the copoint it
    /// came from.
    pub blocks: Vec<(RepresentedBlock, usize)>,
    /// Point 0 is `p`, point `i` is `blocks[i - 1]`. Two halves of one
    /// copoint are at the diameter of that copoint.
    pub space: DissimilaritySpace,
}

impl ExtendedQuotient {
    pub fn representatives(&self) -> Vec<PointId> {
        self.blocks.iter().map(|(b, _)| b.rep).collect()
    }
}

pub fn extended_quotient(space: &DissimilaritySpace, p: PointId) -> Result<ExtendedQuotient, RecognizeError> {
    let dec = refinement::copoint_partition(space, p);
    let mut blocks = Vec::new();
    let mut diam = Vec::new();
    for (i, c) in dec.copoints.blocks().iter().enumerate() {
        let view = SubsetView::new(c.clone(), space.len()).expect("copoint is a set");
        let local = find_compatible_order(&space.restrict(&view))?;
        let sorted: Vec<PointId> = local.as_slice().iter().map(|&x| view.parent_of(x)).collect();
        let sep = separate_counted(space, p, sorted.clone())
            .0
            .map_err(|_| RecognizeError::NoAdmissibleHole { pivot: p, copoint: sorted })?;
        diam.push(space.diameter(c).expect("copoint is nonempty"));
        blocks.extend(sep.into_blocks().into_iter().map(|b| (b, i)));
    }
    let point = |k: usize| if k == 0 { p } else { blocks[k - 1].0.rep };
    let matrix = DissimilaritySpace::from_fn(blocks.len() + 1, |a, b| {
        if a > 0 && blocks[a - 1].1 == blocks[b - 1].1 {
            diam[blocks[a - 1].1]
        } else {
            space.d(point(a), point(b))
        }
    })
    .expect("distances are nonnegative")
    .with_scale(space.scale());
    Ok(ExtendedQuotient { p, blocks, space: matrix })
}
