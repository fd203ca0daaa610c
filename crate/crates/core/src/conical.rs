//! Copoint classification and the admissible-hole split of a copoint seen
//! from its attaching point.

use thiserror::Error;

use crate::space::{DissimilaritySpace, PointId, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConicalError {
    #[error("block is empty")]
    EmptyBlock,
    #[error("points {0} and {1} are at different distances from the apex")]
    NotEquidistant(PointId, PointId),
    #[error("no admissible hole for apex {apex}")]
    NoAdmissibleHole { apex: PointId },
}

/// A block sorted in a compatible order of its own, with the extreme point
/// that faces away from the apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentedBlock {
    pub rep: PointId,
    pub members: Vec<PointId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopointClass {
    Separable,
    Tight,
    NonSeparable,
}

pub fn classify_copoint(space: &DissimilaritySpace, p: PointId, copoint: &[PointId]) -> Result<CopointClass, ConicalError> {
    let &first = copoint.first().ok_or(ConicalError::EmptyBlock)?;
    let delta = space.d(p, first);
    if let Some(&x) = copoint.iter().find(|&&x| space.d(p, x) != delta) {
        return Err(ConicalError::NotEquidistant(first, x));
    }
    let diam = space.diameter(copoint).map_err(|_| ConicalError::EmptyBlock)?;
    Ok(match diam.cmp(&delta) {
        std::cmp::Ordering::Greater => CopointClass::Separable,
        std::cmp::Ordering::Equal => CopointClass::Tight,
        std::cmp::Ordering::Less => CopointClass::NonSeparable,
    })
}

/// Outcome of [`separate_if_separable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Whole(RepresentedBlock),
    Halved(RepresentedBlock, RepresentedBlock),
}

impl Separation {
    pub fn blocks(&self) -> Vec<&RepresentedBlock> {
        match self {
            Separation::Whole(b) => vec![b],
            Separation::Halved(l, r) => vec![l, r],
        }
    }

    pub fn into_blocks(self) -> Vec<RepresentedBlock> {
        match self {
            Separation::Whole(b) => vec![b],
            Separation::Halved(l, r) => vec![l, r],
        }
    }
}

/// Splits a sorted copoint at its first admissible hole when its end points
/// are farther apart than the copoint is from `p`.
pub fn separate_if_separable(space: &DissimilaritySpace, p: PointId, sorted: Vec<PointId>) -> Result<Separation, ConicalError> {
    separate_counted(space, p, sorted).0
}

/// As [`separate_if_separable`], also returning how many holes were tested.
pub fn separate_counted(
    space: &DissimilaritySpace,
    p: PointId,
    sorted: Vec<PointId>,
) -> (Result<Separation, ConicalError>, usize) {
    let (Some(&lo), Some(&hi)) = (sorted.first(), sorted.last()) else {
        return (Err(ConicalError::EmptyBlock), 0);
    };
    let delta = space.d(p, lo);
    if space.d(lo, hi) <= delta {
        return (Ok(Separation::Whole(RepresentedBlock { rep: lo, members: sorted })), 0);
    }
    let mut visited = 0;
    for (i, w) in sorted.windows(2).enumerate() {
        visited += 1;
        let (y, z) = (w[0], w[1]);
        if space.d(lo, y) <= delta && space.d(z, hi) <= delta && space.d(y, z) >= delta {
            let mut left = sorted;
            let right = left.split_off(i + 1);
            let sep = Separation::Halved(
                RepresentedBlock { rep: lo, members: left },
                RepresentedBlock { rep: hi, members: right },
            );
            return (Ok(sep), visited);
        }
    }
    (Err(ConicalError::NoAdmissibleHole { apex: p }), visited)
}

/// A place where the apex can be inserted into a sorted block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Hole {
    /// Between positions `i` and `i + 1`.
    Between(usize),
    /// Before the first or after the last point.
    Wrap,
}

/// Every hole of `sorted` at which `p` can be inserted so that the block
/// stays compatibly ordered. Internal holes are tested pointwise and the wrap
/// hole is admissible exactly when the block's end points are within `δ`.
pub fn admissible_holes(space: &DissimilaritySpace, p: PointId, sorted: &[PointId]) -> Vec<Hole> {
    let (Some(&lo), Some(&hi)) = (sorted.first(), sorted.last()) else {
        return Vec::new();
    };
    let delta = space.d(p, lo);
    let mut holes = Vec::new();
    for i in 0..sorted.len() - 1 {
        let (left, right) = sorted.split_at(i + 1);
        let ok_left = left.iter().all(|&x| left.iter().all(|&y| space.d(x, y) <= delta));
        let ok_right = right.iter().all(|&x| right.iter().all(|&y| space.d(x, y) <= delta));
        let ok_cross = left.iter().all(|&x| right.iter().all(|&y| space.d(x, y) >= delta));
        if ok_left && ok_right && ok_cross {
            holes.push(Hole::Between(i));
        }
    }
    if space.d(lo, hi) <= delta {
        holes.push(Hole::Wrap);
    }
    holes
}

/// `δ` of a copoint: its common distance to `p`.
pub fn delta(space: &DissimilaritySpace, p: PointId, copoint: &[PointId]) -> Option<Value> {
    copoint.first().map(|&x| space.d(p, x))
}
