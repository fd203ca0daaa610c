//! Side assignment: turning a proximity order around `p` into a compatible
//! order by deciding, for every point, whether it goes left or right of `p`.

use crate::space::{DissimilaritySpace, Order, PointId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Points left and right of `p`, each listed by increasing proximity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SideAssignment {
    pub left: Vec<PointId>,
    pub right: Vec<PointId>,
}

impl SideAssignment {
    /// `reverse(left) ++ [p] ++ right`.
    pub fn into_order(self, p: PointId) -> Vec<PointId> {
        let mut seq = self.left;
        seq.reverse();
        seq.push(p);
        seq.extend(self.right);
        seq
    }
}

/// Sorts `proximity` (all points but `p`, in a proximity order) into a
/// compatible order, placing each free component on the right.
pub fn sort_by_bipartition(space: &DissimilaritySpace, p: PointId, proximity: &[PointId]) -> Order {
    Order::from_vec_unchecked(sides(space, p, proximity, |_| Side::Right).into_order(p))
}

/// As [`sort_by_bipartition`], asking `choose` for the side of the largest
/// point of each component. `choose` receives the running count of choices
/// made so far, starting at 0.
pub fn sort_by_bipartition_with(
    space: &DissimilaritySpace,
    p: PointId,
    proximity: &[PointId],
    choose: impl FnMut(usize) -> Side,
) -> Order {
    Order::from_vec_unchecked(sides(space, p, proximity, choose).into_order(p))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Undecided,
    Decided(Side),
}

/// Core of the side assignment. Runs over points from farthest to nearest;
/// the undecided list shrinks each round to the points equidistant from the
/// current pivot and `p`.
pub fn sides(
    space: &DissimilaritySpace,
    p: PointId,
    proximity: &[PointId],
    mut choose: impl FnMut(usize) -> Side,
) -> SideAssignment {
    let mut state = vec![State::Undecided; space.len()];
    // Both vectors hold their list back to front: the last pushed is the
    // nearest so far.
    let mut left: Vec<PointId> = Vec::with_capacity(proximity.len());
    let mut right: Vec<PointId> = Vec::with_capacity(proximity.len());
    let mut undecided: Vec<PointId> = proximity.iter().rev().copied().collect();
    let mut skipped: Vec<PointId> = Vec::new();
    let mut choices = 0;

    for &q in proximity.iter().rev() {
        if state[q] == State::Undecided {
            let side = choose(choices);
            choices += 1;
            match side {
                Side::Left => left.push(q),
                Side::Right => right.push(q),
            }
            state[q] = State::Decided(side);
            debug_assert_eq!(undecided.first(), Some(&q));
        }
        let State::Decided(q_side) = state[q] else { unreachable!() };
        let dpq = space.rank(p, q);
        let row = space.row(q);
        skipped.clear();
        for &x in &undecided {
            if state[x] != State::Undecided {
                continue;
            }
            let dxq = row.rank(x);
            if dxq == dpq {
                skipped.push(x);
                continue;
            }
            let side = if (dxq < dpq) == (q_side == Side::Left) { Side::Left } else { Side::Right };
            let (same, other) = match side {
                Side::Left => (&mut left, &mut right),
                Side::Right => (&mut right, &mut left),
            };
            same.push(x);
            state[x] = State::Decided(side);
            for &y in &skipped {
                state[y] = State::Decided(side.opposite());
            }
            other.extend_from_slice(&skipped);
            skipped.clear();
        }
        std::mem::swap(&mut undecided, &mut skipped);
    }

    left.reverse();
    right.reverse();
    SideAssignment { left, right }
}

/// Same side when `d(u,v) < d(p,v)`, opposite sides when `d(u,v) > d(p,v)`,
/// for every `u` before `v` in the proximity order. Holds for every output
/// of [`sides`] on a Robinson space; other inputs may break it.
pub fn sides_are_consistent(space: &DissimilaritySpace, p: PointId, proximity: &[PointId], sides: &SideAssignment) -> bool {
    let mut side = vec![None; space.len()];
    for &x in &sides.left {
        side[x] = Some(Side::Left);
    }
    for &x in &sides.right {
        side[x] = Some(Side::Right);
    }
    for (j, &v) in proximity.iter().enumerate() {
        let dpv = space.d(p, v);
        for &u in &proximity[..j] {
            let duv = space.d(u, v);
            if (duv < dpv && side[u] != side[v]) || (duv > dpv && side[u] == side[v]) {
                return false;
            }
        }
    }
    true
}

/// An interval of the proximity order whose sides are fixed by the side of
/// its last point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangledComponent {
    pub members: Vec<PointId>,
    pub max: PointId,
}

/// Components of the tangling graph, built explicitly: points are linked
/// when `d(u,v) != d(p,v)` for `u` before `v`, and two link components are
/// merged when their spans in the proximity order overlap. Returned in the
/// order of their last points.
pub fn tangled_components(space: &DissimilaritySpace, p: PointId, proximity: &[PointId]) -> Vec<TangledComponent> {
    let k = proximity.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for j in 0..k {
        let v = proximity[j];
        for i in 0..j {
            if space.d(proximity[i], v) != space.d(p, v) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    // Span of each link component, then merge overlapping spans.
    let mut span: Vec<Option<(usize, usize)>> = vec![None; k];
    for i in 0..k {
        let r = find(&mut parent, i);
        span[r] = Some(match span[r] {
            None => (i, i),
            Some((lo, _)) => (lo, i),
        });
    }
    let mut spans: Vec<(usize, usize)> = span.into_iter().flatten().collect();
    spans.sort_unstable();
    let mut merged: Vec<(usize, usize)> = Vec::new();
    for (lo, hi) in spans {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    merged
        .into_iter()
        .map(|(lo, hi)| TangledComponent { members: proximity[lo..=hi].to_vec(), max: proximity[hi] })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let s = DissimilaritySpace::from_rows(&[[0, 4], [4, 0]]).unwrap();
        assert_eq!(sort_by_bipartition(&s, 0, &[1]).as_slice(), &[0, 1]);
        assert_eq!(sort_by_bipartition_with(&s, 0, &[1], |_| Side::Left).as_slice(), &[1, 0]);
    }

    #[test]
    fn equidistant_space_has_singleton_components() {
        let s = DissimilaritySpace::from_fn(5, |_, _| 2.into()).unwrap();
        let comps = tangled_components(&s, 0, &[1, 2, 3, 4]);
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn line_is_recovered() {
        // Points on a line at 0, 1, 3, 6, 10 seen from the point at 3.
        let xs = [0i64, 1, 3, 6, 10];
        let s = DissimilaritySpace::from_fn(5, |i, j| crate::Value::from_units((xs[i] - xs[j]).abs())).unwrap();
        let order = sort_by_bipartition(&s, 2, &[1, 3, 0, 4]);
        assert!(s.is_robinson_order(&order));
    }
}
