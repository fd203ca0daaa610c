use std::collections::BTreeSet;

use thiserror::Error;

use crate::mmodules::is_mmodule;
use crate::refinement::copoint_partition;
use crate::space::{DissimilaritySpace, Order, PointId};

pub const BRUTE_LIMIT: usize = 10;
pub const ENUMERATION_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} points is beyond the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

fn guard(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// `d(x,z) >= max(d(x,y), d(y,z))` for all positions `x < y < z`.
pub fn triple_check(space: &DissimilaritySpace, order: &Order) -> bool {
    let o = order.as_slice();
    let n = o.len();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            (j + 1..n).all(|k| {
                let xz = space.d(o[i], o[k]);
                xz >= space.d(o[i], o[j]) && xz >= space.d(o[j], o[k])
            })
        })
    })
}

/// Depth-first search over permutations in lexicographic order. A point may
/// be appended only if every triple it closes satisfies the triple check.
/// `visit` returns `false` to stop the search.
fn search(space: &DissimilaritySpace, mut visit: impl FnMut(&[PointId]) -> bool) {
    let n = space.len();
    let mut prefix: Vec<PointId> = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn fits(space: &DissimilaritySpace, prefix: &[PointId], z: PointId) -> bool {
        prefix.iter().enumerate().all(|(i, &x)| {
            let xz = space.d(x, z);
            prefix[i + 1..].iter().all(|&y| xz >= space.d(x, y) && xz >= space.d(y, z))
        })
    }

    fn go(
        space: &DissimilaritySpace,
        prefix: &mut Vec<PointId>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[PointId]) -> bool,
    ) -> bool {
        if prefix.len() == used.len() {
            return visit(prefix);
        }
        for z in 0..used.len() {
            if used[z] || !fits(space, prefix, z) {
                continue;
            }
            used[z] = true;
            prefix.push(z);
            let go_on = go(space, prefix, used, visit);
            prefix.pop();
            used[z] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    go(space, &mut prefix, &mut used, &mut visit);
}

/// The lexicographically first compatible order, if any.
pub fn brute_force_compatible_order(space: &DissimilaritySpace) -> Result<Option<Order>, OracleError> {
    guard(space.len(), BRUTE_LIMIT)?;
    let mut found = None;
    search(space, |o| {
        found = Some(Order::from_vec_unchecked(o.to_vec()));
        false
    });
    Ok(found)
}

pub fn all_compatible_orders(space: &DissimilaritySpace) -> Result<Vec<Order>, OracleError> {
    guard(space.len(), BRUTE_LIMIT)?;
    let mut all = Vec::new();
    search(space, |o| {
        all.push(Order::from_vec_unchecked(o.to_vec()));
        true
    });
    Ok(all)
}

pub fn count_compatible_orders(space: &DissimilaritySpace) -> Result<usize, OracleError> {
    guard(space.len(), BRUTE_LIMIT)?;
    let mut count = 0;
    search(space, |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// Every subset that passes the definition, each sorted.
pub fn enumerate_mmodules(space: &DissimilaritySpace) -> Result<BTreeSet<Vec<PointId>>, OracleError> {
    let n = space.len();
    guard(n, ENUMERATION_LIMIT)?;
    let mut family = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<PointId> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if is_mmodule(space, &set) {
            family.insert(set);
        }
    }
    Ok(family)
}

/// For a space with exactly two compatible orders: either every copoint
/// partition is made of singletons, or exactly one point `p` is equidistant
/// from all others, is not the end of a diametral pair, and leaves a
/// subspace whose only mmodules are trivial.
pub fn flat_law_holds(space: &DissimilaritySpace) -> Result<bool, OracleError> {
    let n = space.len();
    guard(n, ENUMERATION_LIMIT)?;
    let all_trivial = space.points().all(|p| copoint_partition(space, p).copoints.blocks().iter().all(|b| b.len() == 1));
    if all_trivial {
        return Ok(true);
    }
    let all: Vec<PointId> = space.points().collect();
    let diam = space.diameter(&all).unwrap_or_default();
    let mut apexes = 0;
    for p in space.points() {
        let others: Vec<PointId> = space.points().filter(|&x| x != p).collect();
        let Some(&first) = others.first() else { continue };
        let delta = space.d(p, first);
        let conical = others.iter().all(|&x| space.d(p, x) == delta);
        if !conical || delta >= diam {
            continue;
        }
        let view = crate::space::SubsetView::new(others.clone(), n).expect("subset");
        let sub = space.restrict(&view);
        let trivial = enumerate_mmodules(&sub)?.into_iter().all(|m| m.len() <= 1 || m.len() == sub.len());
        if trivial {
            apexes += 1;
        }
    }
    Ok(apexes == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let s = DissimilaritySpace::from_rows(&[[0]]).unwrap();
        assert_eq!(brute_force_compatible_order(&s).unwrap(), Some(Order::identity(1)));
    }

    #[test]
    fn path_of_three() {
        // d(a,b) = 1, d(b,c) = 1, d(a,c) = 3.
        let s = DissimilaritySpace::from_rows(&[[0, 1, 3], [1, 0, 1], [3, 1, 0]]).unwrap();
        assert_eq!(brute_force_compatible_order(&s).unwrap().unwrap().as_slice(), &[0, 1, 2]);
        let all: Vec<Vec<PointId>> = all_compatible_orders(&s).unwrap().into_iter().map(Order::into_vec).collect();
        assert_eq!(all, vec![vec![0, 1, 2], vec![2, 1, 0]]);
    }

    #[test]
    fn guards() {
        let s = DissimilaritySpace::from_fn(13, |_, _| 1.into()).unwrap();
        assert!(matches!(brute_force_compatible_order(&s), Err(OracleError::TooLarge { .. })));
        assert!(matches!(enumerate_mmodules(&s), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn constant_space_has_every_subset() {
        let s = DissimilaritySpace::from_fn(3, |_, _| 1.into()).unwrap();
        assert_eq!(enumerate_mmodules(&s).unwrap().len(), 8);
    }
}
