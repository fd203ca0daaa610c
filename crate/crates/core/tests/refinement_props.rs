mod common;

use common::*;
use proptest::prelude::*;
use robinson::mmodules::is_mmodule;
use robinson::refinement::recursive_refine_with_stats;
use robinson::testkit::{all_compatible_orders, enumerate_mmodules};
use robinson::{copoint_partition, refine, DissimilaritySpace, Order, PointId};

/// `{p}` followed by the blocks, prefix by prefix, is an interval of `order`
/// and the distance to `p` never drops from one block to the next.
fn is_proximity_preorder(s: &DissimilaritySpace, p: PointId, blocks: &[Vec<PointId>], order: &Order) -> bool {
    let pos = order.positions();
    let (mut lo, mut hi, mut size) = (pos[p], pos[p], 1);
    let mut last = s.d(p, p);
    for b in blocks {
        let d = s.d(p, b[0]);
        if d < last {
            return false;
        }
        last = d;
        for &x in b {
            lo = lo.min(pos[x]);
            hi = hi.max(pos[x]);
        }
        size += b.len();
        if hi - lo + 1 != size {
            return false;
        }
    }
    true
}

proptest! {
    #[test]
    fn refine_splits_by_distance(s in any_space(9, 3), q in 0usize..9) {
        let q = q % s.len();
        let rest: Vec<PointId> = s.points().filter(|&x| x != q).collect();
        let part = refine(&s, q, &rest).unwrap();
        let mut all: Vec<PointId> = part.blocks().concat();
        all.sort_unstable();
        prop_assert_eq!(&all, &rest);
        let keys: Vec<_> = part.blocks().iter().map(|b| s.d(q, b[0])).collect();
        for (b, k) in part.blocks().iter().zip(&keys) {
            prop_assert!(b.iter().all(|&x| s.d(q, x) == *k));
        }
        prop_assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn copoints_partition_the_rest_into_mmodules(s in any_space(10, 3), p in 0usize..10) {
        let p = p % s.len();
        let dec = copoint_partition(&s, p);
        let mut all: Vec<PointId> = dec.copoints.blocks().concat();
        all.push(p);
        all.sort_unstable();
        prop_assert_eq!(all, s.points().collect::<Vec<_>>());
        for b in dec.copoints.blocks() {
            prop_assert!(is_mmodule(&s, b));
        }
    }

    #[test]
    fn copoints_are_maximal_away_from_p(s in any_space(8, 2), p in 0usize..8) {
        let p = p % s.len();
        let family = enumerate_mmodules(&s).unwrap();
        for c in copoint_partition(&s, p).copoints.normalized() {
            let bigger = family.iter().find(|m| !m.contains(&p) && m.len() > c.len() && c.iter().all(|x| m.contains(x)));
            prop_assert!(bigger.is_none(), "{:?} inside {:?}", c, bigger);
        }
    }

    #[test]
    fn copoint_order_is_a_proximity_preorder(inst in robinson_instance(1, 8), p in 0usize..8) {
        let s = &inst.space;
        let p = p % s.len();
        let blocks = copoint_partition(s, p).copoints.into_blocks();
        for o in all_compatible_orders(s).unwrap() {
            prop_assert!(is_proximity_preorder(s, p, &blocks, &o), "order {:?}", o);
        }
    }

    #[test]
    fn refinement_work_is_bounded(s in any_space(12, 3), p in 0usize..12) {
        let p = p % s.len();
        let rest: Vec<PointId> = s.points().filter(|&x| x != p).collect();
        let (part, stats) = recursive_refine_with_stats(&s, p, &[p], &rest, &[]).unwrap();
        let n = rest.len() as u64;
        let split: u64 = n * n - part.blocks().iter().map(|b| (b.len() * b.len()) as u64).sum::<u64>();
        prop_assert!(stats.steps() <= 3 * (split + n + 1), "{:?} vs {}", stats, split);
    }
}
