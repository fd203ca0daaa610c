mod common;

use common::*;
use proptest::prelude::*;
use robinson::conical::{admissible_holes, Hole};
use robinson::*;

/// Inserts the apex at `at` and checks the block plus apex by brute force.
fn fits(s: &DissimilaritySpace, p: PointId, sorted: &[PointId], at: usize) -> bool {
    let mut seq = sorted.to_vec();
    seq.insert(at, p);
    let view = SubsetView::new(seq, s.len()).unwrap();
    s.restrict(&view).is_robinson_order(&Order::identity(view.len()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn holes_match_insertion(inst in robinson_instance(2, 14), pick in any::<prop::sample::Index>()) {
        let s = &inst.space;
        let p = pick.index(s.len());
        let order = inst.hidden.as_ref().unwrap();
        for c in copoint_partition(s, p).copoints.blocks() {
            // The copoint in the order induced by a compatible order of the whole space.
            let view = SubsetView::new(c.clone(), s.len()).unwrap();
            let sorted: Vec<PointId> = order.induced(&view).as_slice().iter().map(|&x| view.parent_of(x)).collect();
            let holes = admissible_holes(s, p, &sorted);
            for i in 0..sorted.len() - 1 {
                prop_assert_eq!(holes.contains(&Hole::Between(i)), fits(s, p, &sorted, i + 1));
            }
            let wrap = holes.contains(&Hole::Wrap);
            prop_assert_eq!(wrap, fits(s, p, &sorted, 0));
            prop_assert_eq!(wrap, fits(s, p, &sorted, sorted.len()));
            // With the wrap hole open, every internal hole sits between points at distance delta.
            if wrap {
                let delta = s.d(p, sorted[0]);
                for h in &holes {
                    if let Hole::Between(i) = *h {
                        prop_assert_eq!(s.d(sorted[i], sorted[i + 1]), delta);
                    }
                }
            }
        }
    }
}
