mod common;

use common::*;
use proptest::prelude::*;
use robinson::testkit::triple_check;
use robinson::{parse_matrix, write_matrix, DissimilaritySpace, Order, SubsetView, Value};

proptest! {
    #[test]
    fn reversal_keeps_the_verdict((s, o) in space_and_order(8, 3)) {
        prop_assert_eq!(s.is_robinson_order(&o), s.is_robinson_order(&o.reversed()));
    }

    #[test]
    fn quadratic_check_matches_triples((s, o) in space_and_order(8, 2)) {
        prop_assert_eq!(s.is_robinson_order(&o), triple_check(&s, &o));
    }

    #[test]
    fn quadratic_check_matches_triples_near_robinson(inst in robinson_instance(1, 10), swaps in proptest::collection::vec((0usize..10, 0usize..10), 0..3)) {
        let n = inst.space.len();
        let mut seq = inst.hidden.unwrap().into_vec();
        for (a, b) in swaps {
            if n > 0 {
                seq.swap(a % n, b % n);
            }
        }
        let o = Order::new(seq, n).unwrap();
        prop_assert_eq!(inst.space.is_robinson_order(&o), triple_check(&inst.space, &o));
    }

    #[test]
    fn restriction_keeps_compatibility(inst in robinson_instance(1, 12), mask in any::<u64>()) {
        let n = inst.space.len();
        let hidden = inst.hidden.unwrap();
        let view = SubsetView::new(members(mask, n), n).unwrap();
        let sub = inst.space.restrict(&view);
        prop_assert!(sub.is_robinson_order(&hidden.induced(&view)));
    }

    #[test]
    fn write_then_parse_is_identity(s in any_space(9, 1_000_000), scale in 0u32..=3) {
        let s = s.with_scale(scale);
        let back = parse_matrix(&write_matrix(&s)).unwrap();
        prop_assert_eq!(back.len(), s.len());
        for x in s.points() {
            for y in s.points() {
                // The parser picks the smallest scale that fits, so compare exact values.
                let a = s.d(x, y).units() as i128 * 10i128.pow(back.scale());
                let b = back.d(x, y).units() as i128 * 10i128.pow(s.scale());
                prop_assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn decimals_survive_a_round_trip() {
    let text = "3\n0 0.25 1.5\n0.25 0 0.125\n1.5 0.125 0\n";
    let s = parse_matrix(text).unwrap();
    assert_eq!(s.scale(), 3);
    assert_eq!(s.d(0, 1), Value::from_units(250));
    let again = parse_matrix(&write_matrix(&s)).unwrap();
    assert_eq!(again, s);
    assert_eq!(DissimilaritySpace::from_rows(&[[0]]).unwrap().len(), 1);
}
