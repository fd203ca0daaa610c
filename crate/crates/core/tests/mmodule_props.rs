mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use robinson::mmodules::{interval, is_mmodule, maximal_mmodules, mconv, represented_family, stable_partition, MModuleTree, Regime};
use robinson::testkit::{count_compatible_orders, enumerate_mmodules, flat_law_holds, generate, GeneratorKind, GeneratorSpec};
use robinson::{mmodule_tree, DissimilaritySpace, PointId};

fn meet(a: &[PointId], b: &[PointId]) -> Vec<PointId> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

fn minus(a: &[PointId], b: &[PointId]) -> Vec<PointId> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}

fn join(a: &[PointId], b: &[PointId]) -> Vec<PointId> {
    let mut v: Vec<PointId> = a.iter().chain(b).copied().collect::<BTreeSet<_>>().into_iter().collect();
    v.sort_unstable();
    v
}

proptest! {
    #[test]
    fn closure_laws(s in any_space(8, 1)) {
        let family = enumerate_mmodules(&s).unwrap();
        let sets: Vec<&Vec<PointId>> = family.iter().collect();
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                let common = meet(a, b);
                prop_assert!(family.contains(&common));
                let crossing = !common.is_empty() && common.len() < a.len() && common.len() < b.len();
                if crossing {
                    prop_assert!(family.contains(&join(a, b)));
                    prop_assert!(family.contains(&minus(a, b)));
                    prop_assert!(family.contains(&minus(b, a)));
                    prop_assert!(family.contains(&join(&minus(a, b), &minus(b, a))));
                }
                if common.is_empty() && !a.is_empty() && !b.is_empty() {
                    let v = s.d(a[0], b[0]);
                    prop_assert!(a.iter().all(|&x| b.iter().all(|&y| s.d(x, y) == v)));
                }
            }
        }
    }

    #[test]
    fn tree_represents_exactly_the_mmodules(s in any_space(10, 2)) {
        let tree = mmodule_tree(&s);
        let mut leaves = tree.leaves();
        leaves.sort_unstable();
        prop_assert_eq!(leaves, s.points().collect::<Vec<_>>());
        prop_assert_eq!(represented_family(&tree).unwrap(), enumerate_mmodules(&s).unwrap());
        prop_assert_eq!(MModuleTree::parse(&tree.to_string()).unwrap(), tree);
    }

    #[test]
    fn mconv_is_the_least_enclosing_mmodule(s in any_space(9, 2), mask in 1u64..512) {
        let a = members(mask, s.len());
        prop_assume!(!a.is_empty());
        let got = mconv(&s, &a);
        let family = enumerate_mmodules(&s).unwrap();
        let least = family.iter().filter(|m| a.iter().all(|x| m.contains(x))).min_by_key(|m| m.len()).unwrap();
        prop_assert_eq!(&got, least);
        if a.len() >= 2 {
            let iv = interval(&s, a[0], a[1]);
            prop_assert!(iv.iter().all(|x| got.contains(x)));
        }
    }

    #[test]
    fn stable_partition_is_stable_and_refines(s in any_space(9, 2), labels in proptest::collection::vec(0usize..3, 9)) {
        let n = s.len();
        let mut initial: Vec<Vec<PointId>> = vec![Vec::new(); 3];
        for x in 0..n {
            initial[labels[x]].push(x);
        }
        initial.retain(|b| !b.is_empty());
        let out = stable_partition(&s, &initial);
        let mut all: Vec<PointId> = out.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        for b in &out {
            prop_assert!(initial.iter().any(|i| b.iter().all(|x| i.contains(x))));
            for c in &out {
                if b != c {
                    prop_assert!(c.iter().all(|&z| b.iter().all(|&x| s.d(z, x) == s.d(z, b[0]))));
                }
            }
        }
    }

    #[test]
    fn maximal_mmodules_match_enumeration(s in any_space(9, 2)) {
        prop_assume!(s.len() >= 2);
        let n = s.len();
        let family = enumerate_mmodules(&s).unwrap();
        let proper: Vec<&Vec<PointId>> = family.iter().filter(|m| !m.is_empty() && m.len() < n).collect();
        let mut expected: Vec<Vec<PointId>> = proper
            .iter()
            .filter(|m| !proper.iter().any(|o| o.len() > m.len() && m.iter().all(|x| o.contains(x))))
            .map(|m| (*m).clone())
            .collect();
        expected.sort_by_key(|m| m[0]);
        let got = maximal_mmodules(&s);
        prop_assert_eq!(&got.sets, &expected);
        let total: usize = expected.iter().map(Vec::len).sum();
        prop_assert_eq!(got.regime == Regime::Partition, total == n);
        for m in &got.sets {
            prop_assert!(is_mmodule(&s, m));
        }
    }

    #[test]
    fn flat_spaces_obey_the_law(inst in robinson_instance(1, 7)) {
        if count_compatible_orders(&inst.space).unwrap() == 2 {
            prop_assert!(flat_law_holds(&inst.space).unwrap());
        }
    }

    #[test]
    fn lines_have_two_orders(n in 2usize..=8, seed in any::<u64>(), step in 1u32..=4) {
        let mut spec = GeneratorSpec::new(GeneratorKind::LineDistance, n, seed);
        spec.max_val = step;
        let inst = generate(&spec);
        prop_assert_eq!(count_compatible_orders(&inst.space).unwrap(), 2);
        prop_assert!(flat_law_holds(&inst.space).unwrap());
    }
}

#[test]
fn constant_spaces() {
    let s = DissimilaritySpace::from_fn(3, |_, _| 1.into()).unwrap();
    assert_eq!(mmodule_tree(&s).to_string(), "(I 1 2 3)");
    assert_eq!(represented_family(&mmodule_tree(&s)).unwrap().len(), 8);
    assert_eq!(maximal_mmodules(&s).regime, Regime::Copartition);
    let single = DissimilaritySpace::from_rows(&[[0]]).unwrap();
    assert_eq!(mmodule_tree(&single), MModuleTree::Leaf(0));
    let distinct = DissimilaritySpace::from_rows(&[[0, 1, 3], [1, 0, 2], [3, 2, 0]]).unwrap();
    let m = maximal_mmodules(&distinct);
    assert_eq!(m.sets, vec![vec![0], vec![1], vec![2]]);
    assert_eq!(m.regime, Regime::Partition);
}
