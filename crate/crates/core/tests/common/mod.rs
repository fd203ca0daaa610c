#![allow(dead_code, clippy::needless_range_loop)]

use proptest::prelude::*;
use robinson::testkit::{generate, GeneratorKind, GeneratorSpec, Instance};
use robinson::{DissimilaritySpace, Order, PointId, Value};

/// Any symmetric matrix with entries in `0..=max`.
pub fn any_space(max_n: usize, max: i64) -> impl Strategy<Value = DissimilaritySpace> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..=max, n * (n - 1) / 2).prop_map(move |upper| {
            let mut it = upper.into_iter();
            let mut d = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    d[i][j] = v;
                    d[j][i] = v;
                }
            }
            DissimilaritySpace::from_fn(n, |i, j| Value::from_units(d[i][j])).unwrap()
        })
    })
}

pub fn any_order(n: usize) -> impl Strategy<Value = Order> {
    Just((0..n).collect::<Vec<PointId>>()).prop_shuffle().prop_map(move |v| Order::new(v, n).unwrap())
}

pub fn space_and_order(max_n: usize, max: i64) -> impl Strategy<Value = (DissimilaritySpace, Order)> {
    any_space(max_n, max).prop_flat_map(|s| {
        let n = s.len();
        (Just(s), any_order(n))
    })
}

const ROBINSON_KINDS: [GeneratorKind; 4] =
    [GeneratorKind::Toeplitz, GeneratorKind::Ultrametric, GeneratorKind::LineDistance, GeneratorKind::ShuffledRobinson];

/// A generated Robinson instance with its hidden order.
pub fn robinson_instance(min_n: usize, max_n: usize) -> impl Strategy<Value = Instance> {
    (0..ROBINSON_KINDS.len(), min_n..=max_n, any::<u64>(), 1u32..=3).prop_map(|(k, n, seed, max_val)| {
        let mut spec = GeneratorSpec::new(ROBINSON_KINDS[k], n, seed);
        spec.max_val = max_val;
        generate(&spec)
    })
}

pub fn members(mask: u64, n: usize) -> Vec<PointId> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}
