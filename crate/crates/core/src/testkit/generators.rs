use std::str::FromStr;

use crate::rng::SplitMix;
use crate::space::{DissimilaritySpace, Order, PointId, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `d(i,j) = t[|i-j|]` for a nondecreasing `t` drawn from `0..=max_val`.
    Toeplitz,
    /// Random agglomerative merges at nondecreasing heights.
    Ultrametric,
    /// Distances between random distinct points on a line.
    LineDistance,
    /// A random matrix built to be Robinson under the identity, then
    /// relabelled.
    ShuffledRobinson,
    /// A shuffled Robinson matrix with `perturb` entries rewritten.
    Perturbed,
}

impl FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "toeplitz" => GeneratorKind::Toeplitz,
            "ultrametric" => GeneratorKind::Ultrametric,
            "line" => GeneratorKind::LineDistance,
            "robinson" => GeneratorKind::ShuffledRobinson,
            "perturbed" => GeneratorKind::Perturbed,
            other => return Err(format!("unknown generator kind {other:?}")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    /// Largest value (Toeplitz) or largest increment (other kinds).
    pub max_val: u32,
    /// Relabel the points at random. Toeplitz only; the other kinds are
    /// always relabelled.
    pub shuffle: bool,
    /// Number of entries to rewrite after generation.
    pub perturb: usize,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        GeneratorSpec { kind, n, seed, max_val: 2, shuffle: true, perturb: 0 }
    }
}

/// A generated space and, when known, a compatible order of it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub space: DissimilaritySpace,
    pub hidden: Option<Order>,
}

pub fn generate(spec: &GeneratorSpec) -> Instance {
    let GeneratorSpec { kind, n, seed, max_val, shuffle, perturb: count } = *spec;
    let mut inst = match kind {
        GeneratorKind::Toeplitz => gen_toeplitz(n, max_val, seed, shuffle),
        GeneratorKind::Ultrametric => gen_ultrametric(n, max_val, seed),
        GeneratorKind::LineDistance => gen_line_distance(n, max_val, seed),
        GeneratorKind::ShuffledRobinson => gen_shuffled_robinson(n, max_val, seed),
        GeneratorKind::Perturbed => {
            let base = gen_shuffled_robinson(n, max_val, seed);
            let space = perturb(&base.space, seed ^ 0x5eed, count.max(1));
            return Instance { space, hidden: None };
        }
    };
    if count > 0 {
        inst = Instance { space: perturb(&inst.space, seed ^ 0x5eed, count), hidden: None };
    }
    inst
}

/// Relabels the points: new point `a` is old point `perm[a]`.
fn relabel(inst: Instance, rng: &mut SplitMix) -> Instance {
    let n = inst.space.len();
    let mut perm: Vec<PointId> = (0..n).collect();
    rng.shuffle(&mut perm);
    let mut inv = vec![0; n];
    for (a, &old) in perm.iter().enumerate() {
        inv[old] = a;
    }
    let space = DissimilaritySpace::from_fn(n, |a, b| inst.space.d(perm[a], perm[b])).expect("relabelling keeps values");
    let hidden = inst.hidden.map(|h| Order::from_vec_unchecked(h.as_slice().iter().map(|&old| inv[old]).collect()));
    Instance { space, hidden }
}

pub fn gen_toeplitz(n: usize, max_val: u32, seed: u64, shuffle: bool) -> Instance {
    let mut rng = SplitMix::new(seed);
    let mut t: Vec<i64> = (0..n.saturating_sub(1)).map(|_| rng.below(u64::from(max_val) + 1) as i64).collect();
    t.sort_unstable();
    t.insert(0, 0);
    let space = DissimilaritySpace::from_fn(n, |i, j| Value::from_units(t[j - i])).expect("values are nonnegative");
    let inst = Instance { space, hidden: Some(Order::identity(n)) };
    if shuffle {
        relabel(inst, &mut rng)
    } else {
        inst
    }
}

pub fn gen_ultrametric(n: usize, max_step: u32, seed: u64) -> Instance {
    let mut rng = SplitMix::new(seed);
    let mut d = vec![vec![0i64; n]; n];
    let mut clusters: Vec<Vec<PointId>> = (0..n).map(|x| vec![x]).collect();
    rng.shuffle(&mut clusters);
    let mut height = 0i64;
    while clusters.len() > 1 {
        let i = rng.below(clusters.len() as u64) as usize;
        let a = clusters.swap_remove(i);
        let j = rng.below(clusters.len() as u64) as usize;
        let b = std::mem::take(&mut clusters[j]);
        height += rng.below(u64::from(max_step) + 1) as i64;
        for &x in &a {
            for &y in &b {
                d[x][y] = height;
                d[y][x] = height;
            }
        }
        let mut merged = a;
        merged.extend(b);
        clusters[j] = merged;
    }
    let hidden = clusters.pop().map(Order::from_vec_unchecked).unwrap_or_else(|| Order::identity(0));
    let space = DissimilaritySpace::from_fn(n, |i, j| Value::from_units(d[i][j])).expect("heights are nonnegative");
    Instance { space, hidden: Some(hidden) }
}

pub fn gen_line_distance(n: usize, max_step: u32, seed: u64) -> Instance {
    let mut rng = SplitMix::new(seed);
    let mut xs = Vec::with_capacity(n);
    let mut x = 0i64;
    for _ in 0..n {
        xs.push(x);
        x += rng.between(1, u64::from(max_step.max(1))) as i64;
    }
    let space = DissimilaritySpace::from_fn(n, |i, j| Value::from_units(xs[j] - xs[i])).expect("coordinates increase");
    relabel(Instance { space, hidden: Some(Order::identity(n)) }, &mut rng)
}

/// Fills the upper triangle diagonal by diagonal so that every entry is at
/// least the one to its left and the one below it.
pub fn gen_shuffled_robinson(n: usize, max_step: u32, seed: u64) -> Instance {
    let mut rng = SplitMix::new(seed);
    let mut d = vec![vec![0i64; n]; n];
    for gap in 1..n {
        for i in 0..n - gap {
            let j = i + gap;
            let floor = if gap == 1 { 0 } else { d[i][j - 1].max(d[i + 1][j]) };
            d[i][j] = floor + rng.below(u64::from(max_step) + 1) as i64;
        }
    }
    let space = DissimilaritySpace::from_fn(n, |i, j| Value::from_units(d[i][j])).expect("values are nonnegative");
    relabel(Instance { space, hidden: Some(Order::identity(n)) }, &mut rng)
}

/// Rewrites `count` random off-diagonal entries (and their mirrors) with
/// values drawn from `0..=max+1`, where `max` is the largest entry.
pub fn perturb(space: &DissimilaritySpace, seed: u64, count: usize) -> DissimilaritySpace {
    let n = space.len();
    if n < 2 || count == 0 {
        return space.clone();
    }
    let mut rng = SplitMix::new(seed);
    let top = space.points().flat_map(|x| space.row(x).iter()).max().unwrap_or(Value::ZERO).units();
    let mut d: Vec<Vec<i64>> = space.points().map(|x| space.row(x).iter().map(|v| v.units()).collect()).collect();
    for _ in 0..count {
        let i = rng.below(n as u64) as usize;
        let mut j = rng.below(n as u64 - 1) as usize;
        if j >= i {
            j += 1;
        }
        let v = rng.below(top as u64 + 2) as i64;
        d[i][j] = v;
        d[j][i] = v;
    }
    DissimilaritySpace::from_fn(n, |i, j| Value::from_units(d[i][j]))
        .expect("values are nonnegative")
        .with_scale(space.scale())
}
