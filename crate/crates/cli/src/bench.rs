use std::time::{Duration, Instant};

use robinson::testkit::{generate, GeneratorKind, GeneratorSpec};
use robinson::{recognize, DissimilaritySpace};

/// Runs `repeats` instances per size, seeds `seed..seed + repeats`, and
/// prints one row per size. The ratio column compares against the size half
/// as large when it was measured too.
pub fn run(kind: GeneratorKind, sizes: &[usize], seed: u64, repeats: u64) {
    println!("{:>8} {:>12} {:>12} {:>8}", "n", "mean_ms", "min_ms", "ratio");
    let mut means: Vec<(usize, f64)> = Vec::new();
    for &n in sizes {
        let mut total = Duration::ZERO;
        let mut best = Duration::MAX;
        for s in seed..seed + repeats {
            let space = instance(kind, n, s);
            let t = time_one(&space);
            total += t;
            best = best.min(t);
        }
        let mean = total.as_secs_f64() * 1e3 / repeats as f64;
        let ratio = means
            .iter()
            .find(|&&(m, _)| m * 2 == n)
            .map(|&(_, prev)| format!("{:.2}", mean / prev))
            .unwrap_or_else(|| "-".to_string());
        println!("{n:>8} {mean:>12.3} {:>12.3} {ratio:>8}", best.as_secs_f64() * 1e3);
        means.push((n, mean));
    }
}

fn instance(kind: GeneratorKind, n: usize, seed: u64) -> DissimilaritySpace {
    let mut spec = GeneratorSpec::new(kind, n, seed);
    spec.max_val = 2;
    generate(&spec).space
}

fn time_one(space: &DissimilaritySpace) -> Duration {
    let start = Instant::now();
    let result = recognize(space);
    let elapsed = start.elapsed();
    std::hint::black_box(result);
    elapsed
}
