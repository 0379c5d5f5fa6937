//! Measurement harness for the refinement engine.
//!
//! Runs seeded instance families through minimization and reports work
//! counters against the expected growth curve. The counters are exact and
//! reproducible for a given seed; only the wall-clock column varies between
//! runs.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::minimize_partition;
use crate::generate::{gen_random, gen_redundant, GenSpec};
use crate::model::trim_unreachable;

/// Aggregated counters for one (family, size) cell.
///
/// `bound_ratio` is the worst observed `state_moves / (m · n · log₂ n)` and
/// `removal_ratio` the worst observed
/// `splitter_removals / (m · n · (⌈log₂ n⌉ + 1))`, both taken per instance
/// with that instance's own reachable state count `n` (clamped to 2 inside
/// the logarithm). The first ratio staying bounded by a small constant and
/// the second by 1 is exactly the advertised `O(k · n · log n)` behavior.
#[derive(Clone, Debug, Serialize)]
pub struct BenchPoint {
    pub family: String,
    pub requested_states: usize,
    pub bits: usize,
    pub alphabet_size: usize,
    pub reps: usize,
    pub mean_effective_states: f64,
    pub mean_state_moves: f64,
    pub max_state_moves: u64,
    pub mean_splitter_removals: f64,
    pub max_splitter_removals: u64,
    pub mean_wall_ms: f64,
    pub bound_ratio: f64,
    pub removal_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub points: Vec<BenchPoint>,
}

fn log2_clamped(n: usize) -> f64 {
    (n.max(2) as f64).log2()
}

/// Runs both instance families at every requested size.
///
/// The `random` family draws uniform transitions with heavy label collision
/// (many states per label class, so refinement works hard). The `redundant`
/// family inflates a quarter-size random structure with four
/// interchangeable clones per state, giving instances that shrink a lot
/// under minimization. Instance seeds derive from `seed` in a fixed stream
/// order, so a report is reproducible end to end.
pub fn run_bench(
    sizes: &[usize],
    bits: usize,
    alphabet_size: usize,
    reps: usize,
    seed: u64,
) -> BenchReport {
    if reps == 0 {
        return BenchReport { points: Vec::new() };
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    for &size in sizes {
        for family in ["random", "redundant"] {
            let mut eff_sum = 0usize;
            let mut moves_sum = 0u64;
            let mut moves_max = 0u64;
            let mut removals_sum = 0u64;
            let mut removals_max = 0u64;
            let mut wall_sum = 0.0f64;
            let mut bound_ratio = 0.0f64;
            let mut removal_ratio = 0.0f64;
            for _ in 0..reps {
                let inst_seed: u64 = master.gen();
                let k = match family {
                    "random" => {
                        let spec = GenSpec {
                            states: size.max(1),
                            bits,
                            alphabet_size,
                            seed: inst_seed,
                            label_collision: 0.9,
                        };
                        trim_unreachable(&gen_random(&spec)).0
                    }
                    _ => {
                        let spec = GenSpec {
                            states: (size / 4).max(1),
                            bits,
                            alphabet_size,
                            seed: inst_seed,
                            label_collision: 0.5,
                        };
                        let base = trim_unreachable(&gen_random(&spec)).0;
                        gen_redundant(&base, 4, inst_seed ^ 0x5eed)
                    }
                };
                let n = k.state_count();
                let start = Instant::now();
                let out = minimize_partition(&k).expect("trimmed instances validate");
                let wall = start.elapsed().as_secs_f64() * 1e3;

                let m = alphabet_size as f64;
                let move_bound = m * n as f64 * log2_clamped(n);
                let removal_bound = m * n as f64 * (log2_clamped(n).ceil() + 1.0);
                eff_sum += n;
                moves_sum += out.stats.state_moves;
                moves_max = moves_max.max(out.stats.state_moves);
                removals_sum += out.stats.splitter_removals;
                removals_max = removals_max.max(out.stats.splitter_removals);
                wall_sum += wall;
                bound_ratio = bound_ratio.max(out.stats.state_moves as f64 / move_bound);
                removal_ratio =
                    removal_ratio.max(out.stats.splitter_removals as f64 / removal_bound);
            }
            let r = reps as f64;
            points.push(BenchPoint {
                family: family.to_string(),
                requested_states: size,
                bits,
                alphabet_size,
                reps,
                mean_effective_states: eff_sum as f64 / r,
                mean_state_moves: moves_sum as f64 / r,
                max_state_moves: moves_max,
                mean_splitter_removals: removals_sum as f64 / r,
                max_splitter_removals: removals_max,
                mean_wall_ms: wall_sum / r,
                bound_ratio,
                removal_ratio,
            });
        }
    }
    BenchReport { points }
}
