//! Decoupling distance: exhaustive enumeration vs Monte-Carlo region
//! sampling on a small instance, and the sampled estimator at scale.
//!
//! ```bash
//! cargo run --release -p norastab --example code_distance
//! ```

use norastab::analysis::{exhaustive_distance, monte_carlo_distance, singleton_bound};
use norastab::nora::{encode_with_reference, NoraMode, NoraParams};

fn main() {
    // Small instance: every subset can be enumerated.
    let small = NoraParams {
        d: 3,
        q: 2,
        r: 2,
        depth: 3,
        mode: NoraMode::Fixed { k: 1, layers: 3 },
        seed: 5,
    };
    let state = encode_with_reference(&small).unwrap();
    let exact = exhaustive_distance(&state).unwrap();
    let sampled = monte_carlo_distance(&state, 1 << 12, None, 77).unwrap();
    println!(
        "[[{}, 1]] code: exhaustive delta = {:?}, covered Monte Carlo delta = {:?}",
        small.total_sites().unwrap(),
        exact.delta,
        sampled.delta
    );
    for tally in &exact.per_size {
        println!(
            "  size {:>2}: {:>4} regions checked, {} violations",
            tally.size, tally.samples, tally.violations
        );
    }

    // A larger code, sampled: one region per size, averaged over seeds.
    let mut deltas = Vec::new();
    for seed in 0..40u64 {
        let params = NoraParams {
            d: 3,
            q: 2,
            r: 2,
            depth: 4,
            mode: NoraMode::Fixed { k: 2, layers: 6 },
            seed,
        };
        let state = encode_with_reference(&params).unwrap();
        if let Some(delta) = monte_carlo_distance(&state, 1, None, seed ^ 0xd15).unwrap().delta {
            deltas.push(delta as f64);
        }
    }
    let mean = deltas.iter().sum::<f64>() / deltas.len() as f64;
    println!(
        "\n[[66, 2]] at D=4: mean sampled delta {:.2} over {} runs (singleton bound {})",
        mean,
        deltas.len(),
        singleton_bound(66, 2)
    );
}
