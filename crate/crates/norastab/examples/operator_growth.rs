//! Operator growth under random two-qutrit sub-layers: the per-step growth
//! factor g = q(d^2-1)/d^2 in the dilute phase and the (d^2-1)/d^2 * n
//! equilibrium plateau.
//!
//! ```bash
//! cargo run --release -p norastab --example operator_growth
//! ```

use norastab::analysis::{growth_formulas, scrambling_weight_trajectory};

fn main() {
    let n = 128;
    let d = 3;
    let q = 2;
    let steps = 24;
    let samples = 600;

    let mut mean = vec![0f64; steps];
    for seed in 0..samples {
        let w = scrambling_weight_trajectory(n, d, q, steps, seed as u64).unwrap();
        for (slot, &value) in mean.iter_mut().zip(&w) {
            *slot += value as f64;
        }
    }
    for m in &mut mean {
        *m /= samples as f64;
    }

    let f = growth_formulas(d, q, 2, n as u64, 1);
    println!("predicted g = {:.4}, D_max = log_g(n) = {:.2}", f.g, f.d_max);
    println!("\nstep  mean weight  step ratio");
    let mut prev = 1.0;
    for (i, &m) in mean.iter().enumerate() {
        println!("{:>4}  {:>11.3}  {:>10.4}", i + 1, m, m / prev);
        prev = m;
    }
    let plateau = 8.0 / 9.0 * n as f64;
    println!(
        "\nlate-step mean {:.2} vs equilibrium (d^2-1)/d^2 n = {plateau:.2}",
        mean[steps - 4..].iter().sum::<f64>() / 4.0
    );
}
