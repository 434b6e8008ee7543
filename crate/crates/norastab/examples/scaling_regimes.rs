//! Scaling-family codes (k = r^a, L = a + b): constant rate, N log N gate
//! counts, and the dilute/saturating crossover in the depth D.
//!
//! ```bash
//! cargo run --release -p norastab --example scaling_regimes
//! ```

use norastab::analysis::{singleton_bound, syk_regime_classifier};
use norastab::nora::{gate_count, NoraMode, NoraParams};

fn main() {
    let base = NoraParams {
        d: 3,
        q: 2,
        r: 2,
        depth: 3,
        mode: NoraMode::Syk { a: 2, b: 1 },
        seed: 0,
    };

    println!("rate and gate complexity as a grows (b = 1):");
    println!("{:>3} {:>6} {:>8} {:>12} {:>14}", "a", "N", "rate", "gates", "gates/(N lgN)");
    for a in 1..=8 {
        let mut p = base;
        p.mode = NoraMode::Syk { a, b: 1 };
        let n = p.total_sites().unwrap();
        let gates = gate_count(&p).unwrap();
        let n_log_n = n as f64 * (n as f64).ln() / (p.r as f64).ln();
        println!(
            "{a:>3} {n:>6} {:>8.4} {gates:>12} {:>14.4}",
            p.rate().unwrap(),
            gates as f64 / n_log_n
        );
    }
    println!(
        "limit D/(q(1+r^b)) = {:.4}; the ratio approaches it from above",
        base.depth as f64 / (base.q as f64 * 3.0)
    );
    let mut p = base;
    p.mode = NoraMode::Syk { a: 4, b: 1 };
    println!(
        "relative singleton bound at a=4: {:.4} (-> 1/3 + 1/N)",
        singleton_bound(p.total_sites().unwrap(), p.k()) as f64 / p.total_sites().unwrap() as f64
    );

    println!("\ndilute vs saturating, g = q(d^2-1)/d^2 = 16/9:");
    for depth in 1..=3 {
        let mut p = base;
        p.depth = depth;
        let r = syk_regime_classifier(&p).unwrap();
        println!(
            "  D = {depth}: g^D = {:.3} vs r = {}: {:?} (c = {:.3}, ell* = {:?})",
            r.g_pow_d, p.r, r.regime, r.c, r.ell_star
        );
    }
}
