//! Stabilizer weight distributions layer by layer, comparing shallow and
//! deep layer circuits against the scrambled maximum (d^2-1)/d^2 * n_l.
//!
//! ```bash
//! cargo run --release -p norastab --example stabilizer_weights
//! ```

use norastab::analysis::weight_histogram_by_layer;
use norastab::nora::{NoraMode, NoraParams};

fn main() {
    for depth in [1usize, 3] {
        let params = NoraParams {
            d: 3,
            q: 2,
            r: 2,
            depth,
            mode: NoraMode::Fixed { k: 2, layers: 6 },
            seed: 31,
        };
        let records = weight_histogram_by_layer(&params).unwrap();
        println!("D = {depth}:");
        println!("  layer  n_l   w_max   mean(all)  mean(core)  max");
        for rec in &records {
            println!(
                "  {:>5}  {:>3}  {:>6.2}  {:>9.2}  {:>10.2}  {:>3}",
                rec.layer,
                rec.sites,
                rec.w_max,
                rec.mean_weight(),
                rec.mean_core_weight(),
                rec.weights.iter().max().unwrap()
            );
        }
        let last = records.last().unwrap();
        println!(
            "  -> rows scrambled by every layer reach {:.0}% of w_max\n",
            100.0 * last.mean_core_weight() / last.w_max
        );
    }
}
