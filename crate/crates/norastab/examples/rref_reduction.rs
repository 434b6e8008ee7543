//! Weight reduction by rewriting the stabilizer matrix in reduced row
//! echelon form: same group, same entropies, usually lighter rows.
//!
//! ```bash
//! cargo run --release -p norastab --example rref_reduction
//! ```

use norastab::analysis::rref_reduce;
use norastab::nora::{encode_with_reference, NoraMode, NoraParams};
use norastab::stab::RegionMask;

fn main() {
    let mut improvements = Vec::new();
    for seed in 0..20u64 {
        let params = NoraParams {
            d: 3,
            q: 2,
            r: 2,
            depth: 3,
            mode: NoraMode::Fixed { k: 2, layers: 4 },
            seed,
        };
        let state = encode_with_reference(&params).unwrap();
        let reduced = rref_reduce(&state.tableau);

        let mean = |t: &norastab::stab::StabilizerTableau| {
            let w = t.row_weights();
            w.iter().sum::<usize>() as f64 / w.len() as f64
        };
        let before = mean(&state.tableau);
        let after = mean(&reduced);
        improvements.push(before - after);

        if seed == 0 {
            println!("seed 0: mean row weight {before:.2} -> {after:.2}");
            let region = RegionMask::new(vec![0, 3, 7, 10]).unwrap();
            println!(
                "entropies unchanged: {} == {}",
                state.tableau.entropy(&region).unwrap(),
                reduced.entropy(&region).unwrap()
            );
            println!(
                "idempotent: {}",
                rref_reduce(&reduced) == reduced
            );
        }
    }
    let mean_gain = improvements.iter().sum::<f64>() / improvements.len() as f64;
    println!(
        "\nmean weight reduction over {} instances: {mean_gain:.3} sites/row",
        improvements.len()
    );
}
