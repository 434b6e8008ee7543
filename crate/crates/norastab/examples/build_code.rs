//! Build a layered random-Clifford code end to end and print its report:
//! geometry, gate count, distance estimate, and weight summary.
//!
//! ```bash
//! cargo run --release -p norastab --example build_code
//! ```

use norastab::analysis::code_report;
use norastab::nora::{gate_count, gate_count_closed_form, NoraMode, NoraParams};

fn main() {
    let params = NoraParams {
        d: 3,
        q: 2,
        r: 2,
        depth: 3,
        mode: NoraMode::Fixed { k: 2, layers: 5 },
        seed: 42,
    };
    let (widths, increments) = params.layer_sizes().unwrap();
    println!("layer widths  n_l: {widths:?}");
    println!("fresh qudits dn_l: {increments:?}");
    println!(
        "gates: constructed {} / closed form {:?}",
        gate_count(&params).unwrap(),
        gate_count_closed_form(&params).unwrap()
    );

    let report = code_report(&params, 8, 1234).unwrap();
    println!(
        "\n[[N, k]] = [[{}, {}]]  rate {:.4}  singleton bound {}",
        report.n_physical, report.k, report.rate, report.singleton_bound
    );
    match report.distance.delta {
        Some(delta) => println!(
            "distance estimate: {delta} (relative {:.3})",
            report.relative_distance.unwrap()
        ),
        None => println!(
            "no violating region found up to the sweep cap {}",
            report.distance.cap
        ),
    }
    let last = report.layer_weights.last().unwrap();
    println!(
        "final-layer weights: mean {:.2} of w_max {:.2}",
        last.mean_weight(),
        last.w_max
    );
    println!("\nfull report as JSON:");
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
