//! Gibbs entropy of the layered projector Hamiltonian: exact closed form,
//! continuum approximation, power-law bound, and heat capacity.
//!
//! ```bash
//! cargo run --release -p norastab --example thermodynamics
//! ```

use norastab::thermo::{
    entropy_continuum, entropy_from_partition_derivative, gibbs_entropy_exact, heat_capacity,
    ThermoParams,
};

fn main() {
    let p = ThermoParams::new(2, 1, 20, 2, 1.0, 0.4, 1.0).unwrap();
    println!(
        "d = {}, k = {}, L = {}, N = {}, alpha/gamma = {:.4}",
        p.d,
        p.k,
        p.layers,
        p.total_sites(),
        p.alpha / p.gamma
    );

    println!("\n{:>10}  {:>12}  {:>12}  {:>12}  {:>10}", "T", "S_exact", "S_integral", "S_bound", "C_V");
    for i in 0..=12 {
        let t = 10f64.powf(-6.0 + 3.5 * i as f64 / 12.0);
        let pt = p.with_temperature(t);
        let cont = entropy_continuum(&pt);
        println!(
            "{t:>10.3e}  {:>12.6}  {:>12.6}  {:>12.6}  {:>10.4e}",
            gibbs_entropy_exact(&pt),
            cont.integral_form,
            cont.gamma_bound,
            heat_capacity(&pt)
        );
    }

    // Thermodynamic identity S = (1 - beta d/dbeta) log Z.
    let pt = p.with_beta(1e4);
    let direct = gibbs_entropy_exact(&pt);
    let derived = entropy_from_partition_derivative(&pt, 1e-5);
    println!("\nidentity check at beta = 1e4: S = {direct:.10} vs (1 - b d_b) log Z = {derived:.10}");

    // The bound's excess entropy is a pure power law in T.
    let s1 = entropy_continuum(&p.with_temperature(1e-6)).gamma_bound - 2f64.ln();
    let s2 = entropy_continuum(&p.with_temperature(1e-4)).gamma_bound - 2f64.ln();
    println!(
        "log-log slope of the bound excess: {:.4} (alpha/gamma = {:.4})",
        (s2 / s1).ln() / (1e-4f64 / 1e-6).ln(),
        p.alpha / p.gamma
    );
}
