//! The dense-matrix oracle agreeing with the integer phase-space paths:
//! traces, products, conjugation, projectors, and entropies.
//!
//! ```bash
//! cargo run --release -p norastab --example dense_crosscheck
//! ```

use norastab::clifford::SymplecticClifford;
use norastab::dense::{dense_clifford, dense_entropy, dense_projector, dense_weyl};
use norastab::stab::{RegionMask, StabilizerTableau};
use norastab::weyl::WeylVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let d = 3;

    // Trace identity: Tr w(v) = d^n when v = 0, zero otherwise.
    let id = WeylVector::identity(2, d).unwrap();
    let v = WeylVector::single_site(2, 1, 2, 1, d).unwrap();
    println!(
        "Tr[w(0)] = {:.1}, |Tr[w(v)]| = {:.2e}",
        dense_weyl(&id).unwrap().trace().re,
        dense_weyl(&v).unwrap().trace().norm()
    );

    // Dense product vs algebraic product, with exact phases.
    let a = WeylVector::single_site(2, 0, 1, 1, d).unwrap();
    let dense_prod = dense_weyl(&a).unwrap().mul(&dense_weyl(&v).unwrap());
    let alg_prod = dense_weyl(&a.multiply(&v).unwrap()).unwrap();
    println!(
        "dense product matches algebra: {}",
        dense_prod.approx_eq(&alg_prod, 1e-10)
    );

    // Conjugation by a reconstructed dense unitary.
    let c = SymplecticClifford::random(2, d, &mut rng).unwrap();
    let u = dense_clifford(&c).unwrap();
    let conj = u.mul(&dense_weyl(&v).unwrap()).mul(&u.dagger());
    let predicted = dense_weyl(&c.apply_to_weyl(&v).unwrap()).unwrap();
    println!("conjugation matches apply_to_weyl: {}", conj.approx_eq(&predicted, 1e-8));

    // Projector of a random pure tableau: idempotent, trace 1.
    let t = StabilizerTableau::random_pure(3, d, &mut rng).unwrap();
    let p = dense_projector(&t).unwrap();
    println!(
        "projector: ||P^2 - P|| small: {}, trace = {:.3}",
        p.mul(&p).approx_eq(&p, 1e-9),
        p.trace().re
    );

    // Entropies: integer tableau ranks vs dense spectra.
    for _ in 0..3 {
        let t = StabilizerTableau::random_pure(5, d, &mut rng).unwrap();
        let sites: Vec<usize> = (0..5).filter(|_| rng.gen_bool(0.5)).collect();
        let region = RegionMask::new(sites.clone()).unwrap();
        println!(
            "region {sites:?}: tableau S = {}, dense S = {:.9}",
            t.entropy(&region).unwrap(),
            dense_entropy(&t, &region).unwrap()
        );
    }
}
