//! Uniform random Clifford elements: symplectic validity and the exact
//! single-qutrit orbit count |Sp(2, F_3)| = 24.
//!
//! ```bash
//! cargo run --release -p norastab --example random_cliffords
//! ```

use std::collections::HashMap;

use norastab::clifford::{symplectic_group_order, SymplecticClifford};
use norastab::weyl::WeylVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    // Every sample satisfies S^T J S = J.
    let mut all_valid = true;
    for _ in 0..2000 {
        let c = SymplecticClifford::random(3, 5, &mut rng).unwrap();
        all_valid &= c.validate();
    }
    println!("2000 random (n=3, d=5) elements symplectic: {all_valid}");

    // n=1, d=3: the 24 elements of Sp(2, F_3) all occur.
    let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
    let samples = 24_000;
    for _ in 0..samples {
        let c = SymplecticClifford::random(1, 3, &mut rng).unwrap();
        let s = c.symplectic();
        *counts
            .entry(vec![s.get(0, 0), s.get(0, 1), s.get(1, 0), s.get(1, 1)])
            .or_default() += 1;
    }
    let (min, max) = counts
        .values()
        .fold((u64::MAX, 0), |(lo, hi), &c| (lo.min(c), hi.max(c)));
    println!(
        "saw {} / {} distinct symplectic matrices; counts in [{min}, {max}] around {}",
        counts.len(),
        symplectic_group_order(1, 3),
        samples / 24
    );

    // Conjugation acts on Weyl labels.
    let c = SymplecticClifford::random(2, 3, &mut rng).unwrap();
    let z0 = WeylVector::single_site(2, 0, 1, 0, 3).unwrap();
    println!("\nU Z_0 U^dagger = {}", c.apply_to_weyl(&z0).unwrap());
    let round = SymplecticClifford::compose(&c.inverse().unwrap(), &c).unwrap();
    println!(
        "inverse compose acts trivially: {}",
        round.apply_to_weyl(&z0).unwrap() == z0
    );
}
