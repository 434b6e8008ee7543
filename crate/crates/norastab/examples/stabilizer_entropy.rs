//! Stabilizer tableaus: evolution, rank-based subsystem entropy, mutual
//! information, and the plain-text serialization format.
//!
//! ```bash
//! cargo run --release -p norastab --example stabilizer_entropy
//! ```

use norastab::clifford::SymplecticClifford;
use norastab::stab::{RegionMask, StabilizerTableau};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 6;
    let d = 3;

    let zero = StabilizerTableau::zero_state(n, d).unwrap();
    let left = RegionMask::range(0, 3);
    println!("product state: S(A) = {}", zero.entropy(&left).unwrap());

    let scrambler = SymplecticClifford::random(n, d, &mut rng).unwrap();
    let state = zero.apply_clifford(&scrambler).unwrap();
    println!("\nafter a random global Clifford:");
    for size in 1..n {
        let region = RegionMask::range(0, size);
        println!(
            "  S(first {size}) = {}  (complement: {})",
            state.entropy(&region).unwrap(),
            state.entropy(&region.complement(n)).unwrap()
        );
    }

    let a = RegionMask::new(vec![0, 1]).unwrap();
    let r = RegionMask::new(vec![4, 5]).unwrap();
    println!(
        "\nI(A; R) for A = {{0,1}}, R = {{4,5}}: {}",
        state.mutual_information(&a, &r).unwrap()
    );

    let text = state.to_text();
    println!("\nserialized tableau ({} bytes):\n{text}", text.len());
    let back = StabilizerTableau::from_text(&text).unwrap();
    println!("round-trips exactly: {}", back == state);
}
