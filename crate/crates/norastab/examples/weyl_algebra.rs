//! Weyl strings on qutrits: products, commutation, weights, and the
//! round-tripping text form.
//!
//! ```bash
//! cargo run --release -p norastab --example weyl_algebra
//! ```

use norastab::weyl::WeylVector;

fn main() {
    let d = 3;
    let z = WeylVector::single_site(3, 0, 1, 0, d).unwrap();
    let x = WeylVector::single_site(3, 0, 0, 1, d).unwrap();
    let far = WeylVector::single_site(3, 2, 0, 2, d).unwrap();

    println!("Z        = {z}");
    println!("X        = {x}");
    println!("X^2 at 2 = {far}");

    let zx = z.multiply(&x).unwrap();
    println!("\nZ * X    = {zx}   (components add, phase picks up chi^(<v,w>/2))");
    println!("weight(Z * X * far) = {}", zx.multiply(&far).unwrap().weight());

    println!(
        "\n[Z, X] vanish? {}   [Z, far] vanish? {}",
        z.commutes(&x).unwrap(),
        z.commutes(&far).unwrap()
    );
    println!(
        "symplectic products: <Z,X> = {}, <X,Z> = {}",
        z.symplectic_product(&x).unwrap().value(),
        x.symplectic_product(&z).unwrap().value()
    );

    let text = zx.multiply(&far).unwrap().to_string();
    let back = WeylVector::parse(&text, d).unwrap();
    println!("\ntext form: {text}");
    println!("parses back identically: {}", back.to_string() == text);
}
