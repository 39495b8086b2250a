//! Arithmetic in Q(√2) and Q(2^(1/3)).
//!
//! ```text
//! cargo run --example number_field
//! ```

use sphere_closure::rational::int;
use sphere_closure::{make_field, PolyQ, RootBox};

fn main() -> sphere_closure::Result<()> {
    let k = make_field(&PolyQ::from_ints(&[-2, 0, 1]), RootBox::real(int(1), int(2)))?;
    let a = k.generator();
    let x = a.add(&k.one()); // 1 + √2
    println!("(1 + √2)^2   = {}", x.mul(&x));
    println!("1 / (1 + √2) = {}", x.inv()?);
    println!("√2 · √2 rational? {:?}", a.mul(&a).is_rational());

    let c = make_field(&PolyQ::from_ints(&[-2, 0, 0, 1]), RootBox::real(int(1), int(2)))?;
    let t = c.generator();
    println!("θ^5 in Q(2^(1/3)) = {}", t.pow(5));

    // x² − 4 is reducible, so no field
    let bad = make_field(&PolyQ::from_ints(&[-4, 0, 1]), RootBox::real(int(1), int(3)));
    println!("x² − 4: {}", bad.unwrap_err());
    Ok(())
}
