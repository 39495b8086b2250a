//! Certified complex embeddings of Q(2^(1/3)).

use sphere_closure::rational::int;
use sphere_closure::{embeddings, make_field, PolyQ, RootBox};

fn main() -> sphere_closure::Result<()> {
    let k = make_field(&PolyQ::from_ints(&[-2, 0, 0, 1]), RootBox::real(int(1), int(2)))?;
    let emb = embeddings(&k, 40)?;
    for (j, r) in emb.roots().iter().enumerate() {
        let mark = if j == emb.designated_index() { "*" } else { " " };
        println!("{mark} σ{j}(θ) = ({}, {})   radius ≤ {}", r.re_decimal(40), r.im_decimal(40), r.rad_decimal());
    }
    // evaluate 1 + θ + θ² under every embedding
    let e = k.one().add(&k.generator()).add(&k.generator().pow(2));
    for j in 0..emb.len() {
        let v = emb.eval(&e, j);
        println!("σ{j}(1 + θ + θ²) ≈ ({:.12}, {:.12})", v.re_f64(), v.im_f64());
    }
    Ok(())
}
