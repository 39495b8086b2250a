//! A complex generator: Q(i) with center (1 + i, 1).

use sphere_closure::closure::{compute_closure, rhs_constraints};
use sphere_closure::geometry::{Mode, SphereSpec};
use sphere_closure::rational::{int, rat};
use sphere_closure::{make_field, PolyQ, RootBox};

fn main() -> sphere_closure::Result<()> {
    let k = make_field(&PolyQ::from_ints(&[1, 0, 1]), RootBox::new((int(-1), int(1)), (rat(1, 2), int(2))))?;
    let i = k.generator();
    let center = vec![k.one().add(&i), k.one()];
    let base = vec![int(0), int(0)];

    let theorem = SphereSpec::new(k.clone(), center.clone(), base.clone(), None, Mode::Theorem);
    println!("theorem mode: {}", theorem.unwrap_err());

    let spec = SphereSpec::new(k, center, base, None, Mode::Generalized)?;
    let c = compute_closure(&spec)?;
    println!("{:?}, dim {}", c.kind, c.dim);
    let approx: Vec<String> = c.center_approx.iter().map(|b| b.re_decimal(12)).collect();
    println!("center ≈ ({}), radius² ≈ {}", approx.join(", "), c.radius_sq_approx.re_decimal(12));
    for r in rhs_constraints(&spec, 12)? {
        let n: Vec<String> = r.normal_im.iter().map(|b| b.re_decimal(12)).collect();
        println!("embedding {}: normal ({})", r.embedding_index, n.join(", "));
    }
    Ok(())
}
