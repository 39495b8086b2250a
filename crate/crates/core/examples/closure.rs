//! Closures for three centers: a point pair, a circle, and a single point.

use sphere_closure::closure::compute_closure;
use sphere_closure::geometry::{ClosureObject, Mode, SphereSpec};
use sphere_closure::rational::{format_rational, int};
use sphere_closure::{make_field, PolyQ, RootBox};

fn report(name: &str, c: &ClosureObject) {
    println!("{name}: {:?}, dim {}", c.kind, c.dim);
    let base: Vec<String> = c.carrier.base().iter().map(format_rational).collect();
    println!("  carrier base ({})", base.join(", "));
    for d in c.carrier.directions() {
        let d: Vec<String> = d.iter().map(format_rational).collect();
        println!("  direction    ({})", d.join(", "));
    }
    if let Some(center) = &c.center_exact {
        let s: Vec<String> = center.iter().map(|e| e.to_string()).collect();
        println!("  center ({}), radius² {}", s.join(", "), c.radius_sq_exact.as_ref().unwrap());
    }
}

fn main() -> sphere_closure::Result<()> {
    let q2 = make_field(&PolyQ::from_ints(&[-2, 0, 1]), RootBox::real(int(1), int(2)))?;
    let r = q2.generator();

    let a = SphereSpec::new(q2.clone(), vec![r.clone(), q2.one()], vec![int(0), int(0)], None, Mode::Theorem)?;
    report("center (√2, 1) through 0", &compute_closure(&a)?);

    let b = SphereSpec::new(
        q2.clone(),
        vec![r, q2.zero(), q2.zero()],
        vec![int(1), int(1), int(0)],
        None,
        Mode::Theorem,
    )?;
    report("center (√2, 0, 0) through (1, 1, 0)", &compute_closure(&b)?);

    let q3 = make_field(&PolyQ::from_ints(&[-2, 0, 0, 1]), RootBox::real(int(1), int(2)))?;
    let c = SphereSpec::new(q3.clone(), vec![q3.generator(), q3.zero()], vec![int(0), int(0)], None, Mode::Theorem)?;
    report("center (2^(1/3), 0) through 0", &compute_closure(&c)?);
    Ok(())
}
