//! Spheres of the form x₁² + 2x₂² instead of the Euclidean one.

use sphere_closure::closure::compute_closure;
use sphere_closure::geometry::{closure_membership, Mode, QuadraticFormQ, SphereSpec};
use sphere_closure::linalg::MatrixQ;
use sphere_closure::rational::{format_rational, int, rat};
use sphere_closure::sampler::sample_rational_points;
use sphere_closure::{make_field, PolyQ, RootBox};

fn main() -> sphere_closure::Result<()> {
    let g = MatrixQ::from_rows(&(), vec![vec![int(1), int(0)], vec![int(0), int(2)]], 2);
    let form = QuadraticFormQ::new(g)?;
    let k = make_field(&PolyQ::from_ints(&[-2, 0, 1]), RootBox::real(int(1), int(2)))?;
    let spec = SphereSpec::new(k.clone(), vec![k.generator(), k.one()], vec![int(0), int(0)], Some(form), Mode::Theorem)?;
    let c = compute_closure(&spec)?;
    println!("{:?}, dim {}, radius² {}", c.kind, c.dim, c.radius_sq_exact.as_ref().unwrap());
    for x in [vec![int(0), int(0)], vec![int(0), int(2)], vec![int(0), int(1)], vec![rat(1, 2), int(1)]] {
        let s: Vec<String> = x.iter().map(format_rational).collect();
        println!("({}) in closure: {}", s.join(", "), closure_membership(&c, &x, &spec));
    }
    for x in sample_rational_points(&spec, 3, 50, 0)? {
        let s: Vec<String> = x.iter().map(format_rational).collect();
        println!("sample ({})", s.join(", "));
    }

    // a non-definite form is rejected
    let bad = MatrixQ::from_rows(&(), vec![vec![int(1), int(2)], vec![int(2), int(1)]], 2);
    println!("indefinite: {}", QuadraticFormQ::new(bad).unwrap_err());
    Ok(())
}
