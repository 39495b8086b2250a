//! Inversion at a base point, for the standard form and for a custom one.

use sphere_closure::geometry::{invert_point, invert_point_inverse, QuadraticFormQ};
use sphere_closure::linalg::MatrixQ;
use sphere_closure::rational::{format_rational, int, rat};
use sphere_closure::Rational;

fn show(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn main() -> sphere_closure::Result<()> {
    let b = vec![int(0), int(0)];
    let id = QuadraticFormQ::identity(2);
    // the line y₁ = 1 goes to the circle through 0 with center (1/2, 0)
    for t in [int(0), int(1), rat(1, 2), int(-3)] {
        let y = vec![int(1), t];
        let x = invert_point(&b, &y, &id)?;
        println!("({}) -> ({})", show(&y), show(&x));
        assert_eq!(invert_point(&b, &x, &id)?, y);
    }

    let g = MatrixQ::from_rows(&(), vec![vec![int(1), int(0)], vec![int(0), int(2)]], 2);
    let form = QuadraticFormQ::new(g)?;
    let y = vec![rat(3, 4), int(5)];
    let x = invert_point(&b, &y, &form)?;
    println!("form x₁² + 2x₂²: ({}) -> ({})", show(&y), show(&x));
    println!("and back: ({})", show(&invert_point_inverse(&b, &x, &form)?));
    println!("pole: {}", invert_point(&b, &b, &id).unwrap_err());
    Ok(())
}
