//! Exact affine solving over Q and over a number field.

use sphere_closure::linalg::{defining_pair_from_rref, is_rational_over_q, rational_points, rref, solve_affine, Matrix, MatrixQ};
use sphere_closure::rational::{format_rational, int};
use sphere_closure::{make_field, PolyQ, Rational, RootBox};

fn show(v: &[Rational]) -> String {
    let s: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", s.join(", "))
}

fn main() -> sphere_closure::Result<()> {
    // x + y + z = 1, x − z = 0
    let a = MatrixQ::from_rows(&(), vec![vec![int(1), int(1), int(1)], vec![int(1), int(0), int(-1)]], 3);
    let frame = solve_affine(&a, &[int(1), int(0)]).expect("consistent");
    println!("base {}", show(frame.base()));
    for d in frame.directions() {
        println!("  direction {}", show(d));
    }

    // over Q(√2): x − √2·y = 0 has only the origin as a rational point
    let k = make_field(&PolyQ::from_ints(&[-2, 0, 1]), RootBox::real(int(1), int(2)))?;
    let ak = Matrix::from_rows(&k, vec![vec![k.one(), k.generator().neg()]], 2);
    let rhs = [k.zero()];
    let pair = defining_pair_from_rref(&rref(&ak, &rhs))?;
    println!("dimension over K: {}, rational pair: {}", pair.dim(), is_rational_over_q(&pair));
    let pts = rational_points(&ak, &rhs).expect("origin");
    println!("rational points: base {} with {} directions", show(pts.base()), pts.directions().len());
    Ok(())
}
