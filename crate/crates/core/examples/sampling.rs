//! Rational points on a circle, exact verification and a coverage probe.
//!
//! ```text
//! cargo run --release --example sampling -- 5000
//! ```

use sphere_closure::ball::pow10_neg;
use sphere_closure::closure::compute_closure;
use sphere_closure::geometry::{Mode, SphereSpec};
use sphere_closure::rational::{format_rational, int};
use sphere_closure::sampler::{density_probe, sample_rational_points, verify_samples};
use sphere_closure::{make_field, PolyQ, RootBox};

fn main() -> sphere_closure::Result<()> {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let k = make_field(&PolyQ::from_ints(&[-2, 0, 1]), RootBox::real(int(1), int(2)))?;
    let spec = SphereSpec::new(
        k.clone(),
        vec![k.generator(), k.zero(), k.zero()],
        vec![int(1), int(1), int(0)],
        None,
        Mode::Theorem,
    )?;
    let closure = compute_closure(&spec)?;
    let pts = sample_rational_points(&spec, count, 50, 0)?;
    for p in pts.iter().take(5) {
        let s: Vec<String> = p.iter().map(format_rational).collect();
        println!("({})", s.join(", "));
    }

    let report = verify_samples(&spec, &closure, &pts, 64, &pow10_neg(50))?;
    println!(
        "{} samples, passed {}, max residuals {} / {}",
        report.count, report.passed, report.max_sphere_residual, report.max_hyperplane_residual
    );
    let probe = density_probe(&spec, &closure, &pts, 0.05, 100, 0)?;
    println!(
        "probe eps {}: passed {}, max nearest {:.4}, median {:.4}",
        probe.eps, probe.passed, probe.max_nearest, probe.median_nearest
    );
    Ok(())
}
