//! Exact rational points on the sphere and numeric checks against every
//! conjugate constraint.

use nalgebra::DVector;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{pow10_neg, ComplexBall};
use crate::closure::{rhs_constraints, theta_frame, RhsConstraint};
use crate::error::{Error, Result};
use crate::geometry::{closure_membership, invert_point, sphere_residual, ClosureObject, SphereSpec};
use crate::linalg::{vec_add, vec_scale};
use crate::rational::{to_f64, Rational};

/// Random rational with numerator in `[-height, height]` and denominator in
/// `[1, height]`.
fn random_rational(rng: &mut ChaCha8Rng, height: u64) -> Rational {
    let h = height as i64;
    let num = rng.random_range(-h..=h);
    let den = rng.random_range(1..=h);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational points of `S` other than `b`.
///
/// Sample `i` draws parameters `t` from a generator seeded with `seed + i`,
/// forms `y = β₀ + Σ tⱼ βⱼ` on the hyperplane and returns its inversion. The
/// output is empty when the hyperplane has no rational points.
pub fn sample_rational_points(
    spec: &SphereSpec,
    count: usize,
    height: u64,
    seed: u64,
) -> Result<Vec<Vec<Rational>>> {
    if height == 0 {
        return Err(Error::InvalidSpec("height must be at least 1".into()));
    }
    let Some(frame) = theta_frame(spec) else {
        return Ok(Vec::new());
    };
    let b = spec.base_point();
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let mut y = vec_add(b, frame.base());
            for d in frame.directions() {
                let t = random_rational(&mut rng, height);
                y = vec_add(&y, &vec_scale(d, &t));
            }
            invert_point(b, &y, spec.form())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleCheck {
    pub index: usize,
    pub on_sphere: bool,
    pub in_closure: bool,
    pub within_tol: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub count: usize,
    pub digits: u32,
    pub tol: String,
    pub passed: bool,
    pub on_sphere_failures: usize,
    pub membership_failures: usize,
    pub tolerance_failures: usize,
    /// Upper bounds over all samples and embeddings.
    pub max_sphere_residual: String,
    pub max_hyperplane_residual: String,
    pub failing_indices: Vec<usize>,
    #[serde(skip)]
    pub checks: Vec<SampleCheck>,
}

fn upper_decimal(raw: &BigInt, prec: u32) -> String {
    ComplexBall::from_parts(BigInt::zero(), BigInt::zero(), raw.clone(), prec).rad_decimal()
}

/// Checks every sample exactly (on `S`, in the closure) and numerically
/// against each conjugate constraint: `|q(x − Re σγ) − q(b − Re σγ)|` and
/// `|B(Im σγ, x − b)|` must be at most `tol`.
pub fn verify_samples(
    spec: &SphereSpec,
    closure: &ClosureObject,
    samples: &[Vec<Rational>],
    digits: u32,
    tol: &Rational,
) -> Result<VerifyReport> {
    if *tol < pow10_neg(digits) * Rational::from_integer(10.into()) {
        return Err(Error::PrecisionExhausted(format!(
            "tolerance is finer than 10 units in the last of {digits} digits"
        )));
    }
    let rhs = rhs_constraints(spec, digits)?;
    let prec = rhs.first().map_or(0, |r| r.radius_sq_re.prec());
    let b: Vec<ComplexBall> = spec
        .base_point()
        .iter()
        .map(|v| ComplexBall::from_rational(v, prec))
        .collect();

    let rows: Vec<(SampleCheck, BigInt, BigInt)> = samples
        .par_iter()
        .enumerate()
        .map(|(index, x)| check_sample(spec, closure, &rhs, &b, index, x, tol))
        .collect();

    let mut max_s = BigInt::zero();
    let mut max_h = BigInt::zero();
    let mut checks = Vec::with_capacity(rows.len());
    for (c, s, h) in rows {
        max_s = max_s.max(s);
        max_h = max_h.max(h);
        checks.push(c);
    }
    let failing_indices: Vec<usize> = checks
        .iter()
        .filter(|c| !(c.on_sphere && c.in_closure && c.within_tol))
        .map(|c| c.index)
        .collect();
    Ok(VerifyReport {
        count: samples.len(),
        digits,
        tol: crate::rational::format_rational(tol),
        passed: failing_indices.is_empty(),
        on_sphere_failures: checks.iter().filter(|c| !c.on_sphere).count(),
        membership_failures: checks.iter().filter(|c| !c.in_closure).count(),
        tolerance_failures: checks.iter().filter(|c| !c.within_tol).count(),
        max_sphere_residual: upper_decimal(&max_s, prec),
        max_hyperplane_residual: upper_decimal(&max_h, prec),
        failing_indices,
        checks,
    })
}

fn check_sample(
    spec: &SphereSpec,
    closure: &ClosureObject,
    rhs: &[RhsConstraint],
    b: &[ComplexBall],
    index: usize,
    x: &[Rational],
    tol: &Rational,
) -> (SampleCheck, BigInt, BigInt) {
    if x.len() != spec.n() {
        let c = SampleCheck {
            index,
            on_sphere: false,
            in_closure: false,
            within_tol: false,
        };
        return (c, BigInt::zero(), BigInt::zero());
    }
    let on_sphere = sphere_residual(spec.center(), spec.base_point(), x, spec.form()).is_zero();
    let in_closure = closure_membership(closure, x, spec);
    let prec = b.first().map_or(0, ComplexBall::prec);
    let xb: Vec<ComplexBall> = x.iter().map(|v| ComplexBall::from_rational(v, prec)).collect();
    let x_minus_b: Vec<ComplexBall> = xb.iter().zip(b).map(|(p, q)| p.sub(q)).collect();
    let mut within_tol = true;
    let mut max_s = BigInt::zero();
    let mut max_h = BigInt::zero();
    for c in rhs {
        let d: Vec<ComplexBall> = xb.iter().zip(&c.center_re).map(|(p, q)| p.sub(q)).collect();
        let s = spec.form().eval_ball(&d).sub(&c.radius_sq_re);
        let h = if c.normal_im.iter().all(ComplexBall::is_zero) {
            ComplexBall::zero(prec)
        } else {
            spec.form().bilinear_ball(&c.normal_im, &x_minus_b)
        };
        within_tol &= s.abs_le(tol) && h.abs_le(tol);
        max_s = max_s.max(s.abs_upper_raw());
        max_h = max_h.max(h.abs_upper_raw());
    }
    let check = SampleCheck {
        index,
        on_sphere,
        in_closure,
        within_tol,
    };
    (check, max_s, max_h)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeBin {
    /// Upper edge of the bin as a multiple of `eps`; `null` for the last bin.
    pub upto_eps: Option<f64>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub budget: usize,
    pub eps: f64,
    pub samples: usize,
    pub passed: bool,
    pub max_nearest: f64,
    pub median_nearest: f64,
    pub histogram: Vec<ProbeBin>,
    pub uncovered: Vec<usize>,
}

/// Draws `budget` uniform targets on the closure and measures the Euclidean
/// distance from each to the nearest sample. Passes if all are within `eps`.
pub fn density_probe(
    spec: &SphereSpec,
    closure: &ClosureObject,
    samples: &[Vec<Rational>],
    eps: f64,
    budget: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if closure.dim == 0 {
        return Err(Error::DimensionZero);
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidSpec("eps must be positive".into()));
    }
    let n = spec.n();
    let gram = spec.form().gram();
    let g = nalgebra::DMatrix::from_fn(n, n, |i, j| to_f64(gram.get(i, j)));
    let center = DVector::from_iterator(n, closure.center_approx.iter().map(ComplexBall::re_f64));
    let radius = closure.radius_sq_approx.re_f64().max(0.0).sqrt();
    let basis = b_orthonormal(&g, closure.carrier.directions());
    let pts: Vec<DVector<f64>> = samples
        .iter()
        .map(|x| DVector::from_iterator(n, x.iter().map(to_f64)))
        .collect();

    let nearest: Vec<f64> = (0..budget)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let mut u: Vec<f64> = basis.iter().map(|_| rng.sample(StandardNormal)).collect();
            let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
            u.iter_mut().for_each(|v| *v /= norm);
            let mut target = center.clone();
            for (ui, e) in u.iter().zip(&basis) {
                target += e * (ui * radius);
            }
            pts.iter()
                .map(|p| (p - &target).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();

    let mut sorted = nearest.clone();
    sorted.sort_by(f64::total_cmp);
    let edges = [0.25, 0.5, 1.0];
    let mut histogram: Vec<ProbeBin> = edges
        .iter()
        .map(|&e| ProbeBin {
            upto_eps: Some(e),
            count: 0,
        })
        .collect();
    histogram.push(ProbeBin {
        upto_eps: None,
        count: 0,
    });
    for d in &nearest {
        let bin = edges.iter().position(|&e| *d <= e * eps).unwrap_or(edges.len());
        histogram[bin].count += 1;
    }
    let uncovered: Vec<usize> = (0..budget).filter(|&i| nearest[i] > eps).collect();
    Ok(ProbeReport {
        budget,
        eps,
        samples: samples.len(),
        passed: uncovered.is_empty(),
        max_nearest: sorted.last().copied().unwrap_or(0.0),
        median_nearest: sorted.get(sorted.len() / 2).copied().unwrap_or(0.0),
        histogram,
        uncovered,
    })
}

/// Gram–Schmidt for the form `g`.
fn b_orthonormal(g: &nalgebra::DMatrix<f64>, dirs: &[Vec<Rational>]) -> Vec<DVector<f64>> {
    let n = g.nrows();
    let mut out: Vec<DVector<f64>> = Vec::new();
    for d in dirs {
        let mut v = DVector::from_iterator(n, d.iter().map(to_f64));
        for e in &out {
            let c = (e.transpose() * g * &v)[0];
            v -= e * c;
        }
        let len = (v.transpose() * g * &v)[0].sqrt();
        out.push(v / len);
    }
    out
}

/// True iff every sample is a rational point distinct from `b`.
pub fn samples_avoid_base(spec: &SphereSpec, samples: &[Vec<Rational>]) -> bool {
    samples.iter().all(|x| x.as_slice() != spec.base_point())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::compute_closure;
    use crate::geometry::Mode;
    use crate::linalg::lift_vec;
    use crate::numberfield::{make_field, NumberField, RootBox};
    use crate::poly::PolyQ;
    use crate::rational::{int, rat};

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn sqrt2() -> NumberField {
        make_field(&PolyQ::from_ints(&[-2, 0, 1]), RootBox::real(int(1), int(2))).unwrap()
    }

    #[test]
    fn two_point_samples() {
        let k = sqrt2();
        let s = SphereSpec::new(k.clone(), vec![k.generator(), k.one()], qv(&[0, 0]), None, Mode::Theorem).unwrap();
        let pts = sample_rational_points(&s, 5, 50, 3).unwrap();
        assert!(pts.iter().all(|p| p == &qv(&[0, 2])));
        let c = compute_closure(&s).unwrap();
        assert_eq!(density_probe(&s, &c, &pts, 0.1, 4, 0).unwrap_err(), Error::DimensionZero);
    }

    #[test]
    fn circle_samples_verify() {
        let k = sqrt2();
        let s = SphereSpec::new(k.clone(), vec![k.generator(), k.zero(), k.zero()], qv(&[1, 1, 0]), None, Mode::Theorem)
            .unwrap();
        let c = compute_closure(&s).unwrap();
        let pts = sample_rational_points(&s, 200, 50, 0).unwrap();
        assert_eq!(pts, sample_rational_points(&s, 200, 50, 0).unwrap());
        assert!(pts.iter().all(|p| p[0] == int(1) && &p[1] * &p[1] + &p[2] * &p[2] == int(1)));
        assert!(samples_avoid_base(&s, &pts));
        let r = verify_samples(&s, &c, &pts, 32, &rat(1, 1)).unwrap();
        assert!(r.passed);
        assert_eq!(r.count, 200);

        let mut bad = pts[..3].to_vec();
        bad[1][2] += int(1);
        let r = verify_samples(&s, &c, &bad, 32, &rat(1, 1)).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failing_indices, vec![1]);
        assert_eq!(r.on_sphere_failures, 1);

        let r = verify_samples(&s, &c, &[], 32, &rat(1, 1)).unwrap();
        assert!(r.passed && r.count == 0);
        assert!(matches!(
            verify_samples(&s, &c, &[], 32, &pow10_neg(32)),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn inconsistent_gives_no_samples() {
        let k = make_field(&PolyQ::from_ints(&[-2, 0, 0, 1]), RootBox::real(int(1), int(2))).unwrap();
        let s = SphereSpec::new(k.clone(), vec![k.generator(), k.zero()], qv(&[0, 0]), None, Mode::Theorem).unwrap();
        assert!(sample_rational_points(&s, 10, 50, 0).unwrap().is_empty());
    }

    #[test]
    fn full_circle_probe() {
        let q = NumberField::rationals();
        let s = SphereSpec::new(q.clone(), lift_vec(&q, &qv(&[0, 1])), qv(&[0, 0]), None, Mode::Theorem).unwrap();
        let c = compute_closure(&s).unwrap();
        let pts = sample_rational_points(&s, 8000, 50, 0).unwrap();
        let r = density_probe(&s, &c, &pts, 0.05, 100, 0).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.histogram.iter().map(|b| b.count).sum::<usize>(), 100);
    }
}
