//! From a sphere problem to its closure object.
//!
//! The rational points of the hyperplane `⟨σγ − b, x − b⟩ = 1`, taken over
//! every embedding `σ` at once, are the rational solutions of a `d × n`
//! rational system obtained by expanding `γ − b` in the power basis. Its
//! solution frame, pushed through the inversion at `b`, spans the carrier
//! `H′` and the closure is `S ∩ H′`.

use nalgebra::DMatrix;
use num_traits::Zero;
use rayon::prelude::*;

use crate::ball::ComplexBall;
use crate::error::Result;
use crate::geometry::{ClosureKind, ClosureObject, Mode, SphereSpec};
use crate::linalg::{
    canonical_span_basis, expand_over_q, projection_matrix, solve_affine, vec_sub, AffineFrame,
    AffineFrameQ, Matrix, MatrixQ,
};
use crate::numberfield::{embeddings, to_complex_f64, EmbeddingSet, FieldElement};
use crate::rational::Rational;

/// Precision of the approximate center and radius when none is given.
pub const DEFAULT_DIGITS: u32 = 64;

/// The rational system in the shifted unknown `x′ = x − b`: row `j` holds
/// the `α^j` coefficients of `γ − b`, and the right-hand side is `(1, 0, …, 0)`.
pub fn build_theta_system(spec: &SphereSpec) -> (MatrixQ, Vec<Rational>) {
    let k = spec.field();
    let diff = vec_sub(spec.center(), &spec.base_point_k());
    let a = Matrix::from_rows(k, vec![diff], spec.n());
    expand_over_q(&a, &[k.one()])
}

/// Rational solutions of the shifted system, `None` when there are none.
pub fn theta_frame(spec: &SphereSpec) -> Option<AffineFrameQ> {
    let (a, rhs) = build_theta_system(spec);
    solve_affine(&a, &rhs)
}

pub fn compute_closure(spec: &SphereSpec) -> Result<ClosureObject> {
    compute_closure_with_digits(spec, DEFAULT_DIGITS)
}

/// Closure object with approximations certified to `digits` decimals.
pub fn compute_closure_with_digits(spec: &SphereSpec, digits: u32) -> Result<ClosureObject> {
    let emb = embeddings(spec.field(), digits)?;
    let prec = emb.prec();
    let b = spec.base_point();
    let n = spec.n();
    let k = spec.field();

    let Some(frame) = theta_frame(spec) else {
        let carrier = AffineFrame::new(&(), b.to_vec(), Vec::new())?;
        return Ok(ClosureObject {
            kind: ClosureKind::Point,
            dim: 0,
            carrier,
            center_exact: Some(spec.base_point_k()),
            center_approx: b.iter().map(|x| ComplexBall::from_rational(x, prec)).collect(),
            radius_sq_exact: Some(k.zero()),
            radius_sq_approx: ComplexBall::zero(prec),
            digits,
        });
    };

    let carrier = carrier_from_frame(spec, &frame)?;
    let m = carrier.directions().len() - 1;
    let kind = if m + 1 == n {
        ClosureKind::FullSphere
    } else {
        ClosureKind::SubSphere
    };
    let proj = projection_matrix(&carrier, spec.form().gram())?;
    let b_balls: Vec<ComplexBall> = b.iter().map(|x| ComplexBall::from_rational(x, prec)).collect();

    let (center_exact, radius_sq_exact, center_approx) = match spec.mode() {
        Mode::Theorem => {
            let gamma_b = vec_sub(spec.center(), &spec.base_point_k());
            let shift = proj.mul_vec_k(&gamma_b);
            let center: Vec<FieldElement> = spec
                .base_point_k()
                .iter()
                .zip(&shift)
                .map(|(x, s)| x.add(s))
                .collect();
            let r2 = spec.form().eval_k(&vec_sub(&spec.base_point_k(), &center));
            let approx = emb
                .eval_vec(&center, emb.designated_index())
                .iter()
                .map(ComplexBall::real_part)
                .collect();
            (Some(center), Some(r2), approx)
        }
        Mode::Generalized => {
            let re_a: Vec<ComplexBall> = emb
                .eval_vec(spec.center(), emb.designated_index())
                .iter()
                .map(ComplexBall::real_part)
                .collect();
            let diff: Vec<ComplexBall> = re_a.iter().zip(&b_balls).map(|(a, b)| a.sub(b)).collect();
            let approx = (0..n)
                .map(|i| {
                    (0..n).fold(b_balls[i].clone(), |acc, j| {
                        let p = proj.get(i, j);
                        if p.is_zero() {
                            acc
                        } else {
                            acc.add(&diff[j].mul_rational(p))
                        }
                    })
                })
                .collect();
            (None, None, approx)
        }
    };

    let radius_sq_approx = match &radius_sq_exact {
        Some(r2) => emb.eval(r2, emb.designated_index()).real_part(),
        None => {
            let d: Vec<ComplexBall> = b_balls.iter().zip(&center_approx).map(|(b, c)| b.sub(c)).collect();
            spec.form().eval_ball(&d)
        }
    };

    Ok(ClosureObject {
        kind,
        dim: m,
        carrier,
        center_exact,
        center_approx,
        radius_sq_exact,
        radius_sq_approx,
        digits,
    })
}

/// `H′ = b + span{β₀ − b, β₁, …, β_m}`, mapped by `L⁻¹` for a non-identity
/// form, with a row-reduced basis.
fn carrier_from_frame(spec: &SphereSpec, frame: &AffineFrameQ) -> Result<AffineFrameQ> {
    // the frame is already in shifted coordinates, so its base is β₀ − b
    let mut span = vec![frame.base().to_vec()];
    span.extend(frame.directions().iter().cloned());
    if !spec.form().is_identity() {
        span = span
            .iter()
            .map(|v| spec.form().inverse_gram().mul_vec(v))
            .collect();
    }
    let basis = canonical_span_basis(spec.n(), &span);
    AffineFrame::new(&(), spec.base_point().to_vec(), basis)
}

/// One sphere-and-hyperplane pair per embedding `σ_j`: the sphere has center
/// `Re σ_j γ` and passes through `b`, the hyperplane is `B(Im σ_j γ, x − b) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhsConstraint {
    pub embedding_index: usize,
    pub center_re: Vec<ComplexBall>,
    pub normal_im: Vec<ComplexBall>,
    pub radius_sq_re: ComplexBall,
}

pub fn rhs_constraints(spec: &SphereSpec, digits: u32) -> Result<Vec<RhsConstraint>> {
    let emb = embeddings(spec.field(), digits)?;
    Ok(rhs_constraints_with(spec, &emb))
}

pub fn rhs_constraints_with(spec: &SphereSpec, emb: &EmbeddingSet) -> Vec<RhsConstraint> {
    let prec = emb.prec();
    let b: Vec<ComplexBall> = spec
        .base_point()
        .iter()
        .map(|x| ComplexBall::from_rational(x, prec))
        .collect();
    (0..emb.len())
        .into_par_iter()
        .map(|j| {
            let g = emb.eval_vec(spec.center(), j);
            let center_re: Vec<ComplexBall> = g.iter().map(ComplexBall::real_part).collect();
            // a root disk centered on the axis holds a real root
            let normal_im = if emb.roots()[j].is_real() {
                vec![ComplexBall::zero(prec); g.len()]
            } else {
                g.iter().map(ComplexBall::imag_part).collect()
            };
            let d: Vec<ComplexBall> = b.iter().zip(&center_re).map(|(b, c)| b.sub(c)).collect();
            RhsConstraint {
                embedding_index: j,
                center_re,
                normal_im,
                radius_sq_re: spec.form().eval_ball(&d),
            }
        })
        .collect()
}

/// Numeric rank of the `d × n` complex matrix with rows `σ_j(γ − b)`,
/// counting singular values above `10^(−min(digits, 16)/2)` relative to
/// the largest one (at least 1).
pub fn theta_numeric_rank(spec: &SphereSpec, digits: u32) -> Result<usize> {
    let emb = embeddings(spec.field(), digits)?;
    Ok(theta_numeric_rank_with(spec, &emb))
}

pub fn theta_numeric_rank_with(spec: &SphereSpec, emb: &EmbeddingSet) -> usize {
    let digits = emb.digits();
    let diff = vec_sub(spec.center(), &spec.base_point_k());
    let d = emb.len();
    let n = spec.n();
    let rows: Vec<_> = (0..d)
        .flat_map(|j| emb.eval_vec(&diff, j).iter().map(to_complex_f64).collect::<Vec<_>>())
        .collect();
    let m = DMatrix::from_row_slice(d, n, &rows);
    let sv = m.svd(false, false).singular_values;
    let scale = sv.iter().cloned().fold(1.0f64, f64::max);
    let tol = scale * 10f64.powf(-(digits.min(16) as f64) / 2.0);
    sv.iter().filter(|&&s| s > tol).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{closure_membership, QuadraticFormQ};
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

    fn cbrt2() -> NumberField {
        make_field(&PolyQ::from_ints(&[-2, 0, 0, 1]), RootBox::real(int(1), int(2))).unwrap()
    }

    fn spec(k: &NumberField, c: Vec<FieldElement>, b: &[i64]) -> SphereSpec {
        SphereSpec::new(k.clone(), c, qv(b), None, Mode::Theorem).unwrap()
    }

    #[test]
    fn theta_systems() {
        let k = sqrt2();
        let s = spec(&k, vec![k.generator(), k.one()], &[0, 0]);
        let (a, r) = build_theta_system(&s);
        assert_eq!(a.to_rows(), vec![qv(&[0, 1]), qv(&[1, 0])]);
        assert_eq!(r, qv(&[1, 0]));

        let s = spec(&k, vec![k.generator(), k.zero(), k.zero()], &[1, 1, 0]);
        let (a, r) = build_theta_system(&s);
        assert_eq!(a.to_rows(), vec![qv(&[-1, -1, 0]), qv(&[1, 0, 0])]);
        assert_eq!(r, qv(&[1, 0]));

        let q = NumberField::rationals();
        let s = SphereSpec::new(q.clone(), lift_vec(&q, &[rat(1, 2), int(3)]), qv(&[1, 1]), None, Mode::Theorem)
            .unwrap();
        let (a, r) = build_theta_system(&s);
        assert_eq!(a.to_rows(), vec![vec![rat(-1, 2), int(2)]]);
        assert_eq!(r, qv(&[1]));
    }

    #[test]
    fn two_point_closure() {
        let k = sqrt2();
        let s = spec(&k, vec![k.generator(), k.one()], &[0, 0]);
        let c = compute_closure(&s).unwrap();
        assert_eq!(c.kind, ClosureKind::SubSphere);
        assert_eq!(c.dim, 0);
        assert_eq!(c.center_exact.as_deref(), Some(&lift_vec(&k, &qv(&[0, 1]))[..]));
        assert_eq!(c.radius_sq_exact, Some(k.one()));
        assert!(closure_membership(&c, &qv(&[0, 2]), &s));
        assert!(closure_membership(&c, &qv(&[0, 0]), &s));
        assert!(!closure_membership(&c, &qv(&[0, 1]), &s));
    }

    #[test]
    fn circle_closure() {
        let k = sqrt2();
        let s = spec(&k, vec![k.generator(), k.zero(), k.zero()], &[1, 1, 0]);
        let c = compute_closure(&s).unwrap();
        assert_eq!(c.kind, ClosureKind::SubSphere);
        assert_eq!(c.dim, 1);
        assert_eq!(c.carrier.base(), &qv(&[1, 1, 0])[..]);
        assert_eq!(c.carrier.directions(), &[qv(&[0, 1, 0]), qv(&[0, 0, 1])]);
        assert_eq!(c.center_exact.as_deref(), Some(&lift_vec(&k, &qv(&[1, 0, 0]))[..]));
        assert_eq!(c.radius_sq_exact, Some(k.one()));
        assert!(closure_membership(&c, &[int(1), rat(3, 5), rat(4, 5)], &s));
    }

    #[test]
    fn cube_root_point() {
        let k = cbrt2();
        let s = spec(&k, vec![k.generator(), k.zero()], &[0, 0]);
        assert!(theta_frame(&s).is_none());
        let c = compute_closure(&s).unwrap();
        assert_eq!(c.kind, ClosureKind::Point);
        assert_eq!(c.carrier.base(), &qv(&[0, 0])[..]);
        assert!(closure_membership(&c, &qv(&[0, 0]), &s));
        assert!(!closure_membership(&c, &qv(&[1, 0]), &s));
    }

    #[test]
    fn rational_center_full_sphere() {
        let q = NumberField::rationals();
        let s = SphereSpec::new(q.clone(), lift_vec(&q, &[rat(1, 2), int(3)]), qv(&[1, 1]), None, Mode::Theorem)
            .unwrap();
        let c = compute_closure(&s).unwrap();
        assert_eq!(c.kind, ClosureKind::FullSphere);
        assert_eq!(c.dim, 1);
        assert!(closure_membership(&c, &qv(&[1, 1]), &s));
    }

    #[test]
    fn quadratic_form_closure() {
        let k = sqrt2();
        let g = MatrixQ::from_rows(&(), vec![qv(&[1, 0]), qv(&[0, 2])], 2);
        let f = QuadraticFormQ::new(g).unwrap();
        let s = SphereSpec::new(k.clone(), vec![k.generator(), k.one()], qv(&[0, 0]), Some(f), Mode::Theorem)
            .unwrap();
        let c = compute_closure(&s).unwrap();
        assert_eq!(c.kind, ClosureKind::SubSphere);
        assert_eq!(c.dim, 0);
        assert_eq!(c.carrier.directions(), &[qv(&[0, 1])]);
        assert_eq!(c.center_exact.as_deref(), Some(&lift_vec(&k, &qv(&[0, 1]))[..]));
        assert!(closure_membership(&c, &qv(&[0, 2]), &s));
        assert!(!closure_membership(&c, &qv(&[0, 1]), &s));
    }

    #[test]
    fn rhs_entries() {
        let k = sqrt2();
        let s = spec(&k, vec![k.generator(), k.one()], &[0, 0]);
        let r = rhs_constraints(&s, 32).unwrap();
        assert_eq!(r.len(), 2);
        let neg = &r[0];
        assert!(neg.center_re[0].re_decimal(8).starts_with("-1.41421356"));
        assert_eq!(neg.center_re[1].re_decimal(4), "1.0000");
        assert!(neg.normal_im.iter().all(|x| x.abs_le(&rat(1, 1_000_000_000))));

        let k = cbrt2();
        let s = spec(&k, vec![k.generator(), k.zero()], &[0, 0]);
        let r = rhs_constraints(&s, 32).unwrap();
        let ims: Vec<String> = r.iter().map(|e| e.normal_im[0].re_decimal(7)).collect();
        assert!(ims.contains(&"1.0911236".to_string()));
        assert!(ims.contains(&"-1.0911236".to_string()));
    }

    #[test]
    fn numeric_rank_matches() {
        let k = sqrt2();
        let s = spec(&k, vec![k.generator(), k.one()], &[0, 0]);
        assert_eq!(theta_numeric_rank(&s, 32).unwrap(), 2);
        let s = spec(&k, vec![k.generator(), k.zero(), k.zero()], &[1, 1, 0]);
        assert_eq!(theta_numeric_rank(&s, 32).unwrap(), 2);
        let s = spec(&k, vec![k.element(vec![int(0), int(1)]), k.element(vec![int(0), int(2)])], &[0, 0]);
        assert_eq!(build_theta_system(&s).0.rank(), 1);
        assert_eq!(theta_numeric_rank(&s, 32).unwrap(), 1);
    }

    #[test]
    fn generalized_mode_center() {
        let i = make_field(
            &PolyQ::from_ints(&[1, 0, 1]),
            RootBox::new((int(-1), int(1)), (rat(1, 2), int(2))),
        )
        .unwrap();
        // a = (1 + i, 1): Λ_{Im a} is x₁ = 0, S_{Re a} has center (1, 1)
        let a = vec![i.element(vec![int(1), int(1)]), i.one()];
        let s = SphereSpec::new(i.clone(), a, qv(&[0, 0]), None, Mode::Generalized).unwrap();
        let c = compute_closure(&s).unwrap();
        assert!(c.center_exact.is_none());
        assert_eq!(c.kind, ClosureKind::SubSphere);
        assert_eq!(c.carrier.directions(), &[qv(&[0, 1])]);
        assert_eq!(c.center_approx[0].re_decimal(6), "0.000000");
        assert_eq!(c.center_approx[1].re_decimal(6), "1.000000");
        assert_eq!(c.radius_sq_approx.re_decimal(6), "1.000000");
        assert!(closure_membership(&c, &qv(&[0, 2]), &s));
        assert!(!closure_membership(&c, &qv(&[0, 1]), &s));
    }
}
