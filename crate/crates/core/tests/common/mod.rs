//! Shared fixtures and the randomized suites that back the acceptance gate.

#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sphere_closure::ball::ComplexBall;
use sphere_closure::closure::{build_theta_system, theta_numeric_rank_with};
use sphere_closure::factor::{check_irreducible, Irreducibility};
use sphere_closure::geometry::{
    hyperplane_residual, invert_point, invert_point_inverse, pi_residual, sphere_residual, Mode,
    QuadraticFormQ, SphereSpec,
};
use sphere_closure::linalg::{
    defining_pair_from_rref, dot, is_rational_over_q, lift_vec, rational_points, rref, solve_affine,
    AffineFrame, Matrix, MatrixQ,
};
use sphere_closure::numberfield::{embeddings, eval_element, isolate_roots, EmbeddingSet};
use sphere_closure::{make_field, FieldElement, NumberField, PolyQ, Rational, RootBox};

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn sqrt2() -> NumberField {
    make_field(&PolyQ::from_ints(&[-2, 0, 1]), RootBox::real(int(1), int(2))).unwrap()
}

pub fn cbrt2() -> NumberField {
    make_field(&PolyQ::from_ints(&[-2, 0, 0, 1]), RootBox::real(int(1), int(2))).unwrap()
}

pub fn problem_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

/// Q(√2) example with center (√2, 1) through the origin.
pub fn example_a() -> SphereSpec {
    let k = sqrt2();
    SphereSpec::new(k.clone(), vec![k.generator(), k.one()], qv(&[0, 0]), None, Mode::Theorem).unwrap()
}

/// Q(√2) example with center (√2, 0, 0) through (1, 1, 0).
pub fn example_b() -> SphereSpec {
    let k = sqrt2();
    SphereSpec::new(
        k.clone(),
        vec![k.generator(), k.zero(), k.zero()],
        qv(&[1, 1, 0]),
        None,
        Mode::Theorem,
    )
    .unwrap()
}

/// Q(2^(1/3)) example with center (2^(1/3), 0) through the origin.
pub fn example_c() -> SphereSpec {
    let k = cbrt2();
    SphereSpec::new(k.clone(), vec![k.generator(), k.zero()], qv(&[0, 0]), None, Mode::Theorem).unwrap()
}

// ---------- strategies ----------

pub fn any_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=25).prop_map(|(n, d)| rat(n, d))
}

pub fn rational_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(any_rational(), n)
}

/// `AᵀA + I` for a small random integer `A`: always positive definite.
pub fn definite_form(n: usize) -> impl Strategy<Value = QuadraticFormQ> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |a| {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s: i64 = (0..n).map(|k| a[k * n + i] * a[k * n + j]).sum();
                        int(s + i64::from(i == j))
                    })
                    .collect()
            })
            .collect();
        QuadraticFormQ::new(MatrixQ::from_rows(&(), rows, n)).unwrap()
    })
}

pub fn form_or_identity(n: usize) -> impl Strategy<Value = QuadraticFormQ> {
    prop_oneof![Just(QuadraticFormQ::identity(n)), definite_form(n)]
}

// ---------- field pools ----------

pub struct PoolField {
    pub field: NumberField,
    pub mode: Mode,
    pub emb: EmbeddingSet,
}

fn designate(root: &ComplexBall) -> (RootBox, Mode) {
    let w = rat(1, 1_000_000_000_000);
    let re = (root.mid_re() - &w, root.mid_re() + &w);
    if root.is_real() {
        (RootBox::real(re.0, re.1), Mode::Theorem)
    } else {
        (RootBox::new(re, (root.mid_im() - &w, root.mid_im() + &w)), Mode::Generalized)
    }
}

fn random_field(rng: &mut ChaCha8Rng, degrees: &[usize]) -> PoolField {
    loop {
        let d = degrees[rng.random_range(0..degrees.len())];
        let mut c: Vec<i64> = (0..d).map(|_| rng.random_range(-6..=6)).collect();
        if c[0] == 0 {
            continue;
        }
        c.push(1);
        let poly = PolyQ::from_ints(&c);
        if d > 1 && check_irreducible(&poly).unwrap() != Irreducibility::Irreducible {
            continue;
        }
        let roots = isolate_roots(&poly, 20).unwrap();
        let pick = rng.random_range(0..roots.len());
        let (bx, mode) = designate(&roots[pick]);
        let field = make_field(&poly, bx).unwrap();
        let emb = embeddings(&field, 32).unwrap();
        return PoolField { field, mode, emb };
    }
}

/// Seeded random fields of degree 1 to 5 with certified embeddings at 32 digits.
pub fn field_pool() -> &'static [PoolField] {
    static POOL: OnceLock<Vec<PoolField>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..40).map(|_| random_field(&mut rng, &[1, 2, 3, 4, 5])).collect()
    })
}

/// Seeded real quadratic fields.
pub fn quadratic_pool() -> &'static [PoolField] {
    static POOL: OnceLock<Vec<PoolField>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9ad);
        (0..16).map(|_| random_field(&mut rng, &[2])).collect()
    })
}

pub fn element_strategy(d: usize) -> impl Strategy<Value = Vec<Rational>> {
    rational_vec(d)
}

/// Galois conjugate in a quadratic field: `α ↦ −c₁ − α` for `t² + c₁t + c₀`.
pub fn conjugate(e: &FieldElement) -> FieldElement {
    let k = e.field();
    let c1 = k.min_poly().coeff(1);
    let c = e.coeffs();
    k.element(vec![&c[0] - &c[1] * &c1, -c[1].clone()])
}

// ---------- randomized suites ----------

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

/// The inversion at `b` is an involution on rational points.
pub fn suite_inversion_involution(cases: u32) -> Result<(), String> {
    let strat = (1usize..=4).prop_flat_map(|n| (rational_vec(n), rational_vec(n)));
    runner(cases)
        .run(&strat, |(b, x)| {
            if x == b {
                return Ok(());
            }
            let id = QuadraticFormQ::identity(b.len());
            let y = invert_point(&b, &x, &id).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(y != b, || "image hit the base point".into())?;
            let z = invert_point(&b, &y, &id).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(z == x, || format!("{x:?} -> {y:?} -> {z:?}"))
        })
        .map_err(|e| e.to_string())
}

/// Points of `Π_a` land on `S_a`, points of `Λ_a` on the form's `Λ_a`.
pub fn suite_image_law(cases: u32) -> Result<(), String> {
    let strat = (2usize..=4).prop_flat_map(|n| {
        (rational_vec(n), rational_vec(n), rational_vec(n), form_or_identity(n))
    });
    runner(cases)
        .run(&strat, |(a, b, u, form)| {
            let k = NumberField::rationals();
            let ak = lift_vec(&k, &a);
            let amb: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            let s = dot(&(), &amb, &u);
            if !s.is_zero() {
                // x = b + u / ⟨a − b, u⟩ lies on Π_a
                let x: Vec<Rational> = b.iter().zip(&u).map(|(bi, ui)| bi + ui / &s).collect();
                check(pi_residual(&ak, &b, &x).is_zero(), || "constructed point is off Π".into())?;
                let y = invert_point(&b, &x, &form).map_err(|e| TestCaseError::fail(e.to_string()))?;
                check(sphere_residual(&ak, &b, &y, &form).is_zero(), || {
                    format!("Π point {x:?} maps off the sphere: {y:?}")
                })?;
            }
            let aa = dot(&(), &a, &a);
            if !aa.is_zero() {
                // x = b + u − (⟨a, u⟩/⟨a, a⟩) a lies on the Euclidean Λ_a
                let t = dot(&(), &a, &u) / &aa;
                let x: Vec<Rational> =
                    b.iter().zip(&u).zip(&a).map(|((bi, ui), ai)| bi + ui - &t * ai).collect();
                if x != b {
                    let id = QuadraticFormQ::identity(a.len());
                    check(hyperplane_residual(&ak, &b, &x, &id).is_zero(), || "off Λ".into())?;
                    let y = invert_point(&b, &x, &form).map_err(|e| TestCaseError::fail(e.to_string()))?;
                    check(hyperplane_residual(&ak, &b, &y, &form).is_zero(), || {
                        format!("Λ point {x:?} maps off Λ: {y:?}")
                    })?;
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `⟨σx, σy⟩` computed with balls overlaps `σ(⟨x, y⟩)` for every embedding,
/// and both enclosures are tight at 32 digits.
pub fn suite_inner_product_equivariance(cases: u32) -> Result<(), String> {
    let pool = field_pool();
    let strat = (0..pool.len(), 1usize..=4).prop_flat_map(move |(f, n)| {
        let d = pool[f].field.degree();
        (
            Just(f),
            prop::collection::vec(element_strategy(d), n),
            prop::collection::vec(element_strategy(d), n),
        )
    });
    let tight = rat(1, 10).pow(25);
    runner(cases)
        .run(&strat, |(f, xs, ys)| {
            let pf = &pool[f];
            let k = &pf.field;
            let x: Vec<FieldElement> = xs.into_iter().map(|c| k.element(c)).collect();
            let y: Vec<FieldElement> = ys.into_iter().map(|c| k.element(c)).collect();
            let exact = dot(k, &x, &y);
            for j in 0..pf.emb.len() {
                let sx = pf.emb.eval_vec(&x, j);
                let sy = pf.emb.eval_vec(&y, j);
                let mut acc = ComplexBall::zero(pf.emb.prec());
                for (p, q) in sx.iter().zip(&sy) {
                    acc = acc.add(&p.mul(q));
                }
                let direct = eval_element(&exact, &pf.emb, j);
                check(acc.overlaps(&direct), || format!("embedding {j}: {acc:?} vs {direct:?}"))?;
                check(acc.rad() <= tight && direct.rad() <= tight, || "loose enclosure".into())?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Rank over Q of the expanded system equals the numeric rank of the
/// matrix of embedded rows `σ_j(γ − b)`.
pub fn suite_rank_agreement(cases: u32) -> Result<(), String> {
    let pool = field_pool();
    let strat = (0..pool.len(), 1usize..=4, 1usize..=5).prop_flat_map(move |(f, n, s)| {
        let d = pool[f].field.degree();
        let s = s.min(d);
        (
            Just(f),
            prop::collection::vec(element_strategy(d), s),
            prop::collection::vec(prop::collection::vec(-4i64..=4, s), n),
            rational_vec(n),
        )
    });
    runner(cases)
        .run(&strat, |(f, gens, mix, b)| {
            let pf = &pool[f];
            let k = &pf.field;
            // γ − b is a rational combination of s generators, so the rank is at most s
            let gens: Vec<FieldElement> = gens.into_iter().map(|c| k.element(c)).collect();
            let diff: Vec<FieldElement> = mix
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&gens)
                        .fold(k.zero(), |acc, (&m, g)| acc.add(&g.scale(&int(m))))
                })
                .collect();
            if diff.iter().all(FieldElement::is_zero) {
                return Ok(());
            }
            let center: Vec<FieldElement> =
                diff.iter().zip(&b).map(|(d, bi)| d.add(&k.from_rational(bi.clone()))).collect();
            let spec = SphereSpec::new(k.clone(), center, b, None, pf.mode)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            let q_rank = build_theta_system(&spec).0.rank();
            let c_rank = theta_numeric_rank_with(&spec, &pf.emb);
            check(q_rank == c_rank, || format!("rank over Q {q_rank}, numeric {c_rank}"))
        })
        .map_err(|e| e.to_string())
}

/// A rational subspace keeps its dimension when its rational points are
/// taken; a defining pair with an irrational entry loses dimension.
pub fn suite_dimension_criterion(cases: u32) -> Result<(), String> {
    let pool = quadratic_pool();
    let strat = (0..pool.len(), 1usize..=4)
        .prop_flat_map(|(f, n)| (Just(f), Just(n), 0..=n, rational_vec(n), prop::collection::vec(rational_vec(n), n)))
        .prop_flat_map(|(f, n, m, base, dirs)| {
            (Just(f), Just(n), Just(m), Just(base), Just(dirs), rational_vec(4), any_rational())
        });
    runner(cases)
        .run(&strat, |(f, n, m, base, dirs, coeffs, shift)| {
            let k = &pool[f].field;
            // rational subspace of dimension m given by a frame
            let dirs = dirs[..m].to_vec();
            if let Ok(frame) = AffineFrame::new(&(), base.clone(), dirs.clone()) {
                let normals = if m == 0 {
                    MatrixQ::identity(&(), n).to_rows()
                } else {
                    let d = MatrixQ::from_rows(&(), dirs, n);
                    solve_affine(&d, &vec![int(0); m]).unwrap().directions().to_vec()
                };
                let rhs: Vec<Rational> = normals.iter().map(|w| dot(&(), w, &base)).collect();
                let rows: Vec<Vec<FieldElement>> = normals.iter().map(|w| lift_vec(k, w)).collect();
                let a = Matrix::from_rows(k, rows, n);
                let rhs_k = lift_vec(k, &rhs);
                let pts = rational_points(&a, &rhs_k).ok_or_else(|| TestCaseError::fail("no rational points"))?;
                check(pts.directions().len() == m, || format!("dimension {} != {m}", pts.directions().len()))?;
                check(frame.contains(&(), pts.base()), || "base not on subspace".into())?;
                let pair = defining_pair_from_rref(&rref(&a, &rhs_k)).unwrap();
                check(is_rational_over_q(&pair), || "rational subspace read as irrational".into())?;
            }
            // x₁ = c·x₂ + e over K with c irrational
            let c = k.element(vec![coeffs[0].clone(), coeffs[1].clone()]);
            if c.is_rational().is_some() {
                return Ok(());
            }
            let e = k.element(vec![coeffs[2].clone(), coeffs[3].clone()]);
            let a = Matrix::from_rows(k, vec![vec![k.one(), c.neg()]], 2);
            let rhs_k = vec![e.add(&k.from_rational(shift))];
            let pair = defining_pair_from_rref(&rref(&a, &rhs_k)).unwrap();
            check(!is_rational_over_q(&pair), || "irrational pair read as rational".into())?;
            check(pair.dim() == 1, || "pair dimension".into())?;
            let dim_q = rational_points(&a, &rhs_k).map_or(-1, |p| p.directions().len() as i64);
            check(dim_q < 1, || format!("rational points of dimension {dim_q}"))
        })
        .map_err(|e| e.to_string())
}

/// Over a real quadratic field, conjugating a solution of the system for
/// all conjugates of `γ` gives another solution.
pub fn suite_conjugation_invariance(cases: u32) -> Result<(), String> {
    let pool = quadratic_pool();
    let strat = (0..pool.len(), 2usize..=4).prop_flat_map(|(f, n)| {
        (
            Just(f),
            prop::collection::vec(element_strategy(2), n),
            rational_vec(n),
            prop::collection::vec(element_strategy(2), n),
        )
    });
    runner(cases)
        .run(&strat, |(f, g, b, t)| {
            let k = &pool[f].field;
            let gamma: Vec<FieldElement> = g.into_iter().map(|c| k.element(c)).collect();
            let bk = lift_vec(k, &b);
            let row: Vec<FieldElement> = gamma.iter().zip(&bk).map(|(x, y)| x.sub(y)).collect();
            let conj_row: Vec<FieldElement> =
                gamma.iter().map(conjugate).zip(&bk).map(|(x, y)| x.sub(y)).collect();
            let n = row.len();
            let a = Matrix::from_rows(k, vec![row, conj_row], n);
            let ones = vec![k.one(), k.one()];
            let Some(frame) = solve_affine(&a, &ones) else {
                return Ok(());
            };
            let params: Vec<FieldElement> =
                t.into_iter().take(frame.directions().len()).map(|c| k.element(c)).collect();
            let x = frame.point(&params);
            check(a.mul_vec(&x) == ones, || "frame point is not a solution".into())?;
            let tx: Vec<FieldElement> = x.iter().map(conjugate).collect();
            check(a.mul_vec(&tx) == ones, || format!("conjugate of {x:?} is not a solution"))
        })
        .map_err(|e| e.to_string())
}

/// The form-attached inversion and its stated inverse undo each other.
pub fn suite_form_inverse_pair(cases: u32, form: &QuadraticFormQ, b: &[Rational]) -> Result<(), String> {
    let n = b.len();
    runner(cases)
        .run(&rational_vec(n), |x| {
            if x == b {
                return Ok(());
            }
            let fail = |e: sphere_closure::Error| TestCaseError::fail(e.to_string());
            let y = invert_point(b, &x, form).map_err(fail)?;
            check(invert_point_inverse(b, &y, form).map_err(fail)? == x, || "inverse after forward".into())?;
            let z = invert_point_inverse(b, &x, form).map_err(fail)?;
            check(invert_point(b, &z, form).map_err(fail)? == x, || "forward after inverse".into())
        })
        .map_err(|e| e.to_string())
}
