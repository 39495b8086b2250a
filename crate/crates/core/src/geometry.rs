//! Quadratic forms, sphere problems, the inversion maps and the closure object.

use num_traits::{Signed, Zero};

use crate::ball::ComplexBall;
use crate::error::{Error, Result};
use crate::linalg::{bilinear_k, bilinear_q, lift_vec, vec_sub, AffineFrameQ, MatrixQ};
use crate::numberfield::{FieldElement, NumberField};
use crate::rational::Rational;

/// Positive definite rational quadratic form `q(x) = xᵀ G x`.
///
/// `G` doubles as the operator `L` with `B(x, y) = ⟨L x, y⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticFormQ {
    gram: MatrixQ,
    inverse: MatrixQ,
    identity: bool,
}

impl QuadraticFormQ {
    pub fn identity(n: usize) -> Self {
        let id = MatrixQ::identity(&(), n);
        QuadraticFormQ {
            gram: id.clone(),
            inverse: id,
            identity: true,
        }
    }

    /// Accepts symmetric definite Gram matrices; a negative definite one is
    /// replaced by its negation.
    pub fn new(gram: MatrixQ) -> Result<Self> {
        if gram.rows() != gram.cols() || gram.rows() == 0 {
            return Err(Error::InvalidForm("Gram matrix must be square and nonempty".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidForm("Gram matrix is not symmetric".into()));
        }
        let n = gram.rows();
        let minors: Vec<Rational> = (1..=n).map(|k| gram.leading_block(k).determinant()).collect();
        let gram = if minors.iter().all(Signed::is_positive) {
            gram
        } else if minors
            .iter()
            .enumerate()
            .all(|(k, m)| if k % 2 == 0 { m.is_negative() } else { m.is_positive() })
        {
            let rows = gram.to_rows().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
            MatrixQ::from_rows(&(), rows, n)
        } else {
            return Err(Error::InvalidForm("Gram matrix is not definite".into()));
        };
        let inverse = gram.inverse().expect("definite matrices are invertible");
        let identity = gram == MatrixQ::identity(&(), n);
        Ok(QuadraticFormQ {
            gram,
            inverse,
            identity,
        })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &MatrixQ {
        &self.gram
    }

    /// `L⁻¹`.
    pub fn inverse_gram(&self) -> &MatrixQ {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        bilinear_q(&self.gram, x, x)
    }

    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        bilinear_q(&self.gram, x, y)
    }

    pub fn eval_k(&self, x: &[FieldElement]) -> FieldElement {
        bilinear_k(&self.gram, x, x)
    }

    pub fn bilinear_k(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        bilinear_k(&self.gram, x, y)
    }

    /// `q` on ball vectors, without conjugation.
    pub fn eval_ball(&self, x: &[ComplexBall]) -> ComplexBall {
        self.bilinear_ball(x, x)
    }

    pub fn bilinear_ball(&self, x: &[ComplexBall], y: &[ComplexBall]) -> ComplexBall {
        let prec = x[0].prec();
        let mut acc = ComplexBall::zero(prec);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let g = self.gram.get(i, j);
                if !g.is_zero() {
                    acc = acc.add(&x[i].mul(&y[j]).mul_rational(g));
                }
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Real designated root, real center.
    Theorem,
    /// Any designated root; the sphere is `S_{Re a} ∩ Λ_{Im a}`.
    Generalized,
}

/// A sphere through the rational point `b` with center in `K^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereSpec {
    field: NumberField,
    center: Vec<FieldElement>,
    base_point: Vec<Rational>,
    form: QuadraticFormQ,
    mode: Mode,
}

impl SphereSpec {
    pub fn new(
        field: NumberField,
        center: Vec<FieldElement>,
        base_point: Vec<Rational>,
        form: Option<QuadraticFormQ>,
        mode: Mode,
    ) -> Result<Self> {
        let n = base_point.len();
        if n == 0 {
            return Err(Error::InvalidSpec("dimension must be at least 1".into()));
        }
        if center.len() != n {
            return Err(Error::InvalidSpec(format!(
                "center has {} coordinates, base point has {n}",
                center.len()
            )));
        }
        if center.iter().any(|c| c.field() != &field) {
            return Err(Error::InvalidSpec("center coordinates lie in a different field".into()));
        }
        let form = form.unwrap_or_else(|| QuadraticFormQ::identity(n));
        if form.dim() != n {
            return Err(Error::InvalidSpec(format!("form has dimension {}, expected {n}", form.dim())));
        }
        if mode == Mode::Theorem && !field.is_real_embedded() {
            return Err(Error::InvalidSpec(
                "theorem mode needs a real root box (im = [0, 0])".into(),
            ));
        }
        if center.iter().zip(&base_point).all(|(c, b)| c.is_rational().as_ref() == Some(b)) {
            return Err(Error::DegenerateSphere);
        }
        Ok(SphereSpec {
            field,
            center,
            base_point,
            form,
            mode,
        })
    }

    pub fn n(&self) -> usize {
        self.base_point.len()
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn center(&self) -> &[FieldElement] {
        &self.center
    }

    pub fn base_point(&self) -> &[Rational] {
        &self.base_point
    }

    pub fn form(&self) -> &QuadraticFormQ {
        &self.form
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn base_point_k(&self) -> Vec<FieldElement> {
        lift_vec(&self.field, &self.base_point)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    Point,
    SubSphere,
    FullSphere,
}

/// The closure `S ∩ H′`, or the single point `b`.
///
/// `carrier` is `H′` (for a point: `b` with no directions). The exact center
/// and radius² are present in theorem mode and for points; the approximate
/// ones are real balls at the precision used to build the object.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureObject {
    pub kind: ClosureKind,
    pub dim: usize,
    pub carrier: AffineFrameQ,
    pub center_exact: Option<Vec<FieldElement>>,
    pub center_approx: Vec<ComplexBall>,
    pub radius_sq_exact: Option<FieldElement>,
    pub radius_sq_approx: ComplexBall,
    pub digits: u32,
}

fn require_same_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::InvalidSpec(format!("vector lengths differ: {a} and {b}")));
    }
    Ok(())
}

/// The inversion centered at `b` attached to `form`:
/// `x ↦ b + 2 L⁻¹(x − b) / q(L⁻¹(x − b))`. With the identity form this is
/// `x ↦ b + 2 (x − b) / |x − b|²`.
pub fn invert_point(b: &[Rational], x: &[Rational], form: &QuadraticFormQ) -> Result<Vec<Rational>> {
    require_same_len(b.len(), x.len())?;
    let v = vec_sub(x, b);
    let u = if form.is_identity() {
        v
    } else {
        form.inverse_gram().mul_vec(&v)
    };
    scaled_offset(b, &u, form)
}

/// Inverse of [`invert_point`]: `x ↦ b + 2 L(x − b) / q(x − b)`.
pub fn invert_point_inverse(
    b: &[Rational],
    x: &[Rational],
    form: &QuadraticFormQ,
) -> Result<Vec<Rational>> {
    require_same_len(b.len(), x.len())?;
    let v = vec_sub(x, b);
    let qv = form.eval(&v);
    if qv.is_zero() {
        return Err(Error::PoleAtBase);
    }
    let lv = form.gram().mul_vec(&v);
    let s = Rational::from_integer(2.into()) / qv;
    Ok(b.iter().zip(&lv).map(|(bi, li)| bi + li * &s).collect())
}

fn scaled_offset(b: &[Rational], u: &[Rational], form: &QuadraticFormQ) -> Result<Vec<Rational>> {
    let qu = form.eval(u);
    if qu.is_zero() {
        return Err(Error::PoleAtBase);
    }
    let s = Rational::from_integer(2.into()) / qu;
    Ok(b.iter().zip(u).map(|(bi, ui)| bi + ui * &s).collect())
}

/// `⟨a − b, x − b⟩ − 1`.
pub fn pi_residual(a: &[FieldElement], b: &[Rational], x: &[Rational]) -> FieldElement {
    let k = a[0].field();
    let amb = vec_sub(a, &lift_vec(k, b));
    let xmb = lift_vec(k, &vec_sub(x, b));
    crate::linalg::dot(k, &amb, &xmb).sub(&k.one())
}

/// `q(x − a) − q(b − a)`, computed as `q(x) − q(b) − 2 B(x − b, a)` so that
/// only rational scalings of `a` are needed.
pub fn sphere_residual(
    a: &[FieldElement],
    b: &[Rational],
    x: &[Rational],
    form: &QuadraticFormQ,
) -> FieldElement {
    let k = a[0].field();
    let g_xb = form.gram().mul_vec(&vec_sub(x, b));
    let mut acc = k.from_rational(form.eval(x) - form.eval(b));
    for (c, ai) in g_xb.iter().zip(a) {
        if !c.is_zero() {
            acc = acc.sub(&ai.scale(&(c + c)));
        }
    }
    acc
}

/// `B(a, x − b)`.
pub fn hyperplane_residual(
    a: &[FieldElement],
    b: &[Rational],
    x: &[Rational],
    form: &QuadraticFormQ,
) -> FieldElement {
    let k = a[0].field();
    form.bilinear_k(a, &lift_vec(k, &vec_sub(x, b)))
}

/// Exact membership of a rational point in the closure.
pub fn closure_membership(c: &ClosureObject, x: &[Rational], spec: &SphereSpec) -> bool {
    if x.len() != spec.n() {
        return false;
    }
    match c.kind {
        ClosureKind::Point => x == spec.base_point(),
        _ => {
            c.carrier.contains(&(), x)
                && sphere_residual(spec.center(), spec.base_point(), x, spec.form()).is_zero()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{make_field, RootBox};
    use crate::poly::PolyQ;
    use crate::rational::{int, rat};

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn sqrt2() -> NumberField {
        make_field(&PolyQ::from_ints(&[-2, 0, 1]), RootBox::real(int(1), int(2))).unwrap()
    }

    fn diag(d: &[i64]) -> MatrixQ {
        let n = d.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(d[i]) } else { int(0) }).collect())
            .collect();
        MatrixQ::from_rows(&(), rows, n)
    }

    #[test]
    fn inversion_examples() {
        let id = QuadraticFormQ::identity(2);
        let b = qv(&[0, 0]);
        assert_eq!(invert_point(&b, &qv(&[0, 1]), &id).unwrap(), qv(&[0, 2]));
        assert_eq!(invert_point(&b, &qv(&[1, 1]), &id).unwrap(), qv(&[1, 1]));
        assert_eq!(invert_point(&b, &qv(&[0, 2]), &id).unwrap(), qv(&[0, 1]));
        assert_eq!(invert_point(&b, &b, &id).unwrap_err(), Error::PoleAtBase);
        assert_eq!(invert_point_inverse(&b, &b, &id).unwrap_err(), Error::PoleAtBase);
    }

    #[test]
    fn form_inversion_pair() {
        let f = QuadraticFormQ::new(diag(&[1, 2])).unwrap();
        let b = vec![rat(1, 3), int(-2)];
        let x = vec![rat(5, 7), int(4)];
        let y = invert_point(&b, &x, &f).unwrap();
        assert_eq!(invert_point_inverse(&b, &y, &f).unwrap(), x);
        assert_eq!(invert_point(&b, &invert_point_inverse(&b, &x, &f).unwrap(), &f).unwrap(), x);
    }

    #[test]
    fn form_validation() {
        let neg = QuadraticFormQ::new(diag(&[-1, -3])).unwrap();
        assert_eq!(neg.gram(), &diag(&[1, 3]));
        assert!(matches!(QuadraticFormQ::new(diag(&[1, -1])), Err(Error::InvalidForm(_))));
        assert!(matches!(QuadraticFormQ::new(diag(&[1, 0])), Err(Error::InvalidForm(_))));
        let asym = MatrixQ::from_rows(&(), vec![qv(&[1, 1]), qv(&[0, 1])], 2);
        assert!(matches!(QuadraticFormQ::new(asym), Err(Error::InvalidForm(_))));
        assert!(QuadraticFormQ::new(diag(&[1, 1])).unwrap().is_identity());
    }

    #[test]
    fn residual_examples() {
        let k = sqrt2();
        let gamma = vec![k.generator(), k.one()];
        let id = QuadraticFormQ::identity(2);
        let b = qv(&[0, 0]);
        assert!(sphere_residual(&gamma, &b, &qv(&[0, 2]), &id).is_zero());
        assert!(!sphere_residual(&gamma, &b, &qv(&[0, 1]), &id).is_zero());

        let b3 = vec![rat(1, 2), int(3)];
        let a = lift_vec(&k, &[rat(3, 2), int(3)]);
        assert!(pi_residual(&a, &b3, &[rat(3, 2), int(3)]).is_zero());
        let zero = lift_vec(&k, &qv(&[0, 0]));
        assert!(hyperplane_residual(&zero, &b3, &qv(&[7, -5]), &id).is_zero());
    }

    #[test]
    fn spec_validation() {
        let k = sqrt2();
        let e = SphereSpec::new(k.clone(), lift_vec(&k, &qv(&[1, 1])), qv(&[1, 1]), None, Mode::Theorem);
        assert_eq!(e.unwrap_err(), Error::DegenerateSphere);
        let e = SphereSpec::new(k.clone(), vec![k.one()], qv(&[1, 1]), None, Mode::Theorem);
        assert!(matches!(e, Err(Error::InvalidSpec(_))));
        let i = make_field(
            &PolyQ::from_ints(&[1, 0, 1]),
            RootBox::new((int(-1), int(1)), (rat(1, 2), int(2))),
        )
        .unwrap();
        let c = vec![i.generator(), i.zero()];
        let e = SphereSpec::new(i.clone(), c.clone(), qv(&[0, 0]), None, Mode::Theorem);
        assert!(matches!(e, Err(Error::InvalidSpec(_))));
        assert!(SphereSpec::new(i, c, qv(&[0, 0]), None, Mode::Generalized).is_ok());
    }
}
