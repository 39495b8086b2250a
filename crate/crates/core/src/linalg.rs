//! Exact linear algebra over Q and over a number field.
//!
//! Everything is generic over [`Scalar`], implemented by [`Rational`] and
//! [`FieldElement`], so that the same defining pair can be read over either
//! field. Row reduction always takes the leftmost available pivot and the
//! topmost row holding it.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::rational::Rational;

/// Exact field scalars. `Ctx` carries whatever is needed to build constants
/// (nothing for Q, the field for `Q(α)`).
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    type Ctx: Clone + PartialEq + fmt::Debug;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// The value as a rational, if it is one.
    fn as_rational(&self) -> Option<Rational>;
}

impl Scalar for Rational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Zero::zero()
    }
    fn one(_: &()) -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Scalar for FieldElement {
    type Ctx = NumberField;

    fn zero(k: &NumberField) -> Self {
        k.zero()
    }
    fn one(k: &NumberField) -> Self {
        k.one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        FieldElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FieldElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FieldElement::mul(self, o)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        FieldElement::inv(self).ok()
    }
    fn as_rational(&self) -> Option<Rational> {
        self.is_rational()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T: Scalar> {
    ctx: T::Ctx,
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type MatrixQ = Matrix<Rational>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(ctx: &T::Ctx, rows: usize, cols: usize) -> Self {
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            entries: vec![T::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &T::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, T::one(ctx));
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(ctx: &T::Ctx, rows: Vec<Vec<T>>, cols: usize) -> Self {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            entries.extend(row);
        }
        Matrix {
            ctx: ctx.clone(),
            rows: r,
            cols,
            entries,
        }
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(&self.ctx, self.row(i), v))
            .collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(&self.ctx, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = T::zero(&self.ctx);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rank(&self) -> usize {
        let rhs = vec![T::zero(&self.ctx); self.rows];
        rref(self, &rhs).rank
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one(&self.ctx);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return T::zero(&self.ctx);
            };
            if p != c {
                m.swap_rows(p, c);
                det = det.neg();
            }
            let piv = m.get(c, c).clone();
            det = det.mul(&piv);
            let inv = piv.inv().unwrap();
            for r in c + 1..n {
                let f = m.get(r, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = m.get(r, k).sub(&f.mul(m.get(c, k)));
                    m.set(r, k, v);
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(&self.ctx, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, T::one(&self.ctx));
        }
        let r = rref(&aug, &vec![T::zero(&self.ctx); n]);
        if r.pivots.iter().take_while(|&&p| p < n).count() < n {
            return None;
        }
        let rows = (0..n).map(|i| r.matrix.row(i)[n..].to_vec()).collect();
        Some(Self::from_rows(&self.ctx, rows, n))
    }

    /// The leading `k × k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        let rows = (0..k).map(|i| self.row(i)[..k].to_vec()).collect();
        Self::from_rows(&self.ctx, rows, k)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl MatrixQ {
    /// Product with a vector over a number field.
    pub fn mul_vec_k(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        let k = v[0].field();
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(k.zero(), |acc, (a, x)| {
                    if Zero::is_zero(a) {
                        acc
                    } else {
                        acc.add(&x.scale(a))
                    }
                })
            })
            .collect()
    }
}

pub fn dot<T: Scalar>(ctx: &T::Ctx, a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(ctx), |acc, (x, y)| acc.add(&x.mul(y)))
}

pub fn vec_sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_scale<T: Scalar>(a: &[T], s: &T) -> Vec<T> {
    a.iter().map(|x| x.mul(s)).collect()
}

/// Reduced row echelon form of the augmented system `A x = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<T: Scalar> {
    /// Reduced coefficient matrix (same shape as `A`).
    pub matrix: Matrix<T>,
    /// Right-hand side after the same row operations.
    pub rhs: Vec<T>,
    /// Pivot column of each of the first `rank` rows, increasing.
    pub pivots: Vec<usize>,
    pub rank: usize,
    /// No row reads `0 = nonzero`.
    pub consistent: bool,
}

impl<T: Scalar> Rref<T> {
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.matrix.cols)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}

pub fn rref<T: Scalar>(a: &Matrix<T>, rhs: &[T]) -> Rref<T> {
    assert_eq!(rhs.len(), a.rows, "right-hand side length must match rows");
    let mut m = a.clone();
    let mut b = rhs.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(p, row);
        b.swap(p, row);
        let inv = m.get(row, col).inv().unwrap();
        for k in col..m.cols {
            let v = m.get(row, k).mul(&inv);
            m.set(row, k, v);
        }
        b[row] = b[row].mul(&inv);
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let f = m.get(r, col).clone();
            if f.is_zero() {
                continue;
            }
            for k in col..m.cols {
                let v = m.get(r, k).sub(&f.mul(m.get(row, k)));
                m.set(r, k, v);
            }
            b[r] = b[r].sub(&f.mul(&b[row]));
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    let consistent = b[rank..].iter().all(Scalar::is_zero);
    Rref {
        matrix: m,
        rhs: b,
        pivots,
        rank,
        consistent,
    }
}

/// Affine subspace `base + span(directions)` with independent directions.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFrame<T: Scalar> {
    base: Vec<T>,
    directions: Vec<Vec<T>>,
    /// Rows `w` with `w · (x − base) = 0` cutting out the frame.
    normals: Vec<Vec<T>>,
}

pub type AffineFrameQ = AffineFrame<Rational>;

impl<T: Scalar> AffineFrame<T> {
    /// Fails with `InvalidSpec` if the directions are dependent or have the
    /// wrong length.
    pub fn new(ctx: &T::Ctx, base: Vec<T>, directions: Vec<Vec<T>>) -> Result<Self> {
        let n = base.len();
        if directions.iter().any(|d| d.len() != n) {
            return Err(Error::InvalidSpec("frame direction has the wrong length".into()));
        }
        if !directions.is_empty() {
            let m = Matrix::from_rows(ctx, directions.clone(), n);
            if m.rank() != directions.len() {
                return Err(Error::InvalidSpec("frame directions are dependent".into()));
            }
        }
        Ok(Self::from_parts(ctx, base, directions))
    }

    fn from_parts(ctx: &T::Ctx, base: Vec<T>, directions: Vec<Vec<T>>) -> Self {
        let n = base.len();
        let normals = if directions.is_empty() {
            Matrix::<T>::identity(ctx, n).to_rows()
        } else {
            let m = Matrix::from_rows(ctx, directions.clone(), n);
            let zeros = vec![T::zero(ctx); directions.len()];
            kernel_basis(&rref(&m, &zeros))
        };
        AffineFrame {
            base,
            directions,
            normals,
        }
    }

    pub fn base(&self) -> &[T] {
        &self.base
    }

    pub fn directions(&self) -> &[Vec<T>] {
        &self.directions
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    /// `base + Σ t_i d_i`.
    pub fn point(&self, t: &[T]) -> Vec<T> {
        assert_eq!(t.len(), self.directions.len());
        let mut x = self.base.clone();
        for (ti, d) in t.iter().zip(&self.directions) {
            x = vec_add(&x, &vec_scale(d, ti));
        }
        x
    }

    /// Coordinates of `x` in the frame, if `x` lies on it.
    pub fn coordinates(&self, ctx: &T::Ctx, x: &[T]) -> Option<Vec<T>> {
        let n = self.base.len();
        let m = self.directions.len();
        let target = vec_sub(x, &self.base);
        if m == 0 {
            return target.iter().all(Scalar::is_zero).then(Vec::new);
        }
        let a = Matrix::from_rows(ctx, self.directions.clone(), n).transpose();
        let r = rref(&a, &target);
        if !r.consistent {
            return None;
        }
        Some(r.rhs[..m].to_vec())
    }

    pub fn contains(&self, ctx: &T::Ctx, x: &[T]) -> bool {
        let diff = vec_sub(x, &self.base);
        self.normals.iter().all(|w| dot(ctx, w, &diff).is_zero())
    }
}

/// Number of directions of a frame.
pub fn frame_span_dim<T: Scalar>(frame: &AffineFrame<T>) -> usize {
    frame.directions.len()
}

/// Solution set of `A x = rhs` as a frame: particular solution with free
/// variables set to zero, plus one kernel vector per free column with a 1
/// in that column. `None` when inconsistent.
pub fn solve_affine<T: Scalar>(a: &Matrix<T>, rhs: &[T]) -> Option<AffineFrame<T>> {
    frame_from_rref(&rref(a, rhs))
}

pub fn frame_from_rref<T: Scalar>(r: &Rref<T>) -> Option<AffineFrame<T>> {
    if !r.consistent {
        return None;
    }
    let ctx = r.matrix.ctx();
    let n = r.matrix.cols;
    let mut base = vec![T::zero(ctx); n];
    for (i, &p) in r.pivots.iter().enumerate() {
        base[p] = r.rhs[i].clone();
    }
    Some(AffineFrame::from_parts(ctx, base, kernel_basis(r)))
}

/// Kernel basis of the reduced matrix, one vector per free column.
fn kernel_basis<T: Scalar>(r: &Rref<T>) -> Vec<Vec<T>> {
    let ctx = r.matrix.ctx();
    let n = r.matrix.cols;
    r.free_columns()
        .into_iter()
        .map(|f| {
            let mut d = vec![T::zero(ctx); n];
            d[f] = T::one(ctx);
            for (i, &p) in r.pivots.iter().enumerate() {
                d[p] = r.matrix.get(i, f).neg();
            }
            d
        })
        .collect()
}

/// Graph presentation `{x_i}_{i∈M^c} = f({x_i}_{i∈M})` of an affine subspace.
/// Indices are 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct DefiningPair<T: Scalar> {
    n: usize,
    /// `M`: the free coordinates, increasing.
    free: Vec<usize>,
    /// `M^c`: the dependent (pivot) coordinates, increasing.
    dependent: Vec<usize>,
    /// `|M^c| × |M|` linear part of `f`.
    linear: Matrix<T>,
    /// Constant part of `f`, indexed like `dependent`.
    offset: Vec<T>,
}

impl<T: Scalar> DefiningPair<T> {
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn free_set(&self) -> &[usize] {
        &self.free
    }

    pub fn dependent_set(&self) -> &[usize] {
        &self.dependent
    }

    pub fn linear(&self) -> &Matrix<T> {
        &self.linear
    }

    pub fn offset(&self) -> &[T] {
        &self.offset
    }

    /// Dimension of the subspace: `|M|`.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// `f(y)` for `y` indexed like the free set.
    pub fn apply(&self, y: &[T]) -> Vec<T> {
        vec_add(&self.linear.mul_vec(y), &self.offset)
    }

    /// The point of the subspace whose free coordinates are `y`.
    pub fn point(&self, y: &[T]) -> Vec<T> {
        let ctx = self.linear.ctx();
        let mut x = vec![T::zero(ctx); self.n];
        for (k, &i) in self.free.iter().enumerate() {
            x[i] = y[k].clone();
        }
        for (k, v) in self.apply(y).into_iter().enumerate() {
            x[self.dependent[k]] = v;
        }
        x
    }

    pub fn contains(&self, x: &[T]) -> bool {
        let y: Vec<T> = self.free.iter().map(|&i| x[i].clone()).collect();
        let fx = self.apply(&y);
        self.dependent
            .iter()
            .zip(&fx)
            .all(|(&i, v)| &x[i] == v)
    }

    /// Equivalent defining system `x_{M^c} − L·x_M = offset`.
    pub fn to_system(&self) -> (Matrix<T>, Vec<T>) {
        let ctx = self.linear.ctx();
        let mut a = Matrix::zeros(ctx, self.dependent.len(), self.n);
        for (r, &p) in self.dependent.iter().enumerate() {
            a.set(r, p, T::one(ctx));
            for (c, &f) in self.free.iter().enumerate() {
                a.set(r, f, self.linear.get(r, c).neg());
            }
        }
        (a, self.offset.clone())
    }
}

/// Reads the reduced system as a defining pair: `M` = free columns,
/// `M^c` = pivot columns.
pub fn defining_pair_from_rref<T: Scalar>(r: &Rref<T>) -> Result<DefiningPair<T>> {
    if !r.consistent {
        return Err(Error::InconsistentSystem);
    }
    let ctx = r.matrix.ctx();
    let free = r.free_columns();
    let dependent = r.pivots.clone();
    let mut linear = Matrix::zeros(ctx, dependent.len(), free.len());
    for i in 0..dependent.len() {
        for (c, &f) in free.iter().enumerate() {
            linear.set(i, c, r.matrix.get(i, f).neg());
        }
    }
    Ok(DefiningPair {
        n: r.matrix.cols,
        free,
        dependent,
        linear,
        offset: r.rhs[..r.rank].to_vec(),
    })
}

/// True iff every entry of `f` is rational, i.e. `f(Q^M) ⊂ Q^{M^c}`.
pub fn is_rational_over_q<T: Scalar>(p: &DefiningPair<T>) -> bool {
    p.offset.iter().all(|v| v.as_rational().is_some())
        && p.linear.entries.iter().all(|v| v.as_rational().is_some())
}

/// Rewrites a system with number-field coefficients as the rational system
/// satisfied by its rational solutions: each equation splits into one
/// equation per power-basis coordinate (`α^0` first).
pub fn expand_over_q(a: &Matrix<FieldElement>, rhs: &[FieldElement]) -> (MatrixQ, Vec<Rational>) {
    let d = a.ctx().degree();
    let mut rows = Vec::with_capacity(a.rows * d);
    let mut b = Vec::with_capacity(a.rows * d);
    for i in 0..a.rows {
        for j in 0..d {
            rows.push(a.row(i).iter().map(|e| e.coeffs()[j].clone()).collect());
            b.push(rhs[i].coeffs()[j].clone());
        }
    }
    (MatrixQ::from_rows(&(), rows, a.cols), b)
}

/// The rational points of `{x : A x = rhs}` for a system over `Q(α)`.
pub fn rational_points(a: &Matrix<FieldElement>, rhs: &[FieldElement]) -> Option<AffineFrameQ> {
    let (aq, bq) = expand_over_q(a, rhs);
    solve_affine(&aq, &bq)
}

/// Row-reduced basis of the span of `vectors` (nonzero RREF rows).
pub fn canonical_span_basis(n: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = MatrixQ::from_rows(&(), vectors.to_vec(), n);
    let r = rref(&m, &vec![<Rational as Zero>::zero(); vectors.len()]);
    (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect()
}

/// Symmetric bilinear form `uᵀ G v` with rational `G` on field vectors.
pub fn bilinear_k(gram: &MatrixQ, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    let k = u[0].field().clone();
    let mut acc = k.zero();
    for i in 0..gram.rows() {
        if u[i].is_zero() {
            continue;
        }
        let mut s = k.zero();
        for j in 0..gram.cols() {
            let g = gram.get(i, j);
            if !Zero::is_zero(g) {
                s = s.add(&v[j].scale(g));
            }
        }
        acc = acc.add(&u[i].mul(&s));
    }
    acc
}

pub fn bilinear_q(gram: &MatrixQ, u: &[Rational], v: &[Rational]) -> Rational {
    dot(&(), u, &gram.mul_vec(v))
}

pub fn lift_vec(k: &NumberField, v: &[Rational]) -> Vec<FieldElement> {
    v.iter().map(|x| k.from_rational(x.clone())).collect()
}

/// Projection of `p` onto the affine span of `carrier`, orthogonal for the
/// form with Gram matrix `gram`: solves `H t = w` with
/// `H_ij = B(d_i, d_j)` and `w_i = B(d_i, p − base)`.
pub fn project_point(
    carrier: &AffineFrameQ,
    p: &[FieldElement],
    gram: &MatrixQ,
) -> Result<Vec<FieldElement>> {
    let k = p[0].field().clone();
    let base = lift_vec(&k, carrier.base());
    let dirs = carrier.directions();
    let m = dirs.len();
    if m == 0 {
        return Ok(base);
    }
    let h_rows: Vec<Vec<FieldElement>> = dirs
        .iter()
        .map(|di| {
            dirs.iter()
                .map(|dj| k.from_rational(bilinear_q(gram, di, dj)))
                .collect()
        })
        .collect();
    let h = Matrix::from_rows(&k, h_rows, m);
    let diff = vec_sub(p, &base);
    let w: Vec<FieldElement> = dirs
        .iter()
        .map(|di| bilinear_k(gram, &lift_vec(&k, di), &diff))
        .collect();
    let r = rref(&h, &w);
    if r.rank < m {
        return Err(Error::SingularGram);
    }
    let t = &r.rhs[..m];
    let mut x = base;
    for (ti, d) in t.iter().zip(dirs) {
        x = vec_add(&x, &vec_scale(&lift_vec(&k, d), ti));
    }
    Ok(x)
}

/// Matrix `P` of the projection onto the direction space of `carrier`,
/// orthogonal for `gram`: the projection of `p` is `base + P (p − base)`.
pub fn projection_matrix(carrier: &AffineFrameQ, gram: &MatrixQ) -> Result<MatrixQ> {
    let n = carrier.ambient_dim();
    let m = carrier.directions().len();
    if m == 0 {
        return Ok(MatrixQ::zeros(&(), n, n));
    }
    // D is n × m with the directions as columns
    let d = MatrixQ::from_rows(&(), carrier.directions().to_vec(), n).transpose();
    let dt_g = d.transpose().mul(gram);
    let h = dt_g.mul(&d);
    let h_inv = h.inverse().ok_or(Error::SingularGram)?;
    Ok(d.mul(&h_inv).mul(&dt_g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::{make_field, RootBox};
    use crate::poly::PolyQ;
    use crate::rational::{int, rat};

    fn q(rows: &[&[i64]]) -> MatrixQ {
        let r: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| int(x)).collect())
            .collect();
        let c = r.first().map_or(0, Vec::len);
        MatrixQ::from_rows(&(), r, c)
    }

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn sqrt2() -> NumberField {
        make_field(&PolyQ::from_ints(&[-2, 0, 1]), RootBox::real(int(1), int(2))).unwrap()
    }

    #[test]
    fn rref_permutation() {
        let r = rref(&q(&[&[0, 1], &[1, 0]]), &qv(&[1, 0]));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
        assert!(r.consistent);
        assert_eq!(r.rhs, qv(&[0, 1]));
    }

    #[test]
    fn rref_inconsistent() {
        let r = rref(&q(&[&[0, 0], &[0, 0]]), &qv(&[1, 0]));
        assert!(!r.consistent);
        assert_eq!(r.rank, 0);
        assert!(solve_affine(&q(&[&[0]]), &qv(&[1])).is_none());
    }

    #[test]
    fn theta_system_example() {
        // γ = (√2, 1), b = 0: rows const (0,1)|1 and α (1,0)|0
        let f = solve_affine(&q(&[&[0, 1], &[1, 0]]), &qv(&[1, 0])).unwrap();
        assert_eq!(f.base(), &qv(&[0, 1])[..]);
        assert!(f.directions().is_empty());
    }

    #[test]
    fn solve_single_equation() {
        let f = solve_affine(&q(&[&[1, 0]]), &qv(&[0])).unwrap();
        assert_eq!(f.base(), &qv(&[0, 0])[..]);
        assert_eq!(f.directions(), &[qv(&[0, 1])]);
        assert_eq!(frame_span_dim(&f), 1);
    }

    #[test]
    fn defining_pairs() {
        let r = rref(&q(&[&[1, 0]]), &qv(&[0]));
        let p = defining_pair_from_rref(&r).unwrap();
        assert_eq!(p.free_set(), &[1]);
        assert_eq!(p.dependent_set(), &[0]);
        assert_eq!(p.apply(&qv(&[5])), qv(&[0]));

        let r = rref(&q(&[&[2, 1], &[1, 1]]), &qv(&[3, 2]));
        let p = defining_pair_from_rref(&r).unwrap();
        assert!(p.free_set().is_empty());
        assert_eq!(p.point(&[]), qv(&[1, 1]));

        // γ = (√2, 0, 0), b = (1, 1, 0): rows (−1,−1,0)|1 and (1,0,0)|0
        let r = rref(&q(&[&[-1, -1, 0], &[1, 0, 0]]), &qv(&[1, 0]));
        let p = defining_pair_from_rref(&r).unwrap();
        assert_eq!(p.free_set(), &[2]);
        assert_eq!(p.apply(&qv(&[7])), qv(&[0, -1]));

        let bad = rref(&q(&[&[0]]), &qv(&[1]));
        assert_eq!(defining_pair_from_rref(&bad).unwrap_err(), Error::InconsistentSystem);
    }

    #[test]
    fn rationality_of_pairs() {
        let k = sqrt2();
        let a = Matrix::from_rows(&k, vec![vec![k.one(), k.zero()]], 2);
        let p = defining_pair_from_rref(&rref(&a, &[k.one()])).unwrap();
        assert!(is_rational_over_q(&p));
        let a = Matrix::from_rows(&k, vec![vec![k.one(), k.generator().neg()]], 2);
        let p = defining_pair_from_rref(&rref(&a, &[k.zero()])).unwrap();
        assert!(!is_rational_over_q(&p));
        // x1 = √2 x2 has only the origin as rational point
        let pts = rational_points(&a, &[k.zero()]).unwrap();
        assert_eq!(frame_span_dim(&pts), 0);
        assert_eq!(p.dim(), 1);
    }

    #[test]
    fn projection_examples() {
        let k = sqrt2();
        let carrier = AffineFrame::new(&(), qv(&[1, 1, 0]), vec![qv(&[0, -1, 0]), qv(&[0, 0, 1])]).unwrap();
        let gamma = vec![k.generator(), k.zero(), k.zero()];
        let c = project_point(&carrier, &gamma, &MatrixQ::identity(&(), 3)).unwrap();
        assert_eq!(c, lift_vec(&k, &qv(&[1, 0, 0])));
        // idempotent on carrier points
        let on = lift_vec(&k, &qv(&[1, 5, -2]));
        assert_eq!(project_point(&carrier, &on, &MatrixQ::identity(&(), 3)).unwrap(), on);
        // (0,0) onto x = 0 under diag(1, 2)
        let line = AffineFrame::new(&(), qv(&[0, 0]), vec![qv(&[0, 1])]).unwrap();
        let g = MatrixQ::from_rows(&(), vec![qv(&[1, 0]), qv(&[0, 2])], 2);
        let z = lift_vec(&k, &qv(&[0, 0]));
        assert_eq!(project_point(&line, &z, &g).unwrap(), z);
    }

    #[test]
    fn determinant_and_rank() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant(), int(18));
        assert_eq!(m.leading_block(2).determinant(), int(5));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn inverse_and_projection_matrix() {
        let m = q(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.mul(&m.inverse().unwrap()), MatrixQ::identity(&(), 2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let line = AffineFrame::new(&(), qv(&[0, 0]), vec![qv(&[1, 1])]).unwrap();
        let p = projection_matrix(&line, &MatrixQ::identity(&(), 2)).unwrap();
        assert_eq!(p.mul_vec(&qv(&[2, 0])), qv(&[1, 1]));
        assert_eq!(p.mul(&p), p);
    }

    #[test]
    fn dependent_frames_rejected() {
        let e = AffineFrame::new(&(), qv(&[0, 0]), vec![qv(&[1, 1]), qv(&[2, 2])]).unwrap_err();
        assert!(matches!(e, Error::InvalidSpec(_)));
    }

    #[test]
    fn canonical_basis() {
        let b = canonical_span_basis(3, &[qv(&[0, -1, 0]), qv(&[0, 0, 1])]);
        assert_eq!(b, vec![qv(&[0, 1, 0]), qv(&[0, 0, 1])]);
        let b = canonical_span_basis(2, &[vec![int(0), rat(2, 3)]]);
        assert_eq!(b, vec![qv(&[0, 1])]);
    }
}
