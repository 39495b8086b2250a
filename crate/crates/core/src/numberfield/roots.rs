//! Certified isolation of all complex roots of a squarefree rational
//! polynomial, and the embedding set of a number field built on it.
//!
//! Seeds come from the eigenvalues of the companion matrix. Real roots
//! (counted by a Sturm chain) are polished by real Newton iteration and
//! complex roots by complex Newton iteration on the upper half plane, with
//! the lower half plane filled in by conjugation. A midpoint `z` is then
//! certified with the disk of radius `d·|p(z)|/|p'(z)|`, which always
//! contains a root; `d` pairwise disjoint such disks hold one root each.
//! A disk centered on the real axis holding exactly one root holds a real
//! root, since its conjugate lies in the same disk.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{FieldElement, NumberField, RootBox};
use crate::ball::{bits_for_digits, scaled_rational, ComplexBall};
use crate::error::{Error, Result};
use crate::poly::PolyQ;
use crate::rational::Rational;

/// Smallest precision accepted by [`embeddings`].
pub const MIN_DIGITS: u32 = 8;

const MAX_ATTEMPTS: u32 = 5;

/// All embeddings `α ↦ ζ_j` of a number field, as certified root balls.
#[derive(Clone, Debug)]
pub struct EmbeddingSet {
    field: NumberField,
    roots: Vec<ComplexBall>,
    designated_index: usize,
    digits: u32,
}

impl EmbeddingSet {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn roots(&self) -> &[ComplexBall] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn designated_index(&self) -> usize {
        self.designated_index
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working precision of the root balls, in bits.
    pub fn prec(&self) -> u32 {
        self.roots[0].prec()
    }

    /// `σ_j(e)`: Horner evaluation of the coefficients of `e` at root `j`.
    pub fn eval(&self, e: &FieldElement, j: usize) -> ComplexBall {
        eval_element(e, self, j)
    }

    /// Componentwise `σ_j` on a vector.
    pub fn eval_vec(&self, v: &[FieldElement], j: usize) -> Vec<ComplexBall> {
        v.iter().map(|e| eval_element(e, self, j)).collect()
    }
}

/// Evaluates `e` under the embedding `α ↦ roots[j]` with ball arithmetic.
pub fn eval_element(e: &FieldElement, emb: &EmbeddingSet, j: usize) -> ComplexBall {
    let z = &emb.roots[j];
    let prec = z.prec();
    let mut acc = ComplexBall::zero(prec);
    for c in e.coeffs().iter().rev() {
        acc = acc.mul(z).add(&ComplexBall::from_rational(c, prec));
    }
    acc
}

/// Computes every embedding of `field` with root radii at most `10^-digits`.
pub fn embeddings(field: &NumberField, digits: u32) -> Result<EmbeddingSet> {
    if digits < MIN_DIGITS {
        return Err(Error::InvalidSpec(format!(
            "embedding precision must be at least {MIN_DIGITS} digits"
        )));
    }
    let poly = field.min_poly();
    let bx = field.root_box();
    let mut work = digits;
    for _ in 0..MAX_ATTEMPTS {
        let roots = isolate_roots(poly, work)?;
        if let Some(idx) = locate(&roots, bx)? {
            return Ok(EmbeddingSet {
                field: field.clone(),
                roots,
                designated_index: idx,
                digits,
            });
        }
        work *= 2;
    }
    Err(Error::PrecisionExhausted(
        "designated root sits on the root box boundary".into(),
    ))
}

/// Number of roots of `poly` inside the closed box.
pub(super) fn count_in_box(poly: &PolyQ, bx: &RootBox) -> Result<usize> {
    let mut digits = 16;
    for _ in 0..MAX_ATTEMPTS {
        let roots = isolate_roots(poly, digits)?;
        if let Some(k) = classify(&roots, bx) {
            return Ok(k.len());
        }
        digits *= 2;
    }
    Err(Error::PrecisionExhausted(
        "a root sits on the root box boundary".into(),
    ))
}

/// Indices of the balls inside the box, or `None` if some ball straddles it.
fn classify(roots: &[ComplexBall], bx: &RootBox) -> Option<Vec<usize>> {
    let mut inside = Vec::new();
    for (j, z) in roots.iter().enumerate() {
        if bx.is_real_interval() {
            if !z.is_real() {
                continue;
            }
            let lo = z.mid_re() - z.rad();
            let hi = z.mid_re() + z.rad();
            if lo >= bx.re.0 && hi <= bx.re.1 {
                inside.push(j);
            } else if !(hi < bx.re.0 || lo > bx.re.1) {
                return None;
            }
        } else if z.inside_box((&bx.re.0, &bx.re.1), (&bx.im.0, &bx.im.1)) {
            inside.push(j);
        } else if !z.outside_box((&bx.re.0, &bx.re.1), (&bx.im.0, &bx.im.1)) {
            return None;
        }
    }
    Some(inside)
}

fn locate(roots: &[ComplexBall], bx: &RootBox) -> Result<Option<usize>> {
    Ok(match classify(roots, bx) {
        None => None,
        Some(v) if v.len() == 1 => Some(v[0]),
        Some(v) if v.is_empty() => return Err(Error::EmptyRootBox),
        Some(v) => return Err(Error::AmbiguousRootBox(v.len())),
    })
}

/// Certified disks around all roots of a squarefree `poly`, each of radius
/// at most `10^-digits`, sorted by real then imaginary part.
pub fn isolate_roots(poly: &PolyQ, digits: u32) -> Result<Vec<ComplexBall>> {
    let d = poly
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidSpec("cannot isolate roots of a constant".into()))?;
    let poly = poly.monic();
    if d == 1 {
        let root = -poly.coeff(0);
        let prec = bits_for_digits(digits, 64);
        return Ok(vec![ComplexBall::from_rational(&root, prec)]);
    }
    let real_count = poly.count_real_roots();
    let seeds = companion_seeds(&poly);
    let mut guard = 64 + 8 * d as u32;
    for _ in 0..MAX_ATTEMPTS {
        let prec = bits_for_digits(digits, guard);
        let coeffs: Vec<BigInt> = poly
            .coeffs()
            .iter()
            .map(|c| scaled_rational(c, prec).0)
            .collect();
        let newton = Newton {
            coeffs: &coeffs,
            prec,
        };
        let mids = match symmetric_refine(&newton, &seeds, real_count, d) {
            Some(m) => m,
            None => newton.weierstrass(&seeds),
        };
        if let Some(balls) = certify(&poly, &mids, prec, real_count) {
            if balls.iter().all(|b| b.rad_le_pow10(digits)) {
                return Ok(sort_roots(balls));
            }
        }
        guard *= 2;
    }
    Err(Error::PrecisionExhausted(format!(
        "root refinement did not certify {d} disjoint roots"
    )))
}

fn sort_roots(mut balls: Vec<ComplexBall>) -> Vec<ComplexBall> {
    balls.sort_by(|a, b| {
        let tol = a.rad() + b.rad();
        let dre = a.mid_re() - b.mid_re();
        if dre.abs() > tol {
            dre.partial_cmp(&Rational::zero()).unwrap()
        } else {
            a.mid_im().cmp(&b.mid_im())
        }
    });
    balls
}

fn companion_seeds(poly: &PolyQ) -> Vec<(f64, f64)> {
    let d = poly.degree().unwrap();
    let c: Vec<f64> = poly.coeffs().iter().map(crate::rational::to_f64).collect();
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i];
    }
    let eig = m.complex_eigenvalues();
    let mut seeds: Vec<(f64, f64)> = eig.iter().map(|z| (z.re, z.im)).collect();
    if seeds.iter().any(|s| !s.0.is_finite() || !s.1.is_finite()) {
        // spread on a circle of the Cauchy radius
        let r = crate::rational::to_f64(&poly.root_bound());
        seeds = (0..d)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64;
                (r * t.cos(), r * t.sin())
            })
            .collect();
    }
    seeds
}

/// Complex fixed-point number scaled by `2^prec`.
#[derive(Clone, Debug, PartialEq)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

impl Fx {
    fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        let conv = |x: f64| {
            Rational::from_float(x)
                .map(|r| scaled_rational(&r, prec).0)
                .unwrap_or_default()
        };
        Fx {
            re: conv(re),
            im: conv(im),
        }
    }

    fn conj(&self) -> Self {
        Fx {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Fx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Self, prec: u32) -> Self {
        Fx {
            re: (&self.re * &o.re - &self.im * &o.im) >> prec,
            im: (&self.re * &o.im + &self.im * &o.re) >> prec,
        }
    }

    fn div(&self, o: &Self, prec: u32) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&self.re * &o.re + &self.im * &o.im) << prec) / &den;
        let im = ((&self.im * &o.re - &self.re * &o.im) << prec) / &den;
        Some(Fx { re, im })
    }

    fn norm_sq(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
}

struct Newton<'a> {
    coeffs: &'a [BigInt],
    prec: u32,
}

impl Newton<'_> {
    /// `(p(z), p'(z))`.
    fn eval(&self, z: &Fx) -> (Fx, Fx) {
        let zero = Fx {
            re: BigInt::zero(),
            im: BigInt::zero(),
        };
        let mut p = zero.clone();
        let mut dp = zero;
        for c in self.coeffs.iter().rev() {
            dp = dp.mul(z, self.prec);
            dp.re += &p.re;
            dp.im += &p.im;
            p = p.mul(z, self.prec);
            p.re += c;
        }
        (p, dp)
    }

    fn converged(&self, step: &Fx) -> bool {
        // |step| below 2^-(prec - 8)
        step.norm_sq() <= BigInt::from(1u32 << 16)
    }

    fn polish(&self, mut z: Fx, real: bool) -> Option<Fx> {
        if real {
            z.im = BigInt::zero();
        }
        let max_iter = 64 + 2 * self.prec as usize;
        let mut last = BigInt::zero();
        for it in 0..max_iter {
            let (p, dp) = self.eval(&z);
            let step = p.div(&dp, self.prec)?;
            z = z.sub(&step);
            if self.converged(&step) {
                // one extra step once in the quadratic regime
                let (p, dp) = self.eval(&z);
                if let Some(s) = p.div(&dp, self.prec) {
                    z = z.sub(&s);
                }
                return Some(z);
            }
            let n = step.norm_sq();
            if it > 200 && n >= last {
                return None;
            }
            last = n;
        }
        None
    }

    /// Durand–Kerner iteration on all roots simultaneously.
    fn weierstrass(&self, seeds: &[(f64, f64)]) -> Vec<Fx> {
        let d = seeds.len();
        let mut zs: Vec<Fx> = seeds
            .iter()
            .enumerate()
            .map(|(k, &(re, im))| {
                // nudge so that no two starting points coincide
                let t = 0.4 + k as f64 * 0.9;
                Fx::from_f64(re + 1e-3 * t.cos(), im + 1e-3 * t.sin(), self.prec)
            })
            .collect();
        let one = BigInt::one() << self.prec;
        for _ in 0..(200 + 4 * self.prec as usize) {
            let mut worst = BigInt::zero();
            for i in 0..d {
                let (p, _) = self.eval(&zs[i]);
                let mut den = Fx {
                    re: one.clone(),
                    im: BigInt::zero(),
                };
                for j in 0..d {
                    if i != j {
                        den = den.mul(&zs[i].sub(&zs[j]), self.prec);
                    }
                }
                if let Some(step) = p.div(&den, self.prec) {
                    let n = step.norm_sq();
                    if n > worst {
                        worst = n;
                    }
                    zs[i] = zs[i].sub(&step);
                }
            }
            if worst <= BigInt::from(1u32 << 16) {
                break;
            }
        }
        zs
    }
}

/// Polishes seeds while keeping real roots on the axis and complex roots in
/// exact conjugate pairs. `None` if the seeds do not split as expected.
fn symmetric_refine(nt: &Newton, seeds: &[(f64, f64)], real_count: usize, d: usize) -> Option<Vec<Fx>> {
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        seeds[a]
            .1
            .abs()
            .partial_cmp(&seeds[b].1.abs())
            .unwrap_or(Ordering::Equal)
    });
    let (reals, rest) = order.split_at(real_count);
    let upper: Vec<usize> = rest.iter().copied().filter(|&i| seeds[i].1 > 0.0).collect();
    if 2 * upper.len() != rest.len() {
        return None;
    }
    let mut out = Vec::with_capacity(d);
    for &i in reals {
        out.push(nt.polish(Fx::from_f64(seeds[i].0, 0.0, nt.prec), true)?);
    }
    for &i in &upper {
        let z = nt.polish(Fx::from_f64(seeds[i].0, seeds[i].1, nt.prec), false)?;
        if z.im.is_zero() {
            return None;
        }
        let z = if z.im.is_negative() { z.conj() } else { z };
        out.push(z.conj());
        out.push(z);
    }
    Some(out)
}

/// Certified inclusion disks for the given midpoints, or `None` if they are
/// not pairwise disjoint or the real-axis count disagrees with Sturm.
fn certify(poly: &PolyQ, mids: &[Fx], prec: u32, real_count: usize) -> Option<Vec<ComplexBall>> {
    let d = poly.degree().unwrap();
    let dpoly = poly.derivative();
    let mut balls: Vec<ComplexBall> = Vec::with_capacity(d);
    for z in mids {
        let center = ComplexBall::from_parts(z.re.clone(), z.im.clone(), BigInt::zero(), prec);
        let p = eval_poly_ball(poly, &center);
        let rad = if p.is_exact() && p.mid_re_raw().is_zero() && p.mid_im_raw().is_zero() {
            BigInt::zero()
        } else {
            let dp = eval_poly_ball(&dpoly, &center);
            let lower = dp.abs_lower_raw();
            if lower.is_zero() {
                return None;
            }
            let num = p.abs_upper_raw() * BigInt::from(d);
            let scaled = num * (BigInt::one() << prec);
            let q = &scaled / &lower;
            if &q * &lower == scaled {
                q
            } else {
                q + 1
            }
        };
        balls.push(ComplexBall::from_parts(z.re.clone(), z.im.clone(), rad, prec));
    }
    for i in 0..d {
        for j in i + 1..d {
            if balls[i].overlaps(&balls[j]) {
                return None;
            }
        }
    }
    // Roots of the fallback path may sit just off the axis; move a disk onto
    // the axis when the enlarged, axis-centered disk stays clear of the rest.
    for i in 0..d {
        if balls[i].is_real() {
            continue;
        }
        let b = &balls[i];
        let grown = ComplexBall::from_parts(
            b.mid_re_raw().clone(),
            BigInt::zero(),
            b.rad_raw() + b.mid_im_raw().abs(),
            prec,
        );
        let clear = (0..d).all(|j| j == i || !grown.overlaps(&balls[j]));
        let small = b.mid_im_raw().abs() <= BigInt::one() << (prec / 2);
        if clear && small {
            balls[i] = grown;
        }
    }
    let on_axis = balls.iter().filter(|b| b.is_real()).count();
    (on_axis == real_count).then_some(balls)
}

fn eval_poly_ball(p: &PolyQ, z: &ComplexBall) -> ComplexBall {
    let prec = z.prec();
    let mut acc = ComplexBall::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z).add(&ComplexBall::from_rational(c, prec));
    }
    acc
}

/// Floating-point view of an embedded vector.
pub fn to_complex_f64(b: &ComplexBall) -> num_complex::Complex<f64> {
    num_complex::Complex::new(b.re_f64(), b.im_f64())
}
