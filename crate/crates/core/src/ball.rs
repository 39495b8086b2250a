//! Fixed-precision complex ball arithmetic.
//!
//! A ball is a disk `{z : |z − mid| ≤ rad}` whose midpoint components and
//! radius are integers scaled by `2^-prec`. Every operation returns a disk
//! that contains all results of the operation applied to points of the
//! input disks; midpoint rounding is charged to the radius.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Bits of working precision needed to carry `digits` decimal digits plus
/// `guard` extra bits.
pub fn bits_for_digits(digits: u32, guard: u32) -> u32 {
    // log2(10) < 3.3220
    (digits as u64 * 33220 / 10000) as u32 + 1 + guard
}

#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    re: BigInt,
    im: BigInt,
    rad: BigInt,
    prec: u32,
}

/// Rounds `x / 2^shift` to nearest; reports whether the division was exact.
fn shift_round(x: &BigInt, shift: u32) -> (BigInt, bool) {
    if shift == 0 {
        return (x.clone(), true);
    }
    let den = BigInt::one() << shift;
    let (q, r) = x.div_mod_floor(&den);
    let exact = r.is_zero();
    if (r << 1u32) >= den {
        (q + 1, exact)
    } else {
        (q, exact)
    }
}

/// `ceil(x / 2^shift)` for `x ≥ 0`.
fn shift_ceil(x: &BigInt, shift: u32) -> BigInt {
    let den = BigInt::one() << shift;
    x.div_ceil(&den)
}

/// `ceil(sqrt(re² + im²))`.
fn hypot_ceil(re: &BigInt, im: &BigInt) -> BigInt {
    let s = re * re + im * im;
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + 1
    }
}

fn hypot_floor(re: &BigInt, im: &BigInt) -> BigInt {
    (re * re + im * im).sqrt()
}

impl ComplexBall {
    pub fn zero(prec: u32) -> Self {
        ComplexBall {
            re: BigInt::zero(),
            im: BigInt::zero(),
            rad: BigInt::zero(),
            prec,
        }
    }

    /// Builds a ball from raw scaled components.
    pub fn from_parts(re: BigInt, im: BigInt, rad: BigInt, prec: u32) -> Self {
        assert!(!rad.is_negative());
        ComplexBall { re, im, rad, prec }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let (m, exact) = scaled_rational(r, prec);
        ComplexBall {
            re: m,
            im: BigInt::zero(),
            rad: if exact { BigInt::zero() } else { BigInt::one() },
            prec,
        }
    }

    pub fn from_rational_pair(re: &Rational, im: &Rational, prec: u32) -> Self {
        let (a, ea) = scaled_rational(re, prec);
        let (b, eb) = scaled_rational(im, prec);
        ComplexBall {
            re: a,
            im: b,
            rad: if ea && eb { BigInt::zero() } else { BigInt::one() },
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid_re_raw(&self) -> &BigInt {
        &self.re
    }

    pub fn mid_im_raw(&self) -> &BigInt {
        &self.im
    }

    pub fn rad_raw(&self) -> &BigInt {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// The ball is centered on the real axis.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn mid_re(&self) -> Rational {
        Rational::new(self.re.clone(), BigInt::one() << self.prec)
    }

    pub fn mid_im(&self) -> Rational {
        Rational::new(self.im.clone(), BigInt::one() << self.prec)
    }

    pub fn rad(&self) -> Rational {
        Rational::new(self.rad.clone(), BigInt::one() << self.prec)
    }

    /// Disk enclosing the real parts.
    pub fn real_part(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: BigInt::zero(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    /// Disk enclosing the imaginary parts (as real numbers).
    pub fn imag_part(&self) -> Self {
        ComplexBall {
            re: self.im.clone(),
            im: BigInt::zero(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: -&self.im,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        ComplexBall {
            re: -&self.re,
            im: -&self.im,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        ComplexBall {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            rad: &self.rad + &o.rad,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        let p = self.prec;
        let re2 = &self.re * &o.re - &self.im * &o.im;
        let im2 = &self.re * &o.im + &self.im * &o.re;
        let (re, e1) = shift_round(&re2, p);
        let (im, e2) = shift_round(&im2, p);
        let ma = hypot_ceil(&self.re, &self.im);
        let mb = hypot_ceil(&o.re, &o.im);
        let prop = &ma * &o.rad + &mb * &self.rad + &self.rad * &o.rad;
        let mut rad = shift_ceil(&prop, p);
        if !(e1 && e2) {
            rad += 1;
        }
        ComplexBall { re, im, rad, prec: p }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Multiplication by an exact rational.
    pub fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_integer() {
            let k = r.to_integer();
            return ComplexBall {
                re: &self.re * &k,
                im: &self.im * &k,
                rad: &self.rad * k.abs(),
                prec: self.prec,
            };
        }
        self.mul(&Self::from_rational(r, self.prec))
    }

    /// True iff the ball is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad.is_zero()
    }

    /// Upper bound on `|z|` over the ball, in units of `2^-prec`.
    pub fn abs_upper_raw(&self) -> BigInt {
        hypot_ceil(&self.re, &self.im) + &self.rad
    }

    /// Lower bound on `|z|` over the ball (zero if the ball meets 0).
    pub fn abs_lower_raw(&self) -> BigInt {
        let l = hypot_floor(&self.re, &self.im) - &self.rad;
        if l.is_negative() {
            BigInt::zero()
        } else {
            l
        }
    }

    /// Upper bound on `|z|` as a rational.
    pub fn abs_upper(&self) -> Rational {
        Rational::new(self.abs_upper_raw(), BigInt::one() << self.prec)
    }

    /// Certifies `|z| ≤ bound` for every point of the ball.
    pub fn abs_le(&self, bound: &Rational) -> bool {
        self.abs_upper() <= *bound
    }

    /// Certifies `rad ≤ 10^-digits`.
    pub fn rad_le_pow10(&self, digits: u32) -> bool {
        &self.rad * num_traits::pow(BigInt::from(10), digits as usize) <= BigInt::one() << self.prec
    }

    /// Whether the two disks can share a point.
    pub fn overlaps(&self, o: &Self) -> bool {
        let dre = &self.re - &o.re;
        let dim = &self.im - &o.im;
        let r = &self.rad + &o.rad;
        &dre * &dre + &dim * &dim <= &r * &r
    }

    /// Whether every point of the disk lies in the closed rectangle.
    pub fn inside_box(&self, re: (&Rational, &Rational), im: (&Rational, &Rational)) -> bool {
        let lo_re = self.mid_re() - self.rad();
        let hi_re = self.mid_re() + self.rad();
        let lo_im = self.mid_im() - self.rad();
        let hi_im = self.mid_im() + self.rad();
        &lo_re >= re.0 && &hi_re <= re.1 && &lo_im >= im.0 && &hi_im <= im.1
    }

    /// Whether the disk certainly misses the closed rectangle.
    pub fn outside_box(&self, re: (&Rational, &Rational), im: (&Rational, &Rational)) -> bool {
        let lo_re = self.mid_re() - self.rad();
        let hi_re = self.mid_re() + self.rad();
        let lo_im = self.mid_im() - self.rad();
        let hi_im = self.mid_im() + self.rad();
        &hi_re < re.0 || &lo_re > re.1 || &hi_im < im.0 || &lo_im > im.1
    }

    pub fn contains_rational(&self, re: &Rational, im: &Rational) -> bool {
        let dre = re - self.mid_re();
        let dim = im - self.mid_im();
        let r = self.rad();
        &dre * &dre + &dim * &dim <= &r * &r
    }

    /// Same ball re-expressed at a different precision (outward rounded).
    pub fn with_prec(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = prec - self.prec;
                ComplexBall {
                    re: &self.re << s,
                    im: &self.im << s,
                    rad: &self.rad << s,
                    prec,
                }
            }
            Ordering::Less => {
                let s = self.prec - prec;
                let (re, e1) = shift_round(&self.re, s);
                let (im, e2) = shift_round(&self.im, s);
                let mut rad = shift_ceil(&self.rad, s);
                if !(e1 && e2) {
                    rad += 1;
                }
                ComplexBall { re, im, rad, prec }
            }
        }
    }

    pub fn re_f64(&self) -> f64 {
        scaled_to_f64(&self.re, self.prec)
    }

    pub fn im_f64(&self) -> f64 {
        scaled_to_f64(&self.im, self.prec)
    }

    pub fn rad_f64(&self) -> f64 {
        scaled_to_f64(&self.rad, self.prec)
    }

    /// Real part of the midpoint with `digits` fractional digits.
    pub fn re_decimal(&self, digits: u32) -> String {
        scaled_to_decimal(&self.re, self.prec, digits)
    }

    pub fn im_decimal(&self, digits: u32) -> String {
        scaled_to_decimal(&self.im, self.prec, digits)
    }

    /// Upper bound on the radius in scientific notation.
    pub fn rad_decimal(&self) -> String {
        upper_scientific(&self.rad, self.prec)
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} {:+}i ± {}]",
            self.re_decimal(20),
            self.im_f64(),
            self.rad_decimal()
        )
    }
}

/// `round(r · 2^prec)` and whether it is exact.
pub(crate) fn scaled_rational(r: &Rational, prec: u32) -> (BigInt, bool) {
    let num = r.numer() << prec;
    let den = r.denom();
    let (q, rem) = num.div_mod_floor(den);
    let exact = rem.is_zero();
    if (&rem << 1u32) >= *den {
        (q + 1, exact)
    } else {
        (q, exact)
    }
}

pub(crate) fn scaled_to_f64(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().unwrap_or(0.0) / 2f64.powi(prec as i32)
    } else {
        let s = (bits - 60) as u32;
        let top = (x >> s).to_f64().unwrap_or(0.0);
        top * 2f64.powi(s as i32 - prec as i32)
    }
}

/// Nearest decimal with exactly `digits` fractional digits.
pub fn scaled_to_decimal(x: &BigInt, prec: u32, digits: u32) -> String {
    let ten = num_traits::pow(BigInt::from(10), digits as usize);
    let (v, _) = shift_round(&(x * ten), prec);
    let neg = v.sign() == Sign::Minus;
    let s = v.abs().to_string();
    let d = digits as usize;
    let s = if s.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - s.len()), s)
    } else {
        s
    };
    let (int_part, frac) = s.split_at(s.len() - d);
    let body = if d == 0 {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Formats `x · 2^-prec` (x ≥ 0) rounded up to three significant digits.
fn upper_scientific(x: &BigInt, prec: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let r = Rational::new(x.clone(), BigInt::one() << prec);
    // find e with 100 ≤ r·10^-e < 1000
    let mut e: i64 = (scaled_to_f64(x, prec).log10().floor() as i64) - 2;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(BigInt::from(10), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), (-k) as usize))
        }
    };
    loop {
        let m = (&r / pow10(e)).ceil().to_integer();
        if m < BigInt::from(100) {
            e -= 1;
        } else if m >= BigInt::from(1000) {
            e += 1;
        } else {
            let ms = m.to_string();
            return format!("{}.{}e{}", &ms[..1], &ms[1..], e + 2);
        }
    }
}

/// `10^-digits` as an exact rational.
pub fn pow10_neg(digits: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize))
}
