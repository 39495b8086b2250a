//! Irreducibility certification over Q.
//!
//! Tier one reads the factor-degree pattern of `f mod p` (distinct-degree
//! factorization) for a handful of primes: a single factor, or an empty
//! intersection of admissible factor degrees across primes, proves
//! irreducibility. Tier two factors modulo the best prime, Hensel-lifts the
//! factorization past the Mignotte bound and searches for a true factor
//! among subset products (Zassenhaus).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::PolyQ;
use crate::rational::Rational;

/// Degree above which the factorization tier is not attempted.
pub const MAX_FACTOR_DEGREE: usize = 24;

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421,
    431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541,
];

/// Number of good primes whose degree patterns are intersected.
const PATTERN_PRIMES: usize = 10;

/// Outcome of the irreducibility check for a squarefree polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A nontrivial monic factor of the integer-scaled polynomial.
    Reducible(Vec<BigInt>),
}

/// Decides irreducibility of a squarefree polynomial of degree ≥ 1 over Q.
pub fn check_irreducible(p: &PolyQ) -> Result<Irreducibility> {
    let d = p.degree().expect("zero polynomial");
    if d <= 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let f = monic_integer_form(&p.monic());

    let mut admissible = vec![true; d + 1];
    let mut best: Option<(u64, usize)> = None;
    let mut used = 0;
    for &prime in PRIMES {
        let fp = FpPoly::from_ints(&f, prime);
        if !fp.is_squarefree() {
            continue;
        }
        let degrees = fp.factor_degrees();
        if degrees.len() == 1 {
            return Ok(Irreducibility::Irreducible);
        }
        let sums = subset_sums(&degrees, d);
        for k in 0..=d {
            admissible[k] &= sums[k];
        }
        if admissible[1..d].iter().all(|a| !a) {
            return Ok(Irreducibility::Irreducible);
        }
        if best.is_none_or(|(_, r)| degrees.len() < r) {
            best = Some((prime, degrees.len()));
        }
        used += 1;
        if used >= PATTERN_PRIMES {
            break;
        }
    }
    if d > MAX_FACTOR_DEGREE {
        return Err(Error::UncertifiableIrreducibility(d));
    }
    let (prime, _) = best.ok_or(Error::UncertifiableIrreducibility(d))?;
    Ok(match zassenhaus_find_factor(&f, prime) {
        Some(g) => Irreducibility::Reducible(g),
        None => Irreducibility::Irreducible,
    })
}

/// `D^d · p(t/D)` for monic `p`, with `D` the lcm of the denominators: a
/// monic integer polynomial that is irreducible iff `p` is.
pub fn monic_integer_form(p: &PolyQ) -> Vec<BigInt> {
    let d = p.degree().unwrap();
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    (0..=d)
        .map(|j| {
            let scale = Rational::from_integer(num_traits::pow(den.clone(), d - j));
            (p.coeff(j) * scale).to_integer()
        })
        .collect()
}

fn subset_sums(degrees: &[usize], d: usize) -> Vec<bool> {
    let mut reach = vec![false; d + 1];
    reach[0] = true;
    for &k in degrees {
        for s in (k..=d).rev() {
            if reach[s - k] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Searches for a nontrivial factor of monic `f ∈ Z[t]` via Hensel lifting
/// modulo `prime` and subset recombination.
fn zassenhaus_find_factor(f: &[BigInt], prime: u64) -> Option<Vec<BigInt>> {
    let d = f.len() - 1;
    let fp = FpPoly::from_ints(f, prime);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ prime);
    let factors = fp.factor(&mut rng);
    let r = factors.len();
    if r == 1 {
        return None;
    }
    // Mignotte: every factor's coefficients are bounded by 2^d · ||f||_2.
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << d) * (norm_sq.sqrt() + 1u32);
    let mut modulus = BigInt::from(prime);
    let mut exponent = 1u32;
    while modulus <= &bound * 2u32 {
        modulus *= prime;
        exponent += 1;
    }
    let lifted = hensel_lift(f, &factors, prime, exponent);
    let f_int = f.to_vec();
    for size in 1..=r / 2 {
        for subset in combinations(r, size) {
            let mut g = vec![BigInt::one()];
            for &i in &subset {
                g = int_mul_mod(&g, &lifted[i], &modulus);
            }
            let g: Vec<BigInt> = g.into_iter().map(|c| symmetric(&c, &modulus)).collect();
            if g.len() > d || g.len() < 2 {
                continue;
            }
            if int_divides_monic(&f_int, &g) {
                return Some(g);
            }
        }
    }
    None
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2u32 > *m {
        r - m
    } else {
        r
    }
}

fn int_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

/// Exact divisibility of `f` by monic `g` over Z.
fn int_divides_monic(f: &[BigInt], g: &[BigInt]) -> bool {
    let dg = g.len() - 1;
    let mut rem = f.to_vec();
    for k in (dg..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        for (j, gc) in g.iter().enumerate() {
            rem[k - dg + j] -= &c * gc;
        }
    }
    rem[..dg].iter().all(Zero::is_zero)
}

/// Linear multifactor Hensel lifting of `f ≡ ∏ g_i (mod p)` to `mod p^e`.
/// All factors are monic and stay monic.
fn hensel_lift(f: &[BigInt], factors: &[FpPoly], p: u64, e: u32) -> Vec<Vec<BigInt>> {
    let r = factors.len();
    // s_i = (∏_{j≠i} g_j)^{-1} mod g_i, so Σ s_i ĝ_i ≡ 1 (mod p)
    let cofactors: Vec<FpPoly> = (0..r)
        .map(|i| {
            factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(FpPoly::one(p), |acc, (_, g)| acc.mul(g))
        })
        .collect();
    let bezout: Vec<FpPoly> = (0..r)
        .map(|i| {
            cofactors[i]
                .rem(&factors[i])
                .inv_mod(&factors[i])
                .expect("factors mod p are coprime")
        })
        .collect();
    let mut lifted: Vec<Vec<BigInt>> = factors
        .iter()
        .map(|g| g.c.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    for _ in 1..e {
        let next = &pk * &pb;
        let mut prod = vec![BigInt::one()];
        for g in &lifted {
            prod = int_mul_mod(&prod, g, &next);
        }
        let err: Vec<BigInt> = (0..f.len())
            .map(|i| {
                let pi = prod.get(i).cloned().unwrap_or_default();
                (&f[i] - pi).mod_floor(&next) / &pk
            })
            .collect();
        let err_p = FpPoly::from_ints(&err, p);
        for i in 0..r {
            let delta = err_p.mul(&bezout[i]).rem(&factors[i]);
            for (k, &c) in delta.c.iter().enumerate() {
                lifted[i][k] += &pk * c;
            }
        }
        pk = next;
    }
    lifted
}

/// Polynomial over F_p for a prime below 2^31, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    fn new(p: u64, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    fn from_ints(f: &[BigInt], p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            f.iter()
                .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn inv_scalar(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = self.inv_scalar(lc);
                Self::new(self.p, self.c.iter().map(|&x| x * inv % self.p).collect())
            }
        }
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, Vec::new());
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let p = self.p;
        let dd = d.deg();
        let inv = self.inv_scalar(*d.c.last().unwrap());
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (Self::new(p, Vec::new()), self.clone());
        }
        let mut q = vec![0u64; rem.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = rem[k + dd] * inv % p;
            if coef != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    rem[k + j] = (rem[k + j] + p - coef * dc % p) % p;
                }
            }
            q[k] = coef;
        }
        rem.truncate(dd);
        (Self::new(p, q), Self::new(p, rem))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse modulo `m`, if coprime.
    fn inv_mod(&self, m: &Self) -> Option<Self> {
        let p = self.p;
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (Self::new(p, Vec::new()), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        if r0.deg() != 0 || r0.is_zero() {
            return None;
        }
        let inv = self.inv_scalar(r0.c[0]);
        Some(t0.mul(&Self::new(p, vec![inv])).rem(m))
    }

    fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| (i as u64 % p) * x % p)
                .collect(),
        )
    }

    fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).deg() == 0
    }

    fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(k, product of all irreducible factors of degree k)`.
    fn ddf(&self) -> Vec<(usize, Self)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.monic();
        let mut h = Self::x(p);
        let mut k = 0;
        let pe = BigUint::from(p);
        while 2 * (k + 1) <= f.deg() {
            k += 1;
            h = h.pow_mod(&pe, &f);
            let g = h.sub(&Self::x(p)).gcd(&f);
            if g.deg() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((k, g));
            }
        }
        if f.deg() > 0 {
            out.push((f.deg(), f));
        }
        out
    }

    fn factor_degrees(&self) -> Vec<usize> {
        self.ddf()
            .into_iter()
            .flat_map(|(k, g)| std::iter::repeat_n(k, g.deg() / k))
            .collect()
    }

    /// Complete factorization into monic irreducibles (odd `p`).
    fn factor(&self, rng: &mut ChaCha8Rng) -> Vec<Self> {
        let mut out = Vec::new();
        for (k, g) in self.ddf() {
            self.edf(g, k, rng, &mut out);
        }
        out
    }

    /// Cantor–Zassenhaus equal-degree splitting.
    fn edf(&self, g: Self, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Self>) {
        if g.deg() == k {
            out.push(g);
            return;
        }
        let p = self.p;
        let exp = (num_traits::pow(BigUint::from(p), k) - 1u32) / 2u32;
        loop {
            let a = Self::new(p, (0..g.deg()).map(|_| rng.random_range(0..p)).collect());
            if a.deg() < 1 {
                continue;
            }
            let b = a.pow_mod(&exp, &g).sub(&Self::one(p));
            let d = b.gcd(&g);
            if d.deg() > 0 && d.deg() < g.deg() {
                let e = g.div_rem(&d).0;
                self.edf(d, k, rng, out);
                self.edf(e.monic(), k, rng, out);
                return;
            }
        }
    }
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % m;
        }
        a = a * a % m;
        e >>= 1;
    }
    r
}
