//! Dense univariate polynomials, lowest degree first.
//!
//! The free functions work over any [`Field`] context and back both the
//! polynomial ring `Q[t]` (through [`Polynomial`]) and `F[x]`, the ring the
//! extension arithmetic reduces in. A trimmed coefficient vector never ends
//! in zero; the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, Rational, Rationals};
use crate::error::{Error, Result};

pub fn trim<K: Field>(k: &K, mut a: Vec<K::Elem>) -> Vec<K::Elem> {
    while a.last().is_some_and(|c| k.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn add<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = k.add(o, s);
    }
    trim(k, out)
}

pub fn neg<K: Field>(k: &K, a: &[K::Elem]) -> Vec<K::Elem> {
    a.iter().map(|c| k.neg(c)).collect()
}

pub fn sub<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    add(k, a, &neg(k, b))
}

pub fn scale<K: Field>(k: &K, a: &[K::Elem], s: &K::Elem) -> Vec<K::Elem> {
    if k.is_zero(s) {
        return Vec::new();
    }
    trim(k, a.iter().map(|c| k.mul(c, s)).collect())
}

pub fn mul<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if k.is_zero(y) {
                continue;
            }
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

/// Euclidean division `a = q*b + r` with `deg r < deg b`.
pub fn divrem<K: Field>(
    k: &K,
    a: &[K::Elem],
    b: &[K::Elem],
) -> Result<(Vec<K::Elem>, Vec<K::Elem>)> {
    let b = trim(k, b.to_vec());
    let Some(lead) = b.last() else {
        return Err(Error::DivisionByZero);
    };
    let lead_inv = k.inv(lead)?;
    let mut rem = trim(k, a.to_vec());
    if rem.len() < b.len() {
        return Ok((Vec::new(), rem));
    }
    let mut quot = vec![k.zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = k.mul(rem.last().expect("nonempty"), &lead_inv);
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] = k.sub(&rem[shift + i], &k.mul(&factor, c));
        }
        // the leading term cancels exactly
        rem.pop();
        quot[shift] = factor;
        rem = trim(k, rem);
    }
    Ok((trim(k, quot), rem))
}

pub fn monic<K: Field>(k: &K, a: &[K::Elem]) -> Vec<K::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(k, a, &k.inv(lc).expect("nonzero leading coefficient")),
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let mut x = trim(k, a.to_vec());
    let mut y = trim(k, b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(k, &x, &y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    monic(k, &x)
}

/// Returns `(g, s, u)` with `s*a + u*b = g` and `g` the monic gcd.
pub fn ext_gcd<K: Field>(
    k: &K,
    a: &[K::Elem],
    b: &[K::Elem],
) -> (Vec<K::Elem>, Vec<K::Elem>, Vec<K::Elem>) {
    let (mut r0, mut r1) = (trim(k, a.to_vec()), trim(k, b.to_vec()));
    let (mut s0, mut s1) = (vec![k.one()], Vec::new());
    let (mut u0, mut u1) = (Vec::new(), vec![k.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1).expect("nonzero divisor");
        let s2 = sub(k, &s0, &mul(k, &q, &s1));
        let u2 = sub(k, &u0, &mul(k, &q, &u1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        u0 = std::mem::replace(&mut u1, u2);
    }
    match r0.last() {
        None => (Vec::new(), s0, u0),
        Some(lc) => {
            let lc_inv = k.inv(lc).expect("nonzero leading coefficient");
            (
                scale(k, &r0, &lc_inv),
                scale(k, &s0, &lc_inv),
                scale(k, &u0, &lc_inv),
            )
        }
    }
}

/// Formal derivative with respect to the polynomial variable.
pub fn formal_derivative<K: Field>(k: &K, a: &[K::Elem]) -> Vec<K::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(&k.from_int(i as i64), c))
        .collect();
    trim(k, out)
}

/// Horner evaluation of `a` at a point of any field `L` the coefficients
/// embed into.
pub fn eval_in<K: Field, L: Field>(
    target: &L,
    embed: impl Fn(&K::Elem) -> L::Elem,
    a: &[K::Elem],
    x: &L::Elem,
) -> L::Elem {
    a.iter()
        .rev()
        .fold(target.zero(), |acc, c| target.add(&target.mul(&acc, x), &embed(c)))
}

fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(mut a: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&a);
    if !g.is_zero() && !g.is_one() {
        for c in a.iter_mut() {
            *c /= &g;
        }
    }
    a
}

/// Gcd of nonzero primitive integer polynomials up to a constant factor,
/// by the primitive pseudo-remainder sequence. Avoids rational
/// normalization in the inner loop.
fn primitive_prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // pseudo-remainder of a by b
        let lb = b.last().expect("nonzero").clone();
        while a.len() >= b.len() {
            let la = a.last().expect("nonzero").clone();
            let shift = a.len() - b.len();
            for c in a.iter_mut() {
                *c *= &lb;
            }
            for (i, c) in b.iter().enumerate() {
                a[shift + i] -= &la * c;
            }
            a.pop();
            while a.last().is_some_and(Zero::is_zero) {
                a.pop();
            }
        }
        a = primitive_part(a);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

const PRIME: u64 = (1 << 61) - 1;

/// Reduction modulo the Mersenne prime `2^61 - 1` by folding.
fn fold(x: u128) -> u64 {
    let p = PRIME as u128;
    let r = (x & p) + (x >> 61);
    let r = (r & p) + (r >> 61);
    (if r >= p { r - p } else { r }) as u64
}

fn mul_mod(a: u64, b: u64) -> u64 {
    fold(a as u128 * b as u128)
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, PRIME - 2, 1);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn int_mod(c: &BigInt) -> u64 {
    // 2^64 ≡ 8
    let mag = c
        .magnitude()
        .iter_u64_digits()
        .rev()
        .fold(0u64, |acc, d| fold(acc as u128 * 8 + d as u128));
    if c.is_negative() && mag != 0 {
        PRIME - mag
    } else {
        mag
    }
}

fn reduce_mod(a: &[Rational]) -> Option<Vec<u64>> {
    a.iter()
        .map(|c| {
            let n = int_mod(c.numer());
            if c.denom().is_one() {
                return Some(n);
            }
            let d = int_mod(c.denom());
            (d != 0).then(|| mul_mod(n, inv_mod(d)))
        })
        .collect()
}

/// Degree of `gcd(a, b)` modulo a 61-bit prime: an upper bound for the
/// degree over `Q`. `None` when the reduction loses a leading coefficient
/// or a denominator.
fn modular_gcd_degree(a: &[Rational], b: &[Rational]) -> Option<usize> {
    let mut a = reduce_mod(a)?;
    let mut b = reduce_mod(b)?;
    if a.last() == Some(&0) || b.last() == Some(&0) {
        return None;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lb_inv = inv_mod(*b.last().expect("nonzero"));
        while a.len() >= b.len() {
            let q = mul_mod(*a.last().expect("nonzero"), lb_inv);
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                let sub = mul_mod(q, *c);
                a[shift + i] = (a[shift + i] + PRIME - sub) % PRIME;
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len() - 1)
}

/// Polynomial in `t` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Polynomial {
            coeffs: trim(&Rationals, coeffs),
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Polynomial {
            coeffs: scale(&Rationals, &self.coeffs, s),
        }
    }

    pub fn monic(&self) -> Self {
        Polynomial {
            coeffs: monic(&Rationals, &self.coeffs),
        }
    }

    pub fn divrem(&self, other: &Self) -> Result<(Self, Self)> {
        let (q, r) = divrem(&Rationals, &self.coeffs, &other.coeffs)?;
        Ok((Polynomial { coeffs: q }, Polynomial { coeffs: r }))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() || modular_gcd_degree(&self.coeffs, &other.coeffs) == Some(0) {
            return Self::one();
        }
        let g = primitive_prs_gcd(self.primitive_integral(), other.primitive_integral());
        Polynomial::new(g.into_iter().map(Rational::from_integer).collect()).monic()
    }

    /// `(l, c)` with `self = c / l`, `c` integral.
    fn integral(&self) -> (BigInt, Vec<BigInt>) {
        let l = self.denominator_lcm();
        let ints = self
            .coeffs
            .iter()
            .map(|c| if c.denom().is_one() { c.numer() * &l } else { c.numer() * (&l / c.denom()) })
            .collect();
        (l, ints)
    }

    /// Integral primitive polynomial proportional to `self` (nonzero).
    fn primitive_integral(&self) -> Vec<BigInt> {
        primitive_part(self.integral().1)
    }

    pub fn derivative(&self) -> Self {
        Polynomial {
            coeffs: formal_derivative(&Rationals, &self.coeffs),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        eval_in::<Rationals, Rationals>(&Rationals, Clone::clone, &self.coeffs, x)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Least common multiple of the coefficient denominators.
    pub(crate) fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            if c.denom().is_one() || (&acc % c.denom()).is_zero() {
                acc
            } else {
                acc.lcm(c.denom())
            }
        })
    }

    /// Gcd of the coefficient numerators (meaningful for integral polynomials).
    pub(crate) fn numerator_gcd(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    /// Writes the polynomial in `t`, highest degree first.
    pub(crate) fn write_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "t")?;
                    if deg > 1 {
                        write!(f, "^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of nonzero terms.
    pub(crate) fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial {
            coeffs: add(&Rationals, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial {
            coeffs: sub(&Rationals, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if self.coeffs.len() == 1 || rhs.coeffs.len() == 1 {
            return Polynomial {
                coeffs: mul(&Rationals, &self.coeffs, &rhs.coeffs),
            };
        }
        // integer convolution over a common denominator: one reduction per
        // output coefficient instead of one per term
        let (la, a) = self.integral();
        let (lb, b) = rhs.integral();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let l = la * lb;
        Polynomial {
            coeffs: out.into_iter().map(|c| Rational::new(c, l.clone())).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: neg(&Rationals, &self.coeffs),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn modular_degree_bounds_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(modular_gcd_degree(a.coeffs(), b.coeffs()), Some(1));
        assert_eq!(modular_gcd_degree(p(&[1, 1]).coeffs(), p(&[-1, 1]).coeffs()), Some(0));
        let big = BigInt::from(PRIME) * 3 + 5;
        assert_eq!(int_mod(&big), 5);
        assert_eq!(int_mod(&-big), PRIME - 5);
    }

    #[test]
    fn zero_is_empty() {
        assert!(p(&[0, 0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!((&p(&[1, 2]) - &p(&[1, 2])).coeffs().len(), 0);
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 0, 0, 2, 5]);
        let b = p(&[3, -1, 2]);
        let (q, r) = a.divrem(&b).unwrap();
        assert!(r.degree() < b.degree());
        assert_eq!(&(&q * &b) + &r, a);
        assert_eq!(a.divrem(&Polynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_is_monic() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[-3, 1]);
        assert_eq!(a.scale(&Rational::from_integer(7.into())).gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[2]).gcd(&p(&[0, 3])), p(&[1]));
    }

    #[test]
    fn ext_gcd_bezout() {
        let k = Rationals;
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 1]);
        let (g, s, u) = ext_gcd(&k, a.coeffs(), b.coeffs());
        let lhs = add(&k, &mul(&k, &s, a.coeffs()), &mul(&k, &u, b.coeffs()));
        assert_eq!(lhs, g);
        assert_eq!(g, p(&[1]).coeffs().to_vec());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, -2, 1]).to_string(), "t^2 - 2*t - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
