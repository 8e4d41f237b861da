use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Element of `Q(t)` in canonical form: monic denominator coprime to the
/// numerator, zero stored as `0/1`. Structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

impl RatFunc {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.divrem(&g).expect("gcd").0, den.divrem(&g).expect("gcd").0)
            }
        };
        RatFunc::normalized(num, den)
    }

    /// Makes the denominator monic; `num/den` must already be in lowest terms.
    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc_inv = den.leading_coeff().expect("nonzero").recip();
        if lc_inv.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc {
                num: num.scale(&lc_inv),
                den: den.scale(&lc_inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn t() -> Self {
        Self::from_poly(Polynomial::t())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Polynomial::from_ints(&[c]))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(num: Polynomial) -> Self {
        RatFunc {
            num,
            den: Polynomial::one(),
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a rational constant, if it is one.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(self.num.coeffs()[0].clone()),
            _ => None,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        RatFunc {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Quotient rule: `(n/d)' = (n'd - nd')/d^2`.
    pub fn derivative(&self) -> Self {
        if self.den.is_constant() {
            return Self::from_poly(self.num.derivative());
        }
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::canonical(top, &self.den * &self.den)
    }

    /// Numerator and denominator scaled by a common rational so that both are
    /// integral with coprime content; the denominator keeps a positive
    /// leading coefficient.
    fn integral_parts(&self) -> (Polynomial, Polynomial) {
        let l = num_integer::Integer::lcm(&self.num.denominator_lcm(), &self.den.denominator_lcm());
        let l = Rational::from_integer(l);
        let num = self.num.scale(&l);
        let den = self.den.scale(&l);
        let g = num_integer::Integer::gcd(&num.numerator_gcd(), &den.numerator_gcd());
        let g = Rational::from_integer(g).recip();
        (num.scale(&g), den.scale(&g))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (num, den) = self.integral_parts();
        if den.is_one() {
            return write!(f, "{num}");
        }
        if num.term_count() > 1 {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        let atomic = den.term_count() == 1 && (den.is_constant() || den.leading_coeff().is_some_and(One::is_one));
        if atomic {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num + &rhs.num, self.den.clone());
        }
        // Henrici: with g = gcd(d1, d2) only g can share factors with the sum
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::normalized(num, &self.den * &rhs.den);
        }
        let d1 = self.den.divrem(&g).expect("gcd").0;
        let d2 = rhs.den.divrem(&g).expect("gcd").0;
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = num.gcd(&g);
        let den = &(&d1 * &d2) * &g;
        if h.is_one() {
            RatFunc::normalized(num, den)
        } else {
            RatFunc::normalized(num.divrem(&h).expect("gcd").0, den.divrem(&h).expect("gcd").0)
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel; both denominators are monic and coprime to their numerators
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &Polynomial, g: &Polynomial| {
            if g.is_one() {
                p.clone()
            } else {
                p.divrem(g).expect("gcd").0
            }
        };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        RatFunc::normalized(num, den)
    }
}
