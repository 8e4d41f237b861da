//! Exact arithmetic for the differential field `F = Q(t)` (with `t' = 1` and
//! constants `Q`) and for finite Galois extensions `E = F[x]/(m(x))`.
//!
//! Arithmetic is exposed through field *contexts*: a value implementing
//! [`Field`] owns whatever is needed to combine elements (for extensions,
//! the minimal polynomial), while elements themselves are plain data.

mod expr;
mod extension;
pub mod poly;
mod ratfunc;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use expr::{parse_element, Expr, Symbols};
pub use extension::{ExtElem, ExtensionField};
pub use poly::Polynomial;
pub use ratfunc::RatFunc;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// A field of characteristic zero presented as a context object.
pub trait Field {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Canonical image of `Q`.
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Textual form accepted back by [`parse_element`] in this context.
    fn render(&self, a: &Self::Elem) -> String;

    fn from_int(&self, i: i64) -> Self::Elem {
        self.from_rational(&Rational::from_integer(BigInt::from(i)))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut exp: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A field with a derivation.
pub trait DifferentialField: Field {
    fn derive(&self, a: &Self::Elem) -> Self::Elem;
}

/// The constant field `Q`, with the zero derivation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn render(&self, a: &Rational) -> String {
        a.to_string()
    }
}

impl DifferentialField for Rationals {
    fn derive(&self, _a: &Rational) -> Rational {
        Rational::zero()
    }
}

/// The base differential field `F = Q(t)` with `t' = 1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalFunctions;

impl Field for RationalFunctions {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::zero()
    }

    fn one(&self) -> RatFunc {
        RatFunc::one()
    }

    fn from_rational(&self, q: &Rational) -> RatFunc {
        RatFunc::constant(q.clone())
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a + b
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        -a
    }

    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a - b
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a * b
    }

    fn inv(&self, a: &RatFunc) -> Result<RatFunc> {
        a.recip()
    }

    fn render(&self, a: &RatFunc) -> String {
        a.to_string()
    }
}

impl DifferentialField for RationalFunctions {
    fn derive(&self, a: &RatFunc) -> RatFunc {
        derive_base(a)
    }
}

/// `f'` under `d/dt`, extended to quotients by the quotient rule.
pub fn derive_base(f: &RatFunc) -> RatFunc {
    f.derivative()
}
