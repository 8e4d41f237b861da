//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistder::dfield::{ExtElem, ExtensionField, Field, Polynomial, RatFunc, Rational};
use twistder::exactla::Matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=3);
    Rational::new(num.into(), den.into())
}

pub fn small_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Polynomial {
    let deg = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=deg).map(|_| small_rational(rng)).collect())
}

pub fn rat_func(rng: &mut ChaCha8Rng) -> RatFunc {
    let num = small_poly(rng, 2);
    let den = loop {
        let d = small_poly(rng, 2);
        if !d.is_zero() {
            break d;
        }
    };
    RatFunc::new(num, den).expect("nonzero denominator")
}

pub fn ext_elem(e: &ExtensionField, rng: &mut ChaCha8Rng) -> ExtElem {
    e.element((0..e.degree()).map(|_| rat_func(rng)).collect())
}

pub fn nonzero_ext_elem(e: &ExtensionField, rng: &mut ChaCha8Rng) -> ExtElem {
    loop {
        let x = ext_elem(e, rng);
        if !e.is_zero(&x) {
            return x;
        }
    }
}

pub fn rational_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    let entries = (0..n * n).map(|_| Rational::from_integer(rng.gen_range(-3..=3).into())).collect();
    Matrix::from_vec(n, n, entries).expect("n*n")
}

pub fn ext_matrix(e: &ExtensionField, rng: &mut ChaCha8Rng, n: usize) -> Matrix<ExtElem> {
    Matrix::from_vec(n, n, (0..n * n).map(|_| ext_elem(e, rng)).collect()).expect("n*n")
}

pub fn sqrt_t() -> ExtensionField {
    ExtensionField::quadratic("s", RatFunc::t()).unwrap()
}

/// `F(θ)`, `θ³ = t`: not Galois over `F`, only the identity.
pub fn cube_root_t() -> ExtensionField {
    let f = twistder::dfield::RationalFunctions;
    let mut m = vec![f.zero(); 4];
    m[0] = -&RatFunc::t();
    m[3] = f.one();
    ExtensionField::new("c", m).unwrap()
}
