//! Seeded conjugation cocycles on `M₂` over `F(s)`, `s² = t`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::matrix_algebra;
use crate::descent::CocycleData;
use crate::dfield::{ExtElem, ExtensionField, Polynomial, RatFunc, Rational};
use crate::exactla::{matrix_inverse, Matrix};
use crate::extend::{cross_validate, ExtensionProblem};

use super::Report;

fn sqrt_t() -> ExtensionField {
    ExtensionField::quadratic("s", RatFunc::t()).expect("s^2 - t is separable")
}

fn linear_in_t(rng: &mut ChaCha8Rng) -> RatFunc {
    let mut c = || Rational::from_integer(rng.gen_range(-2..=2).into());
    let (a0, a1) = (c(), c());
    RatFunc::from_poly(Polynomial::new(vec![a0, a1]))
}

/// Draws `Q₀` with entries `a₀ + a₁t + (b₀ + b₁t)s`, coefficients in
/// `{-2..2}`, resampling until it is invertible.
pub fn sample_q0(e: &ExtensionField, rng: &mut ChaCha8Rng) -> Matrix<ExtElem> {
    loop {
        let entries = (0..4)
            .map(|_| {
                let a = linear_in_t(rng);
                let b = linear_in_t(rng);
                e.element(vec![a, b])
            })
            .collect();
        let q0 = Matrix::from_vec(2, 2, entries).expect("2x2");
        if matrix_inverse(e, &q0).is_ok() {
            return q0;
        }
    }
}

/// The first `n` matrices of the corpus for `seed`.
pub fn corpus(n: usize, seed: u64) -> Vec<Matrix<ExtElem>> {
    let e = sqrt_t();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sample_q0(&e, &mut rng)).collect()
}

struct Outcome {
    text: String,
    ok: bool,
}

fn evaluate(e: &ExtensionField, q0: &Matrix<ExtElem>) -> Outcome {
    let q0_text = q0.render(e).join(", ");
    let problem = CocycleData::conjugation(e.clone(), q0)
        .and_then(|cd| ExtensionProblem::new(matrix_algebra(2), cd));
    match problem {
        Err(err) => Outcome {
            text: format!("Q0 = [{q0_text}]: {err}"),
            ok: false,
        },
        Ok(p) => {
            let r = cross_validate(&p);
            let mut failed = Vec::new();
            if !r.bijection {
                failed.push("formula != direct");
            }
            if !r.nonempty {
                failed.push("empty");
            }
            if !r.homogeneous {
                failed.push("homogeneous part != Der(B)");
            }
            let dim = r.formula.dimension().map_or("-".to_string(), |d| d.to_string());
            Outcome {
                text: format!("Q0 = [{q0_text}]: dimension {dim}{}", if failed.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", failed.join(", "))
                }),
                ok: failed.is_empty(),
            }
        }
    }
}

pub fn run_fuzz(n: usize, seed: u64) -> Report {
    let e = sqrt_t();
    let outcomes: Vec<Outcome> = corpus(n, seed).par_iter().map(|q0| evaluate(&e, q0)).collect();
    let mut report = Report::new(format!("fuzz {n} {seed}"));
    let width = n.to_string().len();
    let mut passes = 0;
    for (i, o) in outcomes.iter().enumerate() {
        passes += usize::from(o.ok);
        report.line(format!(
            "instance {:>width$}: {} {}",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.text
        ));
    }
    report.line(format!("{passes}/{n} pass"));
    report.check("all instances pass", passes == n);
    report
}
