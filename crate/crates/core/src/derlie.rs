//! Derivations of structure-constant algebras.
//!
//! A linear map `δ` is stored as the matrix `[δ]` with `δ(V) = [δ]V` on the
//! basis column `V = (e_1, …, e_n)ᵀ`, i.e. row `i` holds the coordinates of
//! `δ(e_i)`. Under this convention composition reverses matrix products:
//! `δ_M ∘ δ_L` has matrix `L·M`.

use crate::algebra::StructureAlgebra;
use crate::dfield::{DifferentialField, Field};
use crate::error::Result;
use crate::exactla::{matrix_inverse, solve_affine, AffineMatrixSpace, Matrix};

/// Coefficient matrix of the Leibniz conditions on an unknown `N`.
///
/// Unknowns are the entries of `N` in row-major order; equations are
/// ordered by `(i, j, l)` and read
/// `Σ_m N_im c_mjl + Σ_m N_jm c_iml − Σ_m c_ijm N_ml`.
pub fn leibniz_system<K: Field>(k: &K, alg: &StructureAlgebra<K::Elem>) -> Matrix<K::Elem> {
    let n = alg.dim();
    let mut sys = Matrix::zeros(k, n * n * n, n * n);
    let bump = |sys: &mut Matrix<K::Elem>, row: usize, col: usize, v: &K::Elem, negate: bool| {
        if k.is_zero(v) {
            return;
        }
        let cur = sys.get(row, col);
        let next = if negate { k.sub(cur, v) } else { k.add(cur, v) };
        sys.set(row, col, next);
    };
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let row = (i * n + j) * n + l;
                for m in 0..n {
                    bump(&mut sys, row, i * n + m, alg.c(m, j, l), false);
                    bump(&mut sys, row, j * n + m, alg.c(i, m, l), false);
                    bump(&mut sys, row, m * n + l, alg.c(i, j, m), true);
                }
            }
        }
    }
    sys
}

/// Entrywise derivative of the structure constants, in equation order.
pub fn leibniz_rhs<K: DifferentialField>(k: &K, alg: &StructureAlgebra<K::Elem>) -> Vec<K::Elem> {
    alg.constants().iter().map(|c| k.derive(c)).collect()
}

fn unflatten<K: Field>(n: usize, v: Vec<K::Elem>) -> Matrix<K::Elem> {
    Matrix::from_vec(n, n, v).expect("n*n entries")
}

/// The Lie algebra of the automorphism scheme, realized as the space of
/// `K`-linear derivations (point zero plus a canonical basis).
pub fn lie_algebra<K: Field>(k: &K, alg: &StructureAlgebra<K::Elem>) -> AffineMatrixSpace<K::Elem> {
    let n = alg.dim();
    let sys = leibniz_system(k, alg);
    let zeros = vec![k.zero(); sys.rows()];
    let sol = solve_affine(k, &sys, &zeros)
        .expect("dimensions match")
        .expect("homogeneous systems are consistent");
    let basis = sol.basis.into_iter().map(|v| unflatten::<K>(n, v)).collect();
    AffineMatrixSpace::linear(k, n, basis).expect("square matrices")
}

/// All derivations `δ` of `B` extending the derivation of the coefficient
/// field, as matrices `N` with `δ(w) = N w` on `B`'s basis. Empty when no
/// extension exists.
pub fn direct_extension_space<K: DifferentialField>(
    k: &K,
    alg: &StructureAlgebra<K::Elem>,
) -> AffineMatrixSpace<K::Elem> {
    let n = alg.dim();
    let sys = leibniz_system(k, alg);
    let rhs = leibniz_rhs(k, alg);
    match solve_affine(k, &sys, &rhs).expect("dimensions match") {
        None => AffineMatrixSpace::empty(n),
        Some(sol) => AffineMatrixSpace::new(
            k,
            n,
            Some(unflatten::<K>(n, sol.point)),
            sol.basis.into_iter().map(|v| unflatten::<K>(n, v)).collect(),
        )
        .expect("square matrices"),
    }
}

/// `a + bε` in `A[ε]`, `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNumberElement<T> {
    pub a: Vec<T>,
    pub b: Vec<T>,
}

impl<T: Clone + PartialEq> DualNumberElement<T> {
    /// `(a + bε)(c + dε) = ac + (ad + bc)ε`.
    pub fn mul<K: Field<Elem = T>>(&self, k: &K, alg: &StructureAlgebra<T>, other: &Self) -> Result<Self> {
        let ac = alg.multiply(k, &self.a, &other.a)?;
        let ad = alg.multiply(k, &self.a, &other.b)?;
        let bc = alg.multiply(k, &self.b, &other.a)?;
        Ok(DualNumberElement {
            a: ac,
            b: ad.iter().zip(&bc).map(|(x, y)| k.add(x, y)).collect(),
        })
    }
}

/// Whether `a ↦ a + δ_M(a)ε`, extended `K[ε]`-linearly, is multiplicative on
/// `A[ε]`. Checked by dual-number multiplication, independently of
/// [`leibniz_system`].
pub fn dual_number_check<K: Field>(k: &K, alg: &StructureAlgebra<K::Elem>, m: &Matrix<K::Elem>) -> bool {
    let n = alg.dim();
    if m.rows() != n || m.cols() != n {
        return false;
    }
    let phi = |coords: &[K::Elem]| DualNumberElement {
        a: coords.to_vec(),
        b: m.left_apply(k, coords),
    };
    let images: Vec<_> = (0..n).map(|i| phi(&alg.basis_element(k, i))).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = phi(alg.product_of_basis(i, j));
            let rhs = images[i].mul(k, alg, &images[j]).expect("sizes match");
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Whether `φ(V) = QV` is a unital algebra automorphism.
pub fn is_algebra_automorphism<K: Field>(k: &K, alg: &StructureAlgebra<K::Elem>, q: &Matrix<K::Elem>) -> bool {
    let n = alg.dim();
    q.rows() == n && q.cols() == n && matrix_inverse(k, q).is_ok() && is_unital_homomorphism(k, alg, q)
}

/// Whether `φ(V) = QV` preserves products and the unit; `Q` must be `n×n`.
pub fn is_unital_homomorphism<K: Field>(k: &K, alg: &StructureAlgebra<K::Elem>, q: &Matrix<K::Elem>) -> bool {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = q.left_apply(k, alg.product_of_basis(i, j));
            let rhs = alg.multiply(k, q.row(i), q.row(j)).expect("sizes match");
            if lhs != rhs {
                return false;
            }
        }
    }
    q.left_apply(k, alg.unit()) == alg.unit()
}

/// Matrix of the commutator `[δ_{M1}, δ_{M2}] = δ_{M1}δ_{M2} − δ_{M2}δ_{M1}`,
/// which is `M2·M1 − M1·M2` under the row-acting convention.
pub fn bracket<K: Field>(k: &K, m1: &Matrix<K::Elem>, m2: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    m2.mul(k, m1).sub(k, &m1.mul(k, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, matrix_algebra, quaternion, split_etale};
    use crate::dfield::{parse_element, ExtensionField, RatFunc, RationalFunctions, Rationals};

    #[test]
    fn lie_dimensions() {
        let q = Rationals;
        assert_eq!(lie_algebra(&q, &split_etale(2)).dimension(), Some(0));
        assert_eq!(lie_algebra(&q, &matrix_algebra(2)).dimension(), Some(3));
        assert_eq!(lie_algebra(&q, &dual_numbers()).dimension(), Some(1));
    }

    #[test]
    fn dual_number_examples() {
        let q = Rationals;
        let m2 = matrix_algebra(2);
        assert!(dual_number_check(&q, &m2, &Matrix::zeros(&q, 4, 4)));
        assert!(!dual_number_check(&q, &m2, &Matrix::identity(&q, 4)));
        for b in lie_algebra(&q, &m2).basis() {
            assert!(dual_number_check(&q, &m2, b));
        }
        // δ(x) = x on Q[x]/(x^2)
        let d = Matrix::diagonal(&q, vec![q.zero(), q.one()]);
        assert!(dual_number_check(&q, &dual_numbers(), &d));
    }

    #[test]
    fn automorphism_examples() {
        let q = Rationals;
        let et = split_etale(2);
        assert!(is_algebra_automorphism(&q, &et, &Matrix::identity(&q, 2)));
        let swap = Matrix::from_rows(vec![vec![q.zero(), q.one()], vec![q.one(), q.zero()]]).unwrap();
        assert!(is_algebra_automorphism(&q, &et, &swap));
        let flip = Matrix::diagonal(&q, vec![q.one(), q.from_int(-1)]);
        assert!(!is_algebra_automorphism(&q, &et, &flip));
        assert!(!is_algebra_automorphism(&q, &et, &Matrix::zeros(&q, 2, 2)));
    }

    #[test]
    fn bracket_closes() {
        let q = Rationals;
        let g = lie_algebra(&q, &matrix_algebra(2));
        for a in g.basis() {
            for b in g.basis() {
                assert!(g.contains(&q, &bracket(&q, a, b)));
            }
        }
    }

    #[test]
    fn direct_space_quadratic_field() {
        // F[x]/(x^2 - t) on the basis 1, x: δ(x) = x/(2t)
        let f = RationalFunctions;
        let e = split_etale(2).scalar_extend(&f);
        let mut c = vec![f.zero(); 8];
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        c[idx(0, 0, 0)] = f.one();
        c[idx(0, 1, 1)] = f.one();
        c[idx(1, 0, 1)] = f.one();
        c[idx(1, 1, 0)] = RatFunc::t();
        let b = StructureAlgebra::new(2, c, vec![f.one(), f.zero()]).unwrap();
        let space = direct_extension_space(&f, &b);
        assert_eq!(space.dimension(), Some(0));
        let p = |s| parse_element(&f, s).unwrap();
        assert_eq!(space.point().unwrap(), &Matrix::diagonal(&f, vec![p("0"), p("1/(2*t)")]));

        // constant structure constants give a homogeneous system
        let s = direct_extension_space(&f, &e);
        assert_eq!(s.dimension(), Some(0));
        assert!(s.point().unwrap().is_zero(&f));
    }

    #[test]
    fn direct_space_quaternion() {
        let f = RationalFunctions;
        let b = quaternion(&f, &RatFunc::t(), &RatFunc::from_int(-1));
        let space = direct_extension_space(&f, &b);
        assert_eq!(space.dimension(), Some(3));
        let p = |s| parse_element(&f, s).unwrap();
        let expected = Matrix::diagonal(&f, vec![p("0"), p("1/(2*t)"), p("0"), p("1/(2*t)")]);
        assert!(space.contains(&f, &expected));
        assert!(affine_equal_homogeneous(&f, &space, &lie_algebra(&f, &b)));
    }

    fn affine_equal_homogeneous(
        f: &RationalFunctions,
        s: &AffineMatrixSpace<RatFunc>,
        g: &AffineMatrixSpace<RatFunc>,
    ) -> bool {
        crate::exactla::affine_equal(f, &s.homogeneous(f), g)
    }

    #[test]
    fn lie_algebra_over_extension() {
        let e = ExtensionField::quadratic("s", RatFunc::t()).unwrap();
        assert_eq!(lie_algebra(&e, &matrix_algebra(2).scalar_extend(&e)).dimension(), Some(3));
    }
}
