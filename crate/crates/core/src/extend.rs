//! Derivations of a twisted form extending `d/dt`, computed two ways.
//!
//! The formula path parameterizes `N = P⁻¹MP + (P⁻¹)'P` over `M` in the Lie
//! algebra of `A ⊗ E` and keeps the matrices with entries in `F`. The direct
//! path solves the Leibniz conditions on `B` over `F` without reference to
//! `P`. Both return canonical [`AffineMatrixSpace`]s, so agreement is a
//! representation comparison.

use crate::algebra::StructureAlgebra;
use crate::derlie::{direct_extension_space, lie_algebra};
use crate::descent::{build_twisted_form, CocycleData, TwistedForm};
use crate::dfield::{derive_base, ExtElem, Field, RatFunc, Rational, RationalFunctions};
use crate::error::Result;
use crate::exactla::{affine_equal, matrix_derive, solve_affine, AffineMatrixSpace, Matrix};

#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    algebra: StructureAlgebra<Rational>,
    cocycle: CocycleData,
    algebra_e: StructureAlgebra<ExtElem>,
    twisted: TwistedForm,
    lie_e: AffineMatrixSpace<ExtElem>,
}

impl ExtensionProblem {
    /// Validates the cocycle and builds the twisted form.
    pub fn new(algebra: StructureAlgebra<Rational>, cocycle: CocycleData) -> Result<Self> {
        let twisted = build_twisted_form(&algebra, &cocycle)?;
        let algebra_e = algebra.scalar_extend(cocycle.field());
        let lie_e = lie_algebra(cocycle.field(), &algebra_e);
        Ok(ExtensionProblem {
            algebra,
            cocycle,
            algebra_e,
            twisted,
            lie_e,
        })
    }

    pub fn algebra(&self) -> &StructureAlgebra<Rational> {
        &self.algebra
    }

    pub fn algebra_e(&self) -> &StructureAlgebra<ExtElem> {
        &self.algebra_e
    }

    pub fn cocycle(&self) -> &CocycleData {
        &self.cocycle
    }

    pub fn twisted(&self) -> &StructureAlgebra<RatFunc> {
        &self.twisted.algebra
    }

    pub fn lie_e(&self) -> &AffineMatrixSpace<ExtElem> {
        &self.lie_e
    }
}

/// `{P⁻¹MP + (P⁻¹)'P : M ∈ 𝔤_E} ∩ M_n(F)`.
///
/// Writing `M = Σ λ_i M_i` with `λ_i = Σ_k λ_ik θ^k`, every entry of `N` is
/// affine in the `r·d` unknowns `λ_ik ∈ F`; requiring its `θ^1 … θ^{d-1}`
/// coordinates to vanish is a linear system over `F`.
pub fn formula_extension_space(p: &ExtensionProblem) -> AffineMatrixSpace<RatFunc> {
    let e = p.cocycle.field();
    let f = RationalFunctions;
    let n = p.algebra.dim();
    let d = e.degree();
    let p_inv = p.cocycle.p_inv();
    let p_mat = p.cocycle.p();

    let offset = matrix_derive(e, p_inv).mul(e, p_mat);
    let theta = e.generator();
    let powers: Vec<ExtElem> = (0..d).map(|k| e.pow(&theta, k as u32)).collect();
    let generators: Vec<Matrix<ExtElem>> = p
        .lie_e
        .basis()
        .iter()
        .flat_map(|m| {
            let conj = p_inv.mul(e, m).mul(e, p_mat);
            powers.iter().map(move |pw| conj.scale(e, pw)).collect::<Vec<_>>()
        })
        .collect();
    let unknowns = generators.len();

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for entry in 0..n * n {
        for l in 1..d {
            rows.push(
                generators
                    .iter()
                    .map(|g| g.entries()[entry].coeffs()[l].clone())
                    .collect::<Vec<_>>(),
            );
            rhs.push(-&offset.entries()[entry].coeffs()[l]);
        }
    }
    let system = Matrix::from_vec(rows.len(), unknowns, rows.into_iter().flatten().collect())
        .expect("rectangular system");
    let Some(sol) = solve_affine(&f, &system, &rhs).expect("dimensions match") else {
        return AffineMatrixSpace::empty(n);
    };

    let rational_image = |lambda: &[RatFunc], base: Option<&Matrix<ExtElem>>| -> Matrix<RatFunc> {
        let entries = (0..n * n)
            .map(|entry| {
                let start = base.map_or_else(RatFunc::zero, |b| b.entries()[entry].coeffs()[0].clone());
                generators.iter().zip(lambda).fold(start, |acc, (g, x)| {
                    if x.is_zero() {
                        acc
                    } else {
                        &acc + &(x * &g.entries()[entry].coeffs()[0])
                    }
                })
            })
            .collect();
        Matrix::from_vec(n, n, entries).expect("n*n entries")
    };
    let point = rational_image(&sol.point, Some(&offset));
    let basis = sol.basis.iter().map(|h| rational_image(h, None)).collect();
    AffineMatrixSpace::new(&f, n, Some(point), basis).expect("square matrices")
}

/// `δ(Σ x_i w_i) = Σ x_i' w_i + x_i δ(w_i)` where `δ(w) = N w`.
pub fn apply_extending_derivation(n: &Matrix<RatFunc>, x: &[RatFunc]) -> Vec<RatFunc> {
    let f = RationalFunctions;
    let from_basis = n.left_apply(&f, x);
    x.iter().zip(from_basis).map(|(xi, b)| &derive_base(xi) + &b).collect()
}

/// Whether `δ(w) = N w`, extended by the derivation of `F`, satisfies the
/// Leibniz rule on every pair of basis elements of `B`.
pub fn verify_derivation(b: &StructureAlgebra<RatFunc>, n: &Matrix<RatFunc>) -> bool {
    let f = RationalFunctions;
    let dim = b.dim();
    if n.rows() != dim || n.cols() != dim {
        return false;
    }
    let basis: Vec<Vec<RatFunc>> = (0..dim).map(|i| b.basis_element(&f, i)).collect();
    for i in 0..dim {
        for j in 0..dim {
            let lhs = apply_extending_derivation(n, b.product_of_basis(i, j));
            let left = b.multiply(&f, n.row(i), &basis[j]).expect("sizes match");
            let right = b.multiply(&f, &basis[i], n.row(j)).expect("sizes match");
            let rhs: Vec<RatFunc> = left.iter().zip(&right).map(|(x, y)| x + y).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct CrossReport {
    pub formula: AffineMatrixSpace<RatFunc>,
    pub direct: AffineMatrixSpace<RatFunc>,
    pub derivations_b: AffineMatrixSpace<RatFunc>,
    /// Formula space and direct space are equal as sets.
    pub bijection: bool,
    /// Both spaces are nonempty: some derivation of `B` extends `d/dt`.
    pub nonempty: bool,
    /// The direction space of the formula space is `Der_F(B)`.
    pub homogeneous: bool,
}

impl CrossReport {
    pub fn passed(&self) -> bool {
        self.bijection && self.nonempty && self.homogeneous
    }
}

pub fn cross_validate(p: &ExtensionProblem) -> CrossReport {
    let f = RationalFunctions;
    let b = p.twisted();
    let formula = formula_extension_space(p);
    let direct = direct_extension_space(&f, b);
    let derivations_b = lie_algebra(&f, b);
    let bijection = affine_equal(&f, &formula, &direct);
    let nonempty = !formula.is_empty() && !direct.is_empty();
    let homogeneous = !formula.is_empty() && affine_equal(&f, &formula.homogeneous(&f), &derivations_b);
    CrossReport {
        formula,
        direct,
        derivations_b,
        bijection,
        nonempty,
        homogeneous,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, matrix_algebra, split_etale};
    use crate::dfield::{parse_element, ExtensionField};

    fn sqrt_t() -> ExtensionField {
        ExtensionField::quadratic("s", RatFunc::t()).unwrap()
    }

    fn mat(e: &ExtensionField, rows: &[&[&str]]) -> Matrix<ExtElem> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_element(e, s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn etale_quadratic_single_point() {
        let e = sqrt_t();
        let cd = CocycleData::new(e.clone(), mat(&e, &[&["1", "1"], &["s", "-s"]])).unwrap();
        let p = ExtensionProblem::new(split_etale(2), cd).unwrap();
        let space = formula_extension_space(&p);
        let f = RationalFunctions;
        let expected = Matrix::diagonal(&f, vec![f.zero(), parse_element(&f, "1/(2*t)").unwrap()]);
        assert_eq!(space.dimension(), Some(0));
        assert_eq!(space.point(), Some(&expected));
        let report = cross_validate(&p);
        assert!(report.passed());
        assert!(verify_derivation(p.twisted(), &expected));
        let mut bumped = expected.clone();
        bumped.set(0, 0, f.one());
        assert!(!verify_derivation(p.twisted(), &bumped));
    }

    #[test]
    fn trivial_cocycles_collapse() {
        let f = RationalFunctions;
        for a in [split_etale(2), matrix_algebra(2), dual_numbers()] {
            let n = a.dim();
            let p = ExtensionProblem::new(a.clone(), CocycleData::trivial(sqrt_t(), n)).unwrap();
            let space = formula_extension_space(&p);
            assert!(space.point().unwrap().is_zero(&f));
            assert!(affine_equal(&f, &space, &direct_extension_space(&f, &a.scalar_extend(&f))));
        }
    }

    #[test]
    fn quaternion_positive_dimension() {
        let e = sqrt_t();
        let p_inv = mat(
            &e,
            &[&["1", "0", "0", "1"], &["s", "0", "0", "-s"], &["0", "-1", "1", "0"], &["0", "-s", "-s", "0"]],
        );
        let p = ExtensionProblem::new(matrix_algebra(2), CocycleData::new(e, p_inv).unwrap()).unwrap();
        let report = cross_validate(&p);
        assert!(report.passed());
        assert_eq!(report.formula.dimension(), Some(3));
        assert!(verify_derivation(p.twisted(), report.formula.point().unwrap()));
    }
}
