//! Galois descent: cocycles presented by a basis-change matrix over `E`,
//! the twisted Galois action, and the descended form `A_f` over `F`.
//!
//! The input is `P⁻¹`, whose rows express the twisted basis `w = P⁻¹V` in
//! terms of `A`'s basis. Maps act on the basis column (`φ(V) = QV`), so
//! invariance of `w` under `a ⊗ x ↦ f_σ(a ⊗ σx)` reads `σ(P⁻¹)·F_σ = P⁻¹`,
//! giving `F_σ = σ(P)·P⁻¹` and the cocycle identity `F_στ = σ(F_τ)·F_σ`.

use crate::algebra::StructureAlgebra;
use crate::derlie::is_unital_homomorphism;
use crate::dfield::{ExtElem, ExtensionField, Field, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::exactla::{matrix_inverse, Matrix};

#[derive(Clone, Debug)]
pub struct CocycleData {
    field: ExtensionField,
    p_inv: Matrix<ExtElem>,
    p: Matrix<ExtElem>,
}

impl CocycleData {
    pub fn new(field: ExtensionField, p_inv: Matrix<ExtElem>) -> Result<Self> {
        if !p_inv.is_square() {
            return Err(Error::Dimension(format!(
                "P_inv must be square, got {}x{}",
                p_inv.rows(),
                p_inv.cols()
            )));
        }
        if !field.is_galois() {
            return Err(Error::InvalidExtension(format!(
                "{} automorphisms attached to a degree-{} extension",
                field.automorphisms().len(),
                field.degree()
            )));
        }
        let p = matrix_inverse(&field, &p_inv)?;
        Ok(CocycleData { field, p_inv, p })
    }

    /// `P⁻¹ = I`: the trivial cocycle.
    pub fn trivial(field: ExtensionField, n: usize) -> Self {
        let id = Matrix::identity(&field, n);
        CocycleData {
            field,
            p_inv: id.clone(),
            p: id,
        }
    }

    /// Twist of `M_k` by conjugation: row `(a, b)` of `P⁻¹` holds the
    /// matrix-unit coordinates of `Q₀⁻¹ E_ab Q₀`. Every such cocycle takes
    /// values in inner automorphisms.
    pub fn conjugation(field: ExtensionField, q0: &Matrix<ExtElem>) -> Result<Self> {
        let q0_inv = matrix_inverse(&field, q0)?;
        let p_inv = conjugation_matrix(&field, &q0_inv, q0);
        Self::new(field, p_inv)
    }

    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    pub fn p_inv(&self) -> &Matrix<ExtElem> {
        &self.p_inv
    }

    pub fn p(&self) -> &Matrix<ExtElem> {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.p_inv.rows()
    }
}

/// Row-convention matrix of `X ↦ L X R` on the matrix units of `M_k`.
pub fn conjugation_matrix<K: Field>(k: &K, left: &Matrix<K::Elem>, right: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    let dim = left.rows();
    let n = dim * dim;
    let mut out = Matrix::zeros(k, n, n);
    // L E_ab R has (c, d) entry L_ca R_bd
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    out.set(a * dim + b, c * dim + d, k.mul(left.get(c, a), right.get(b, d)));
                }
            }
        }
    }
    out
}

/// Entrywise Galois action `σ(M)`.
pub fn apply_to_matrix(field: &ExtensionField, index: usize, m: &Matrix<ExtElem>) -> Result<Matrix<ExtElem>> {
    m.try_map(|x| field.apply_automorphism(index, x))
}

/// `F_σ = σ(P)·P⁻¹` for every automorphism, identity first.
pub fn cocycle_matrices(a_e: &StructureAlgebra<ExtElem>, cd: &CocycleData) -> Result<Vec<Matrix<ExtElem>>> {
    if a_e.dim() != cd.dim() {
        return Err(Error::Dimension(format!(
            "algebra has dimension {} but P_inv is {}x{}",
            a_e.dim(),
            cd.dim(),
            cd.dim()
        )));
    }
    (0..cd.field.automorphisms().len())
        .map(|s| Ok(apply_to_matrix(&cd.field, s, &cd.p)?.mul(&cd.field, &cd.p_inv)))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    /// Automorphism indices whose `F_σ` is not an algebra automorphism.
    pub non_automorphisms: Vec<usize>,
    /// Pairs `(σ, τ)` violating `F_στ = σ(F_τ)·F_σ`.
    pub identity_failures: Vec<(usize, usize)>,
    pub identity_is_trivial: bool,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.non_automorphisms.is_empty() && self.identity_failures.is_empty() && self.identity_is_trivial
    }
}

pub fn validate_cocycle(a_e: &StructureAlgebra<ExtElem>, cd: &CocycleData) -> Result<CocycleReport> {
    check_cocycle(a_e, cd, &cocycle_matrices(a_e, cd)?)
}

fn check_cocycle(
    a_e: &StructureAlgebra<ExtElem>,
    cd: &CocycleData,
    fs: &[Matrix<ExtElem>],
) -> Result<CocycleReport> {
    let e = &cd.field;
    let order = fs.len();
    let mut report = CocycleReport {
        identity_is_trivial: fs[0] == Matrix::identity(e, cd.dim()),
        ..Default::default()
    };
    // F_σ = σ(P)·P⁻¹ is invertible with inverse σ(P⁻¹)·P, so only
    // multiplicativity needs checking
    for (s, f) in fs.iter().enumerate() {
        if !is_unital_homomorphism(e, a_e, f) {
            report.non_automorphisms.push(s);
        }
    }
    // with F_id = I the pairs involving the identity hold automatically
    let first = usize::from(report.identity_is_trivial);
    for s in first..order {
        for t in first..order {
            let st = e.compose(s, t);
            let rhs = apply_to_matrix(e, s, &fs[t])?.mul(e, &fs[s]);
            if fs[st] != rhs {
                report.identity_failures.push((s, t));
            }
        }
    }
    Ok(report)
}

/// `a ⊗ x ↦ f_σ(a ⊗ σx)` on coordinates: `σ(x)ᵀ·F_σ`.
pub fn twisted_action(
    index: usize,
    elem: &[ExtElem],
    a_e: &StructureAlgebra<ExtElem>,
    cd: &CocycleData,
) -> Result<Vec<ExtElem>> {
    let fs = cocycle_matrices(a_e, cd)?;
    let f = fs.get(index).ok_or(Error::AutomorphismIndex { index, order: fs.len() })?;
    act_with(cd, index, f, elem)
}

fn act_with(cd: &CocycleData, index: usize, f: &Matrix<ExtElem>, elem: &[ExtElem]) -> Result<Vec<ExtElem>> {
    let e = &cd.field;
    if elem.len() != cd.dim() {
        return Err(Error::Dimension("element length differs from P_inv size".into()));
    }
    let moved: Vec<ExtElem> = elem
        .iter()
        .map(|x| e.apply_automorphism(index, x))
        .collect::<Result<_>>()?;
    Ok(f.left_apply(e, &moved))
}

/// The descended algebra `B = A_f` over `F` on the basis `w = P⁻¹V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedForm {
    pub algebra: StructureAlgebra<RatFunc>,
    pub p_inv: Matrix<ExtElem>,
}

pub fn build_twisted_form(a: &StructureAlgebra<Rational>, cd: &CocycleData) -> Result<TwistedForm> {
    let e = &cd.field;
    let n = a.dim();
    let a_e = a.scalar_extend(e);
    let fs = cocycle_matrices(&a_e, cd)?;
    let report = check_cocycle(&a_e, cd, &fs)?;
    if !report.passed() {
        return Err(Error::InvalidCocycle(describe_failure(&report)));
    }
    for (s, f) in fs.iter().enumerate() {
        for i in 0..n {
            let w = cd.p_inv.row(i);
            if act_with(cd, s, f, w)? != w {
                return Err(Error::NotInvariant(i + 1));
            }
        }
    }
    let rational = |v: Vec<ExtElem>, what: &dyn Fn(usize) -> (usize, usize, usize)| -> Result<Vec<RatFunc>> {
        v.into_iter()
            .enumerate()
            .map(|(k, x)| {
                x.rational_part().ok_or_else(|| {
                    let (i, j, k) = what(k);
                    Error::NonRational {
                        i,
                        j,
                        k,
                        value: e.render(&x),
                    }
                })
            })
            .collect()
    };
    let mut constants = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let prod = a_e.multiply(e, cd.p_inv.row(i), cd.p_inv.row(j))?;
            let in_w = cd.p.left_apply(e, &prod);
            constants.extend(rational(in_w, &|k| (i + 1, j + 1, k + 1))?);
        }
    }
    let unit = rational(cd.p.left_apply(e, a_e.unit()), &|k| (0, 0, k + 1))?;
    Ok(TwistedForm {
        algebra: StructureAlgebra::new(n, constants, unit)?,
        p_inv: cd.p_inv.clone(),
    })
}

fn describe_failure(report: &CocycleReport) -> String {
    let mut parts = Vec::new();
    if !report.non_automorphisms.is_empty() {
        parts.push(format!("F_σ not an automorphism for σ in {:?}", report.non_automorphisms));
    }
    if !report.identity_failures.is_empty() {
        parts.push(format!("cocycle identity fails for {:?}", report.identity_failures));
    }
    if !report.identity_is_trivial {
        parts.push("F_id is not the identity".into());
    }
    parts.join("; ")
}
