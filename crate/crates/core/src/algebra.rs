//! Unital associative algebras presented by structure constants.

use crate::dfield::{Field, Rational, Rationals};
use crate::error::{Error, Result};

/// `e_i e_j = Σ_k c[i][j][k] e_k` over some coefficient field, with an
/// explicit unit. Coordinates of an element are a plain `Vec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra<T> {
    n: usize,
    constants: Vec<T>,
    unit: Vec<T>,
}

/// Violated axioms, one entry per failing basis triple or unit position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    pub associativity: Vec<(usize, usize, usize)>,
    pub left_unit: Vec<usize>,
    pub right_unit: Vec<usize>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.associativity.is_empty() && self.left_unit.is_empty() && self.right_unit.is_empty()
    }
}

impl<T: Clone + PartialEq> StructureAlgebra<T> {
    /// `constants` is indexed as `(i * n + j) * n + k`. No axioms are
    /// checked here; see [`StructureAlgebra::validate`].
    pub fn new(n: usize, constants: Vec<T>, unit: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("algebra dimension must be positive".into()));
        }
        if constants.len() != n * n * n {
            return Err(Error::Dimension(format!(
                "expected {} structure constants, got {}",
                n * n * n,
                constants.len()
            )));
        }
        if unit.len() != n {
            return Err(Error::Dimension(format!("unit has {} coordinates, expected {n}", unit.len())));
        }
        Ok(StructureAlgebra { n, constants, unit })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &T {
        &self.constants[(i * self.n + j) * self.n + k]
    }

    /// Coordinates of `e_i e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[T] {
        let start = (i * self.n + j) * self.n;
        &self.constants[start..start + self.n]
    }

    pub fn constants(&self) -> &[T] {
        &self.constants
    }

    pub fn unit(&self) -> &[T] {
        &self.unit
    }

    pub fn basis_element<K: Field<Elem = T>>(&self, k: &K, i: usize) -> Vec<T> {
        let mut v = vec![k.zero(); self.n];
        v[i] = k.one();
        v
    }

    pub fn multiply<K: Field<Elem = T>>(&self, k: &K, u: &[T], v: &[T]) -> Result<Vec<T>> {
        if u.len() != self.n || v.len() != self.n {
            return Err(Error::Dimension(format!(
                "operands of length {} and {} in a dimension-{} algebra",
                u.len(),
                v.len(),
                self.n
            )));
        }
        let mut out = vec![k.zero(); self.n];
        for (i, ui) in u.iter().enumerate() {
            if k.is_zero(ui) {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if k.is_zero(vj) {
                    continue;
                }
                let w = k.mul(ui, vj);
                for (l, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, l);
                    if !k.is_zero(c) {
                        *o = k.add(o, &k.mul(&w, c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Checks associativity on every basis triple and the two unit laws.
    pub fn validate<K: Field<Elem = T>>(&self, k: &K) -> AlgebraReport {
        let n = self.n;
        let mut report = AlgebraReport::default();
        let basis: Vec<Vec<T>> = (0..n).map(|i| self.basis_element(k, i)).collect();
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_of_basis(i, j).to_vec();
                for (l, el) in basis.iter().enumerate() {
                    let left = self.multiply(k, &ij, el).expect("sizes match");
                    let jl = self.product_of_basis(j, l);
                    let right = self.multiply(k, &basis[i], jl).expect("sizes match");
                    if left != right {
                        report.associativity.push((i, j, l));
                    }
                }
            }
        }
        for (i, ei) in basis.iter().enumerate() {
            if self.multiply(k, &self.unit, ei).expect("sizes match") != *ei {
                report.left_unit.push(i);
            }
            if self.multiply(k, ei, &self.unit).expect("sizes match") != *ei {
                report.right_unit.push(i);
            }
        }
        report
    }

    /// Same constants with every scalar mapped into another field.
    pub fn map_scalars<U: Clone>(&self, f: impl Fn(&T) -> U) -> StructureAlgebra<U> {
        StructureAlgebra {
            n: self.n,
            constants: self.constants.iter().map(&f).collect(),
            unit: self.unit.iter().map(&f).collect(),
        }
    }
}

impl StructureAlgebra<Rational> {
    /// Scalar extension `A ⊗_Q K`.
    pub fn scalar_extend<K: Field>(&self, k: &K) -> StructureAlgebra<K::Elem> {
        self.map_scalars(|q| k.from_rational(q))
    }
}

/// `Q^n` with orthogonal idempotent basis.
pub fn split_etale(n: usize) -> StructureAlgebra<Rational> {
    let q = Rationals;
    let mut c = vec![q.zero(); n * n * n];
    for i in 0..n {
        c[(i * n + i) * n + i] = q.one();
    }
    StructureAlgebra::new(n, c, vec![q.one(); n]).expect("well-formed")
}

/// `M_k(Q)` on the matrix units `E_ab`, indexed `a * k + b`.
pub fn matrix_algebra(k: usize) -> StructureAlgebra<Rational> {
    let q = Rationals;
    let n = k * k;
    let mut c = vec![q.zero(); n * n * n];
    // E_ab E_cd = δ_bc E_ad
    for a in 0..k {
        for b in 0..k {
            for d in 0..k {
                let i = a * k + b;
                let j = b * k + d;
                c[(i * n + j) * n + a * k + d] = q.one();
            }
        }
    }
    let mut unit = vec![q.zero(); n];
    for a in 0..k {
        unit[a * k + a] = q.one();
    }
    StructureAlgebra::new(n, c, unit).expect("well-formed")
}

/// `Q[x]/(x^2)` on the basis `1, x`.
pub fn dual_numbers() -> StructureAlgebra<Rational> {
    let q = Rationals;
    let mut c = vec![q.zero(); 8];
    let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
    c[idx(0, 0, 0)] = q.one();
    c[idx(0, 1, 1)] = q.one();
    c[idx(1, 0, 1)] = q.one();
    StructureAlgebra::new(2, c, vec![q.one(), q.zero()]).expect("well-formed")
}

/// Quaternion algebra `(a, b)_K` on the basis `1, i, j, ij` with `i^2 = a`,
/// `j^2 = b`, `ij = -ji`.
pub fn quaternion<K: Field>(k: &K, a: &K::Elem, b: &K::Elem) -> StructureAlgebra<K::Elem> {
    let n = 4;
    let mut c = vec![k.zero(); 64];
    let mut set = |i: usize, j: usize, l: usize, v: K::Elem| c[(i * n + j) * n + l] = v;
    let one = k.one();
    let ab = k.mul(a, b);
    for x in 0..4 {
        set(0, x, x, one.clone());
        set(x, 0, x, one.clone());
    }
    set(1, 1, 0, a.clone());
    set(2, 2, 0, b.clone());
    set(3, 3, 0, k.neg(&ab));
    set(1, 2, 3, one.clone());
    set(2, 1, 3, k.neg(&one));
    // i(ij) = a j, (ij)i = -a j
    set(1, 3, 2, a.clone());
    set(3, 1, 2, k.neg(a));
    // j(ij) = -b i, (ij)j = b i
    set(2, 3, 1, k.neg(b));
    set(3, 2, 1, b.clone());
    let mut unit = vec![k.zero(); 4];
    unit[0] = one;
    StructureAlgebra::new(4, c, unit).expect("well-formed")
}
