//! Dense exact linear algebra over any [`Field`] context.

use crate::dfield::{DifferentialField, Field};
use crate::error::{Error, Result};

/// Dense row-major matrix. Arithmetic needs the field context, so the
/// operations take it explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros<K: Field<Elem = T>>(k: &K, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![k.zero(); rows * cols],
        }
    }

    pub fn identity<K: Field<Elem = T>>(k: &K, n: usize) -> Self {
        let mut m = Self::zeros(k, n, n);
        for i in 0..n {
            m.data[i * n + i] = k.one();
        }
        m
    }

    pub fn diagonal<K: Field<Elem = T>>(k: &K, diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(k, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Clone>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn add<K: Field<Elem = T>>(&self, k: &K, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub<K: Field<Elem = T>>(&self, k: &K, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| k.sub(a, b)).collect(),
        }
    }

    pub fn scale<K: Field<Elem = T>>(&self, k: &K, s: &T) -> Self {
        self.map(|a| k.mul(a, s))
    }

    pub fn mul<K: Field<Elem = T>>(&self, k: &K, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if k.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = k.add(&out.data[idx], &k.mul(a, b));
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply<K: Field<Elem = T>>(&self, k: &K, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![k.zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = k.add(o, &k.mul(x, self.get(i, j)));
            }
        }
        out
    }

    pub fn is_zero<K: Field<Elem = T>>(&self, k: &K) -> bool {
        self.data.iter().all(|a| k.is_zero(a))
    }

    pub fn render<K: Field<Elem = T>>(&self, k: &K) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|a| k.render(a)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect()
    }
}

/// Reduced row-echelon form and pivot columns. Pivots are taken leftmost
/// column first, topmost nonzero row winning.
pub fn rref<K: Field>(k: &K, m: &Matrix<K::Elem>) -> (Matrix<K::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let pivots = rref_in_place(k, &mut a, m.cols);
    (a, pivots)
}

/// Row-reduces using pivots only among the first `pivot_cols` columns.
fn rref_in_place<K: Field>(k: &K, a: &mut Matrix<K::Elem>, pivot_cols: usize) -> Vec<usize> {
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = k.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let idx = r * cols + j;
            if !k.is_zero(&a.data[idx]) {
                a.data[idx] = k.mul(&a.data[idx], &inv);
            }
        }
        let pivot_row: Vec<K::Elem> = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if k.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                if k.is_zero(&pivot_row[j]) {
                    continue;
                }
                let idx = i * cols + j;
                a.data[idx] = k.sub(&a.data[idx], &k.mul(&factor, &pivot_row[j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: Field>(k: &K, m: &Matrix<K::Elem>) -> usize {
    rref(k, m).1.len()
}

/// Solution set of a linear system: one particular solution (free variables
/// zeroed) plus a nullspace basis ordered by free column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution<T> {
    pub point: Vec<T>,
    pub basis: Vec<Vec<T>>,
}

/// Solves `A x = b`. Returns `None` when the system is inconsistent.
pub fn solve_affine<K: Field>(
    k: &K,
    a: &Matrix<K::Elem>,
    b: &[K::Elem],
) -> Result<Option<LinearSolution<K::Elem>>> {
    if b.len() != a.rows {
        return Err(Error::Dimension(format!(
            "system has {} equations but right-hand side has {} entries",
            a.rows,
            b.len()
        )));
    }
    let u = a.cols;
    // drop trivially satisfied equations before elimination
    let mut aug = Vec::new();
    let mut count = 0;
    for i in 0..a.rows {
        let row = a.row(i);
        let all_zero = row.iter().all(|x| k.is_zero(x));
        if all_zero {
            if !k.is_zero(&b[i]) {
                return Ok(None);
            }
            continue;
        }
        aug.extend_from_slice(row);
        aug.push(b[i].clone());
        count += 1;
    }
    let mut m = Matrix {
        rows: count,
        cols: u + 1,
        data: aug,
    };
    let pivots = rref_in_place(k, &mut m, u);
    let r = pivots.len();
    if (r..count).any(|i| !k.is_zero(m.get(i, u))) {
        return Ok(None);
    }
    let mut point = vec![k.zero(); u];
    for (row, &c) in pivots.iter().enumerate() {
        point[c] = m.get(row, u).clone();
    }
    let mut basis = Vec::new();
    let mut pi = 0;
    for f in 0..u {
        if pi < r && pivots[pi] == f {
            pi += 1;
            continue;
        }
        let mut v = vec![k.zero(); u];
        v[f] = k.one();
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = k.neg(m.get(row, f));
        }
        basis.push(v);
    }
    Ok(Some(LinearSolution { point, basis }))
}

pub fn matrix_inverse<K: Field>(k: &K, m: &Matrix<K::Elem>) -> Result<Matrix<K::Elem>> {
    if !m.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(k, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, k.one());
    }
    let pivots = rref_in_place(k, &mut aug, n);
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    let mut inv = Matrix::zeros(k, n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Ok(inv)
}

/// Entrywise derivative `M'`.
pub fn matrix_derive<K: DifferentialField>(k: &K, m: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    m.map(|a| k.derive(a))
}

/// The coset `point + span(basis)` of `n×n` matrices, or the empty set.
///
/// Values built through [`AffineMatrixSpace::new`] are canonical: the
/// flattened basis is in reduced row-echelon form and the point has zero
/// coordinates at every pivot, so equal sets have equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMatrixSpace<T> {
    n: usize,
    point: Option<Matrix<T>>,
    basis: Vec<Matrix<T>>,
}

impl<T: Clone> AffineMatrixSpace<T> {
    /// Canonicalizes `point + span(spanning)`. The spanning set may be
    /// linearly dependent.
    pub fn new<K: Field<Elem = T>>(
        k: &K,
        n: usize,
        point: Option<Matrix<T>>,
        spanning: Vec<Matrix<T>>,
    ) -> Result<Self> {
        let check = |m: &Matrix<T>| {
            if m.rows != n || m.cols != n {
                Err(Error::Dimension(format!("expected {n}x{n} matrices")))
            } else {
                Ok(())
            }
        };
        if let Some(p) = &point {
            check(p)?;
        }
        for m in &spanning {
            check(m)?;
        }
        let Some(point) = point else {
            return Ok(Self::empty(n));
        };
        let nn = n * n;
        let flat = Matrix {
            rows: spanning.len(),
            cols: nn,
            data: spanning.into_iter().flat_map(Matrix::into_entries).collect(),
        };
        let (reduced, pivots) = rref(k, &flat);
        let basis: Vec<Vec<T>> = (0..pivots.len()).map(|i| reduced.row(i).to_vec()).collect();
        let mut p = point.data;
        reduce_against(k, &mut p, &basis, &pivots);
        Ok(AffineMatrixSpace {
            n,
            point: Some(Matrix { rows: n, cols: n, data: p }),
            basis: basis
                .into_iter()
                .map(|data| Matrix { rows: n, cols: n, data })
                .collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        AffineMatrixSpace {
            n,
            point: None,
            basis: Vec::new(),
        }
    }

    /// The linear space `span(spanning)` itself.
    pub fn linear<K: Field<Elem = T>>(k: &K, n: usize, spanning: Vec<Matrix<T>>) -> Result<Self> {
        Self::new(k, n, Some(Matrix::zeros(k, n, n)), spanning)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn point(&self) -> Option<&Matrix<T>> {
        self.point.as_ref()
    }

    pub fn basis(&self) -> &[Matrix<T>] {
        &self.basis
    }

    pub fn is_empty(&self) -> bool {
        self.point.is_none()
    }

    /// Dimension of the direction space; `None` for the empty set.
    pub fn dimension(&self) -> Option<usize> {
        self.point.as_ref().map(|_| self.basis.len())
    }

    /// The direction space `span(basis)` through the origin.
    pub fn homogeneous<K: Field<Elem = T>>(&self, k: &K) -> Self {
        AffineMatrixSpace {
            n: self.n,
            point: Some(Matrix::zeros(k, self.n, self.n)),
            basis: self.basis.clone(),
        }
    }

    pub fn contains<K: Field<Elem = T>>(&self, k: &K, m: &Matrix<T>) -> bool {
        let Some(point) = &self.point else {
            return false;
        };
        if m.rows != self.n || m.cols != self.n {
            return false;
        }
        let mut diff = m.sub(k, point).data;
        let pivots: Vec<usize> = self.basis.iter().map(|b| leading_index(k, &b.data)).collect();
        let rows: Vec<Vec<T>> = self.basis.iter().map(|b| b.data.clone()).collect();
        reduce_against(k, &mut diff, &rows, &pivots);
        diff.iter().all(|x| k.is_zero(x))
    }
}

fn leading_index<K: Field>(k: &K, v: &[K::Elem]) -> usize {
    v.iter().position(|x| !k.is_zero(x)).expect("basis vectors are nonzero")
}

/// Zeroes the pivot coordinates of `v` using RREF rows with the given pivots.
fn reduce_against<K: Field>(k: &K, v: &mut [K::Elem], rows: &[Vec<K::Elem>], pivots: &[usize]) {
    for (row, &p) in rows.iter().zip(pivots) {
        let factor = v[p].clone();
        if k.is_zero(&factor) {
            continue;
        }
        for (x, r) in v.iter_mut().zip(row) {
            if !k.is_zero(r) {
                *x = k.sub(x, &k.mul(&factor, r));
            }
        }
    }
}

/// Set equality of two cosets.
pub fn affine_equal<K: Field>(
    k: &K,
    s1: &AffineMatrixSpace<K::Elem>,
    s2: &AffineMatrixSpace<K::Elem>,
) -> bool {
    if s1.n != s2.n {
        return false;
    }
    match (&s1.point, &s2.point) {
        (None, None) => true,
        (Some(p1), Some(_)) => s1.basis == s2.basis && s2.contains(k, p1),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfield::{parse_element, ExtensionField, RatFunc, RationalFunctions, Rationals};

    fn fm(rows: &[&[&str]]) -> Matrix<RatFunc> {
        let f = RationalFunctions;
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_element(&f, s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = RationalFunctions;
        let id = Matrix::identity(&f, 3);
        assert_eq!(rref(&f, &id), (id.clone(), vec![0, 1, 2]));
        let z = Matrix::zeros(&f, 2, 3);
        assert_eq!(rref(&f, &z), (z.clone(), vec![]));
        let m = fm(&[&["t", "t^2"], &["1", "t"]]);
        assert_eq!(rref(&f, &m), (fm(&[&["1", "t"], &["0", "0"]]), vec![0]));
    }

    #[test]
    fn solve_examples() {
        let f = RationalFunctions;
        let b = vec![RatFunc::t(), RatFunc::from_int(3)];
        let s = solve_affine(&f, &Matrix::identity(&f, 2), &b).unwrap().unwrap();
        assert_eq!(s.point, b);
        assert!(s.basis.is_empty());

        let s = solve_affine(&f, &Matrix::zeros(&f, 2, 2), &[RatFunc::zero(), RatFunc::zero()])
            .unwrap()
            .unwrap();
        assert_eq!(s.point, vec![RatFunc::zero(); 2]);
        assert_eq!(s.basis, vec![vec![RatFunc::one(), RatFunc::zero()], vec![RatFunc::zero(), RatFunc::one()]]);

        let s = solve_affine(&f, &fm(&[&["1", "1"]]), &[RatFunc::t()]).unwrap().unwrap();
        assert_eq!(s.point, vec![RatFunc::t(), RatFunc::zero()]);
        assert_eq!(s.basis, vec![vec![RatFunc::from_int(-1), RatFunc::one()]]);

        assert_eq!(solve_affine(&f, &fm(&[&["1", "1"], &["1", "1"]]), &[RatFunc::zero(), RatFunc::one()]).unwrap(), None);
        assert_eq!(solve_affine(&f, &Matrix::zeros(&f, 1, 2), &[RatFunc::one()]).unwrap(), None);
        assert!(solve_affine(&f, &fm(&[&["1", "1"]]), &[]).is_err());
    }

    #[test]
    fn inverse_examples() {
        let q = Rationals;
        assert_eq!(matrix_inverse(&q, &Matrix::identity(&q, 3)).unwrap(), Matrix::identity(&q, 3));
        let one = q.one();
        let singular = Matrix::from_rows(vec![vec![one.clone(), one.clone()], vec![one.clone(), one]]).unwrap();
        assert_eq!(matrix_inverse(&q, &singular), Err(Error::Singular));

        let e = ExtensionField::quadratic("s", RatFunc::t()).unwrap();
        let p = |s| parse_element(&e, s).unwrap();
        let m = Matrix::from_rows(vec![vec![p("1"), p("1")], vec![p("s"), p("-s")]]).unwrap();
        let expected = Matrix::from_rows(vec![vec![p("1/2"), p("1/(2*s)")], vec![p("1/2"), p("-1/(2*s)")]]).unwrap();
        assert_eq!(matrix_inverse(&e, &m).unwrap(), expected);
    }

    #[test]
    fn derive_examples() {
        let q = Rationals;
        let c = Matrix::from_rows(vec![vec![q.from_int(3), q.from_int(-1)]]).unwrap();
        assert!(matrix_derive(&q, &c).is_zero(&q));
        let f = RationalFunctions;
        assert_eq!(matrix_derive(&f, &fm(&[&["t", "1"], &["0", "t^2"]])), fm(&[&["1", "0"], &["0", "2*t"]]));
        let e = ExtensionField::quadratic("s", RatFunc::t()).unwrap();
        let p = |s| parse_element(&e, s).unwrap();
        let m = Matrix::from_rows(vec![vec![p("1"), p("1")], vec![p("s"), p("-s")]]).unwrap();
        let d = Matrix::from_rows(vec![vec![p("0"), p("0")], vec![p("1/(2*s)"), p("-1/(2*s)")]]).unwrap();
        assert_eq!(matrix_derive(&e, &m), d);
    }

    #[test]
    fn affine_equal_examples() {
        let q = Rationals;
        let id = Matrix::identity(&q, 2);
        let zero = Matrix::zeros(&q, 2, 2);
        let a = AffineMatrixSpace::new(&q, 2, Some(zero.clone()), vec![id.clone()]).unwrap();
        let b = AffineMatrixSpace::new(&q, 2, Some(id.clone()), vec![id.clone()]).unwrap();
        assert!(affine_equal(&q, &a, &a));
        assert!(affine_equal(&q, &a, &b));
        assert_eq!(a, b);
        let c = AffineMatrixSpace::new(&q, 2, Some(zero), vec![]).unwrap();
        let d = AffineMatrixSpace::new(&q, 2, Some(id.clone()), vec![]).unwrap();
        assert!(!affine_equal(&q, &c, &d));
        let empty = AffineMatrixSpace::empty(2);
        assert!(affine_equal(&q, &empty, &AffineMatrixSpace::empty(2)));
        assert!(!affine_equal(&q, &empty, &c));
        assert!(a.contains(&q, &id.scale(&q, &q.from_int(5))));
        assert!(!c.contains(&q, &id));
    }

    #[test]
    fn dependent_spanning_set_is_reduced() {
        let q = Rationals;
        let id = Matrix::identity(&q, 2);
        let s = AffineMatrixSpace::linear(&q, 2, vec![id.clone(), id.scale(&q, &q.from_int(2))]).unwrap();
        assert_eq!(s.dimension(), Some(1));
    }
}
