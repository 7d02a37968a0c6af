//! Dense matrices over F_p and exact Gaussian elimination.
//!
//! Matrices act on column vectors: a linear map `V -> W` is stored as a
//! `dim W x dim V` matrix and composition is ordinary matrix product.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix F_{} {}x{} [", self.field.modulus(), self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from rows, reducing every entry modulo p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so that
    /// `n x 0` and `0 x n` shapes are expressible.
    pub fn from_rows_with_cols(field: PrimeField, rows: &[Vec<u32>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::dims(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&x| x % field.modulus()));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Build from columns of length `rows`.
    pub fn from_cols(field: PrimeField, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x % field.modulus();
            }
        }
        m
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.modulus();
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.modulus();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Matrix product. Panics on shape mismatch; see [`Matrix::checked_mul`].
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let p = self.field.modulus() as u64;
        let n = other.cols;
        let mut acc = vec![0u64; n];
        let mut out = Matrix::zeros(self.field, self.rows, n);
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * n..(k + 1) * n];
                for (dst, &b) in acc.iter_mut().zip(orow) {
                    *dst += a * b as u64;
                }
                // keep the accumulator far from overflow
                if k % 4096 == 4095 {
                    acc.iter_mut().for_each(|a| *a %= p);
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * n + j] = (a % p) as u32;
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length vs matrix columns");
        let p = self.field.modulus() as u64;
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let s: u64 = row
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Add `c * other` into `self` in place.
    pub fn axpy(&mut self, c: u32, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    /// Kronecker product; index `(i, k)` of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(f, self.rows * r2, self.cols * c2);
        let oc = out.cols;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        out.data[(i * r2 + k) * oc + j * c2 + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(field: PrimeField, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            let pivot_row: Vec<u32> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let row = &mut self.data[i * cols + c..(i + 1) * cols];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_bijective(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| aug.get(i, n + j)))
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vec<u32>> {
    let f = r.field;
    let cols = r.cols;
    let mut is_pivot = vec![None; cols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    (0..cols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut x = vec![0; cols];
            x[free] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                x[c] = f.neg(r.get(i, free));
            }
            x
        })
        .collect()
}

/// All solutions of a linear system: `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<u32>,
    pub kernel: Vec<Vec<u32>>,
}

impl AffineSolution {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    /// `particular + sum coeffs[k] * kernel[k]`.
    pub fn point(&self, field: PrimeField, coeffs: &[u32]) -> Vec<u32> {
        let mut x = self.particular.clone();
        for (c, k) in coeffs.iter().zip(&self.kernel) {
            if *c == 0 {
                continue;
            }
            for (xi, &ki) in x.iter_mut().zip(k) {
                *xi = field.add(*xi, field.mul(*c, ki));
            }
        }
        x
    }
}

/// Solve `A x = b`. Returns `Ok(None)` when the system is inconsistent.
/// The particular solution has every free variable set to zero.
pub fn solve_linear(a: &Matrix, b: &[u32]) -> Result<Option<AffineSolution>> {
    if b.len() != a.rows {
        return Err(Error::dims(format!(
            "right-hand side has length {}, system has {} equations",
            b.len(),
            a.rows
        )));
    }
    let n = a.cols;
    let mut aug = Matrix::zeros(a.field, a.rows, n + 1);
    for (i, &bi) in b.iter().enumerate() {
        aug.data[i * (n + 1)..i * (n + 1) + n].copy_from_slice(a.row(i));
        aug.data[i * (n + 1) + n] = bi % a.field.modulus();
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![0; n];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = aug.get(i, n);
    }
    let coeff = Matrix::from_fn(a.field, a.rows, n, |i, j| aug.get(i, j));
    Ok(Some(AffineSolution {
        particular,
        kernel: kernel_from_rref(&coeff, &pivots),
    }))
}

/// Incrementally maintained row echelon basis of a span.
///
/// Rows are kept normalized (leading entry 1) and sorted by pivot, which is
/// enough to reduce new vectors in one pass; [`EchelonBuilder::into_rref`]
/// back-substitutes to the canonical reduced form.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: PrimeField,
    ncols: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl EchelonBuilder {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        EchelonBuilder {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduce `v` against the current rows; the residue is zero iff `v` is
    /// already in the span.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c == 0 {
                continue;
            }
            for (x, &y) in v[*piv..].iter_mut().zip(&row[*piv..]) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns whether the span grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ncols);
        if self.is_full() {
            return false;
        }
        let f = self.field;
        let mut w: Vec<u32> = v.iter().map(|&x| x % f.modulus()).collect();
        self.reduce(&mut w);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[piv]);
        for x in &mut w[piv..] {
            *x = f.mul(*x, inv);
        }
        let at = self.rows.partition_point(|(p, _)| *p < piv);
        self.rows.insert(at, (piv, w));
        true
    }

    /// Canonical RREF rows and pivots.
    pub fn into_rref(mut self) -> (Vec<Vec<u32>>, Vec<usize>) {
        let f = self.field;
        for i in (0..self.rows.len()).rev() {
            let (piv, row) = self.rows[i].clone();
            for j in 0..i {
                let c = self.rows[j].1[piv];
                if c == 0 {
                    continue;
                }
                let target = &mut self.rows[j].1;
                for (x, &y) in target[piv..].iter_mut().zip(&row[piv..]) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let pivots = self.rows.iter().map(|(p, _)| *p).collect();
        (self.rows.into_iter().map(|(_, r)| r).collect(), pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Every vector of F_p^n, in lexicographic order.
    fn all_vectors(field: PrimeField, n: usize) -> Vec<Vec<u32>> {
        let p = field.modulus();
        let total = (p as usize).pow(n as u32);
        (0..total)
            .map(|mut k| {
                let mut v = vec![0; n];
                for x in v.iter_mut().rev() {
                    *x = (k % p as usize) as u32;
                    k /= p as usize;
                }
                v
            })
            .collect()
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::identity(f(2), 2);
        let s = solve_linear(&a, &[1, 0]).unwrap().unwrap();
        assert_eq!(s.particular, vec![1, 0]);
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn solve_zero_map() {
        let a = Matrix::zeros(f(2), 2, 2);
        let s = solve_linear(&a, &[0, 0]).unwrap().unwrap();
        assert_eq!(s.particular, vec![0, 0]);
        assert_eq!(s.dim(), 2);
        assert!(solve_linear(&a, &[1, 0]).unwrap().is_none());
    }

    #[test]
    fn solve_matches_enumeration() {
        // Oracle: enumerate all of F_2^2.
        let field = f(2);
        let a = Matrix::from_rows(field, &[vec![1, 1], vec![0, 0]]).unwrap();
        let sols: Vec<_> = all_vectors(field, 2)
            .into_iter()
            .filter(|x| a.apply(x) == vec![1, 0])
            .collect();
        assert_eq!(sols, vec![vec![0, 1], vec![1, 0]]);

        let s = solve_linear(&a, &[1, 0]).unwrap().unwrap();
        assert_eq!(s.particular, vec![1, 0]);
        assert_eq!(s.kernel, vec![vec![1, 1]]);
        let mut got: Vec<_> = field.elements().map(|c| s.point(field, &[c])).collect();
        got.sort();
        assert_eq!(got, sols);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Matrix::identity(f(3), 2);
        assert!(matches!(solve_linear(&a, &[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_over_f3() {
        let field = f(3);
        let a = Matrix::from_rows(field, &[vec![1, 2], vec![0, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(field, 2));
        let singular = Matrix::from_rows(field, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn kron_layout() {
        let field = f(5);
        let a = Matrix::from_rows(field, &[vec![1, 2]]).unwrap();
        let b = Matrix::from_rows(field, &[vec![3], vec![4]]).unwrap();
        let k = a.kron(&b);
        assert_eq!(k.to_rows(), vec![vec![3, 1], vec![4, 3]]);
    }

    #[test]
    fn echelon_builder_is_canonical() {
        let field = f(3);
        let mut b1 = EchelonBuilder::new(field, 3);
        b1.insert(&[1, 1, 0]);
        b1.insert(&[0, 1, 1]);
        let mut b2 = EchelonBuilder::new(field, 3);
        b2.insert(&[1, 2, 1]);
        b2.insert(&[2, 2, 0]);
        b2.insert(&[1, 0, 2]);
        assert_eq!(b1.into_rref(), b2.into_rref());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(p: u32, r: usize, c: usize) -> impl Strategy<Value = Matrix> {
            proptest::collection::vec(0..p, r * c)
                .prop_map(move |d| Matrix::from_fn(f(p), r, c, |i, j| d[i * c + j]))
        }

        proptest! {
            #[test]
            fn kernel_vectors_are_killed(m in matrix(3, 3, 4)) {
                let ker = m.kernel();
                prop_assert_eq!(ker.len() + m.rank(), 4);
                for v in ker {
                    prop_assert!(m.apply(&v).iter().all(|&x| x == 0));
                }
            }

            #[test]
            fn solutions_solve(m in matrix(5, 3, 3), x in proptest::collection::vec(0u32..5, 3)) {
                let b = m.apply(&x);
                let s = solve_linear(&m, &b).unwrap().unwrap();
                prop_assert_eq!(m.apply(&s.particular), b);
            }
        }
    }
}
